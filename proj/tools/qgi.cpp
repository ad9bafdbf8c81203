// qgi: command-line front end for the diagram calculus library.

#include "qgi/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Emit {
    std::string format = "json";
};

int finish(const qgi::cli::CommandOutput& out, const Emit& emit,
           std::chrono::steady_clock::time_point start) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (emit.format == "csv") {
        if (!out.csv) {
            std::cerr << "error: --format csv is only available for tabular commands (pairings, fullness)\n";
            return 2;
        }
        std::cout << *out.csv;
    } else {
        std::cout << qgi::cli::run_report(out, ms).dump(2) << '\n';
    }
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diagrammatic intertwiner calculus for free unitary quantum groups"};
    app.set_version_flag("--version", std::string(qgi::version));
    app.require_subcommand(1);

    Emit emit;
    app.add_option("--format", emit.format, "Output format (csv for tabular subcommands)")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    std::string word_text;
    bool noncrossing = false;
    auto* pairings = app.add_subcommand("pairings", "Enumerate pairings of a word");
    pairings->add_option("--word", word_text, "Word over u (V) and U (V*)")->required();
    pairings->add_flag("--noncrossing", noncrossing, "Only non-crossing pairings");
    pairings->add_option("--format", emit.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    int n = 0;
    std::string quotient_text;
    std::optional<std::size_t> max_len;
    bool explore = false;
    auto* fullness = app.add_subcommand("fullness", "Check joint fullness for the block quotient");
    fullness->add_option("--n", n, "Dimension of V")->required()->check(CLI::PositiveNumber);
    fullness->add_option("--quotient", quotient_text, "Block dimensions dW,dU")->required();
    auto* fw = fullness->add_option("--word", word_text, "A single balanced word");
    auto* fm = fullness->add_option("--max-len", max_len, "Sweep every balanced word up to this length");
    fw->excludes(fm);
    fullness->add_flag("--explore", explore, "Report verdicts without failing the exit code");
    fullness->add_option("--format", emit.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::string left_text;
    std::string right_text;
    auto* fusion = app.add_subcommand("fusion", "Decompose a_left a_right into irreducibles");
    fusion->add_option("--left", left_text, "Left word")->required();
    fusion->add_option("--right", right_text, "Right word")->required();

    auto* dim = app.add_subcommand("dim", "Dimension of the irreducible a_word");
    dim->add_option("--word", word_text, "Word")->required();
    dim->add_option("--n", n, "Dimension of V (>= 2)")->required();

    auto* rank = app.add_subcommand("rank", "Exact Gram ranks of a word's pairings");
    rank->add_option("--word", word_text, "Word")->required();
    rank->add_option("--n", n, "Dimension of V")->required()->check(CLI::PositiveNumber);

    qgi::cli::SeparateOptions sep;
    std::string strategy_text = "freeproduct";
    auto* separate = app.add_subcommand("separate", "Search for a representation not killing a polynomial");
    separate->add_option("--poly", sep.poly, "Polynomial, e.g. \"u11 u12 - u12 u11\"")->required();
    separate->add_option("--n", sep.n, "Size of the generator matrix")->required()->check(CLI::PositiveNumber);
    separate->add_option("--strategy", strategy_text, "point, freeproduct, block, liftb or orthogonal")
        ->capture_default_str();
    separate->add_option("--dim", sep.strategy.d, "Hilbert space dimension d")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    separate->add_option("--trials", sep.trials, "Number of random draws")->capture_default_str();
    separate->add_option("--seed", sep.seed, "Base seed; trial t uses seed + t")->capture_default_str();
    separate->add_option("--tol", sep.tol, "Norm threshold")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    const auto start = std::chrono::steady_clock::now();
    try {
        if (*pairings) {
            return finish(qgi::cli::cmd_pairings(qgi::parse_word(word_text), noncrossing), emit, start);
        }
        if (*fullness) {
            const auto q = qgi::cli::parse_quotient(quotient_text);
            std::vector<qgi::Word> words;
            if (max_len) {
                words = qgi::balanced_words_up_to(*max_len);
            } else if (!word_text.empty() || fw->count() > 0) {
                words.push_back(qgi::parse_word(word_text));
            } else {
                std::cerr << "error: fullness needs --word or --max-len\n";
                return 2;
            }
            auto out = qgi::cli::cmd_fullness(n, q, words, explore, qgi::worker_count_from_env());
            if (max_len) out.parameters["max_len"] = *max_len;
            else out.parameters["word"] = words.front().str();
            return finish(out, emit, start);
        }
        if (*fusion) {
            return finish(qgi::cli::cmd_fusion(qgi::parse_word(left_text), qgi::parse_word(right_text)),
                          emit, start);
        }
        if (*dim) return finish(qgi::cli::cmd_dim(qgi::parse_word(word_text), n), emit, start);
        if (*rank) return finish(qgi::cli::cmd_rank(qgi::parse_word(word_text), n), emit, start);
        if (*separate) {
            sep.strategy.kind = qgi::parse_strategy_kind(strategy_text);
            return finish(qgi::cli::cmd_separate(sep), emit, start);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

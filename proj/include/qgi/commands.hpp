#pragma once

// The CLI subcommands as library functions. Each returns the command's
// parameters and deterministic result payload; tools/qgi.cpp wraps them into
// a run report with timing and version.

#include "qgi/coinvariants.hpp"
#include "qgi/fusion.hpp"
#include "qgi/parallel.hpp"
#include "qgi/reps.hpp"
#include "qgi/serialize.hpp"
#include "qgi/version.hpp"

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qgi::cli {

struct CommandOutput {
    std::string command;
    Json parameters = Json::object();
    Json result = Json::object();
    int exit_code = 0;
    std::optional<std::string> csv; // set by tabular commands
};

inline Json run_report(const CommandOutput& out, double timing_ms) {
    return {{"command", out.command},
            {"parameters", out.parameters},
            {"result", out.result},
            {"exit_code", out.exit_code},
            {"timing_ms", timing_ms},
            {"version", version}};
}

/// "dW,dU" -> QuotientSpec; throws std::invalid_argument on malformed input.
inline QuotientSpec parse_quotient(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos)
        throw std::invalid_argument("quotient must be written dW,dU (got '" + std::string(text) + "')");
    try {
        std::size_t used_w = 0;
        std::size_t used_u = 0;
        const std::string w(text.substr(0, comma));
        const std::string u(text.substr(comma + 1));
        const int dw = std::stoi(w, &used_w);
        const int du = std::stoi(u, &used_u);
        if (used_w != w.size() || used_u != u.size()) throw std::invalid_argument("trailing characters");
        return QuotientSpec(dw, du);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("quotient must be written dW,dU with positive integers (got '" +
                                    std::string(text) + "')");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("quotient dimensions out of range");
    }
}

inline std::string arcs_compact(const Pairing& p) {
    std::string s;
    for (auto [a, b] : p.arcs()) {
        if (!s.empty()) s += ' ';
        s += std::to_string(a + 1) + "-" + std::to_string(b + 1);
    }
    return s;
}

inline CommandOutput cmd_pairings(const Word& word, bool noncrossing) {
    CommandOutput out;
    out.command = "pairings";
    out.parameters = {{"word", word.str()}, {"noncrossing", noncrossing}};
    const auto list = noncrossing ? enumerate_noncrossing(word) : enumerate_pairings(word);
    Json arr = Json::array();
    std::ostringstream csv;
    csv << "index,arcs\n";
    for (std::size_t i = 0; i < list.size(); ++i) {
        arr.push_back(to_json(list[i]));
        csv << i << ',' << arcs_compact(list[i]) << '\n';
    }
    out.result = {{"word", word.str()}, {"count", list.size()}, {"pairings", arr}};
    out.csv = csv.str();
    return out;
}

inline CommandOutput cmd_fullness(int n, const QuotientSpec& q, const std::vector<Word>& words,
                                  bool explore, unsigned workers) {
    const AmbientSpec amb(n);
    if (q.total() != n)
        throw std::invalid_argument("quotient " + std::to_string(q.dim_w) + "," +
                                    std::to_string(q.dim_u) + " does not sum to n = " +
                                    std::to_string(n));
    for (const auto& w : words)
        if (!w.balanced()) throw std::invalid_argument("word '" + w.str() + "' is not balanced");

    CommandOutput out;
    out.command = "fullness";
    out.parameters = {{"n", n}, {"quotient", {q.dim_w, q.dim_u}}, {"explore", explore}};
    const auto verdicts = parallel_map(words, workers, [&](const Word& w) { return joint_fullness(w, amb, q); });

    Json arr = Json::array();
    bool all_hold = true;
    std::ostringstream csv;
    csv << "word,holds,solution_dim\n";
    for (std::size_t i = 0; i < words.size(); ++i) {
        arr.push_back(fullness_json(words[i], amb, q, verdicts[i]));
        all_hold = all_hold && verdicts[i].holds;
        csv << words[i].str() << ',' << (verdicts[i].holds ? "true" : "false") << ','
            << verdicts[i].solution_space_dim << '\n';
    }
    out.result = {{"verdicts", arr}, {"word_count", words.size()}, {"all_hold", all_hold}};
    out.exit_code = (all_hold || explore) ? 0 : 1;
    out.csv = csv.str();
    return out;
}

inline CommandOutput cmd_fusion(const Word& left, const Word& right) {
    CommandOutput out;
    out.command = "fusion";
    out.parameters = {{"left", left.str()}, {"right", right.str()}};
    out.result = to_json(fuse(left, right));
    return out;
}

inline CommandOutput cmd_dim(const Word& word, int n) {
    CommandOutput out;
    out.command = "dim";
    out.parameters = {{"word", word.str()}, {"n", n}};
    out.result = {{"dimension", to_json(dimension(word, n))}};
    return out;
}

inline CommandOutput cmd_rank(const Word& word, int n) {
    const AmbientSpec amb(n);
    CommandOutput out;
    out.command = "rank";
    out.parameters = {{"word", word.str()}, {"n", n}};
    const auto all = enumerate_pairings(word);
    const auto nc = enumerate_noncrossing(word);
    const std::size_t all_rank = all.empty() ? 0 : rank(gram_matrix(all, word, amb));
    out.result = {{"pairing_count", all.size()},
                  {"all_rank", all_rank},
                  {"noncrossing_count", nc.size()},
                  {"nc_rank", nc_rank(word, amb)}};
    return out;
}

struct SeparateOptions {
    std::string poly;
    int n = 2;
    Strategy strategy;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    double tol = 1e-6;
};

inline CommandOutput cmd_separate(const SeparateOptions& opt) {
    CommandOutput out;
    out.command = "separate";
    const Family family = opt.strategy.family();
    out.parameters = {{"poly", opt.poly},
                      {"n", opt.n},
                      {"family", family_name(family)},
                      {"strategy", strategy_name(opt.strategy.kind)},
                      {"d", opt.strategy.d},
                      {"trials", opt.trials},
                      {"seed", opt.seed},
                      {"tolerance", opt.tol}};
    const NCPoly p = parse_poly(opt.poly, opt.n, family);
    out.result = witness_json(separate(p, opt.strategy, opt.trials, opt.seed, opt.tol));
    return out;
}

} // namespace qgi::cli

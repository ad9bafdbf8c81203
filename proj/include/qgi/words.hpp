#pragma once

// Colored words, pairings, block colorings and loop counting.
//
// Positions are 0-based throughout the C++ API. The JSON encodings in
// qgi/serialize.hpp use 1-based positions.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgi {

/// A tensorand: PLAIN is a copy of V, STAR a copy of V*.
enum class Letter : std::uint8_t { Plain, Star };

inline constexpr Letter opposite(Letter l) noexcept {
    return l == Letter::Plain ? Letter::Star : Letter::Plain;
}

inline constexpr char to_char(Letter l) noexcept {
    return l == Letter::Plain ? 'u' : 'U';
}

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}

    /// 1-based character position of the offending input.
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Ordered sequence of letters indexing the tensor product V^(e_1) ⊗ ... ⊗ V^(e_l).
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    static Word parse(std::string_view text) {
        std::vector<Letter> letters;
        letters.reserve(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            switch (text[i]) {
            case 'u': letters.push_back(Letter::Plain); break;
            case 'U': letters.push_back(Letter::Star); break;
            default:
                throw ParseError("invalid character '" + std::string(1, text[i]) +
                                     "' in word at position " + std::to_string(i + 1) +
                                     " (expected 'u' or 'U')",
                                 i + 1);
            }
        }
        return Word(std::move(letters));
    }

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<Letter>& letters() const noexcept { return letters_; }
    auto begin() const noexcept { return letters_.begin(); }
    auto end() const noexcept { return letters_.end(); }

    std::size_t plain_count() const noexcept {
        return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), Letter::Plain));
    }
    std::size_t star_count() const noexcept { return size() - plain_count(); }
    bool balanced() const noexcept { return plain_count() == star_count(); }

    std::string str() const {
        std::string s;
        s.reserve(size());
        for (Letter l : letters_) s.push_back(to_char(l));
        return s;
    }

    Word operator+(const Word& rhs) const {
        std::vector<Letter> out = letters_;
        out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
        return Word(std::move(out));
    }

    Word slice(std::size_t pos, std::size_t len) const {
        return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                        letters_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
    }

    bool operator==(const Word&) const = default;

    // Shortlex: by length, then lexicographic with u < U.
    std::strong_ordering operator<=>(const Word& rhs) const {
        if (auto c = size() <=> rhs.size(); c != 0) return c;
        return letters_ <=> rhs.letters_;
    }

private:
    std::vector<Letter> letters_;
};

inline Word parse_word(std::string_view text) { return Word::parse(text); }

/// All words of length exactly `len`, lexicographic with u < U.
inline std::vector<Word> all_words(std::size_t len) {
    std::vector<Word> out;
    const std::size_t count = std::size_t{1} << len;
    out.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<Letter> letters(len);
        for (std::size_t i = 0; i < len; ++i)
            letters[i] = (mask >> (len - 1 - i)) & 1U ? Letter::Star : Letter::Plain;
        out.emplace_back(std::move(letters));
    }
    return out;
}

/// Balanced words of every even length up to `max_len`, shortlex order.
inline std::vector<Word> balanced_words_up_to(std::size_t max_len) {
    std::vector<Word> out;
    for (std::size_t len = 0; len <= max_len; len += 2)
        for (auto& w : all_words(len))
            if (w.balanced()) out.push_back(std::move(w));
    return out;
}

/// A perfect matching of word positions. Stores the partner of each position.
class Pairing {
public:
    using Arc = std::pair<std::size_t, std::size_t>;

    Pairing() = default;

    /// Builds from 0-based arcs; throws if the arcs do not cover 0..size-1 exactly once.
    static Pairing from_arcs(std::size_t size, const std::vector<Arc>& arcs) {
        constexpr std::size_t unset = static_cast<std::size_t>(-1);
        std::vector<std::size_t> mate(size, unset);
        for (auto [a, b] : arcs) {
            if (a >= size || b >= size || a == b)
                throw std::invalid_argument("pairing arc out of range or degenerate");
            if (mate[a] != unset || mate[b] != unset)
                throw std::invalid_argument("pairing arcs overlap");
            mate[a] = b;
            mate[b] = a;
        }
        if (std::find(mate.begin(), mate.end(), unset) != mate.end())
            throw std::invalid_argument("pairing arcs do not cover every position");
        return Pairing(std::move(mate));
    }

    std::size_t size() const noexcept { return mate_.size(); }
    std::size_t arc_count() const noexcept { return mate_.size() / 2; }
    std::size_t mate(std::size_t pos) const { return mate_[pos]; }

    /// Arcs (i, j) with i < j, sorted by i.
    std::vector<Arc> arcs() const {
        std::vector<Arc> out;
        out.reserve(arc_count());
        for (std::size_t i = 0; i < mate_.size(); ++i)
            if (i < mate_[i]) out.emplace_back(i, mate_[i]);
        return out;
    }

    /// True when the pairing lives on `word`: sizes agree and every arc joins u to U.
    bool fits(const Word& word) const {
        if (word.size() != size()) return false;
        for (std::size_t i = 0; i < size(); ++i)
            if (word[i] == word[mate_[i]]) return false;
        return true;
    }

    bool operator==(const Pairing&) const = default;
    auto operator<=>(const Pairing& rhs) const { return arcs() <=> rhs.arcs(); }

private:
    explicit Pairing(std::vector<std::size_t> mate) : mate_(std::move(mate)) {}
    friend class PairingBuilder;

    std::vector<std::size_t> mate_;
};

class PairingBuilder {
public:
    explicit PairingBuilder(std::size_t size) : mate_(size, free_slot) {}
    bool is_free(std::size_t pos) const { return mate_[pos] == free_slot; }
    void link(std::size_t a, std::size_t b) { mate_[a] = b; mate_[b] = a; }
    void unlink(std::size_t a, std::size_t b) { mate_[a] = free_slot; mate_[b] = free_slot; }
    Pairing build() const { return Pairing(mate_); }

private:
    static constexpr std::size_t free_slot = static_cast<std::size_t>(-1);
    std::vector<std::size_t> mate_;
};

inline void require_fits(const Pairing& p, const Word& word) {
    if (!p.fits(word))
        throw std::invalid_argument("pairing does not match word '" + word.str() + "'");
}

namespace detail {

inline void enumerate_all(const Word& word, PairingBuilder& b, std::size_t from,
                          std::vector<Pairing>& out) {
    while (from < word.size() && !b.is_free(from)) ++from;
    if (from == word.size()) {
        out.push_back(b.build());
        return;
    }
    for (std::size_t j = from + 1; j < word.size(); ++j) {
        if (!b.is_free(j) || word[j] == word[from]) continue;
        b.link(from, j);
        enumerate_all(word, b, from + 1, out);
        b.unlink(from, j);
    }
}

// Non-crossing pairings of the window [lo, hi), as arc lists in lexicographic order.
inline std::vector<std::vector<Pairing::Arc>> noncrossing_window(const Word& word, std::size_t lo,
                                                                std::size_t hi) {
    if (lo == hi) return {{}};
    std::vector<std::vector<Pairing::Arc>> out;
    for (std::size_t j = lo + 1; j < hi; j += 2) {
        if (word[j] == word[lo]) continue;
        auto inner = noncrossing_window(word, lo + 1, j);
        if (inner.empty()) continue;
        auto outer = noncrossing_window(word, j + 1, hi);
        for (const auto& in : inner) {
            for (const auto& ou : outer) {
                std::vector<Pairing::Arc> arcs;
                arcs.reserve(1 + in.size() + ou.size());
                arcs.emplace_back(lo, j);
                arcs.insert(arcs.end(), in.begin(), in.end());
                arcs.insert(arcs.end(), ou.begin(), ou.end());
                out.push_back(std::move(arcs));
            }
        }
    }
    return out;
}

} // namespace detail

/// Every color-respecting perfect matching, in lexicographic order of arc lists.
/// Unbalanced words have none.
inline std::vector<Pairing> enumerate_pairings(const Word& word) {
    std::vector<Pairing> out;
    if (!word.balanced()) return out;
    PairingBuilder b(word.size());
    detail::enumerate_all(word, b, 0, out);
    return out;
}

/// True iff no two arcs (a,b), (c,d) satisfy a < c < b < d.
inline bool is_noncrossing(const Pairing& p) {
    for (auto [a, b] : p.arcs())
        for (std::size_t c = a + 1; c < b; ++c)
            if (p.mate(c) < a || p.mate(c) > b) return false;
    return true;
}

/// The non-crossing pairings, in the same order enumerate_pairings would list them.
inline std::vector<Pairing> enumerate_noncrossing(const Word& word) {
    std::vector<Pairing> out;
    if (!word.balanced()) return out;
    for (const auto& arcs : detail::noncrossing_window(word, 0, word.size()))
        out.push_back(Pairing::from_arcs(word.size(), arcs));
    return out;
}

/// Which orthogonal block a tensor slot is restricted to.
enum class Block : std::uint8_t { W, U };

class Coloring {
public:
    Coloring() = default;
    explicit Coloring(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}

    static Coloring parse(std::string_view text) {
        std::vector<Block> blocks;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == 'W') blocks.push_back(Block::W);
            else if (text[i] == 'U') blocks.push_back(Block::U);
            else
                throw ParseError("invalid coloring character at position " + std::to_string(i + 1),
                                 i + 1);
        }
        return Coloring(std::move(blocks));
    }

    std::size_t size() const noexcept { return blocks_.size(); }
    Block operator[](std::size_t i) const { return blocks_[i]; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }

    std::string str() const {
        std::string s;
        for (Block b : blocks_) s.push_back(b == Block::W ? 'W' : 'U');
        return s;
    }

    bool operator==(const Coloring&) const = default;

private:
    std::vector<Block> blocks_;
};

/// All 2^l block assignments, lexicographic with W < U.
inline std::vector<Coloring> enumerate_colorings(const Word& word) {
    const std::size_t len = word.size();
    const std::size_t count = std::size_t{1} << len;
    std::vector<Coloring> out;
    out.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<Block> blocks(len);
        for (std::size_t i = 0; i < len; ++i)
            blocks[i] = (mask >> (len - 1 - i)) & 1U ? Block::U : Block::W;
        out.emplace_back(std::move(blocks));
    }
    return out;
}

inline bool is_block_respecting(const Pairing& p, const Coloring& c) {
    if (p.size() != c.size()) throw std::invalid_argument("pairing and coloring lengths differ");
    for (std::size_t i = 0; i < p.size(); ++i)
        if (c[i] != c[p.mate(i)]) return false;
    return true;
}

struct Cycle {
    std::vector<std::size_t> positions; // traversal order, starting at the smallest position
    std::optional<Block> block;
};

struct LoopDecomposition {
    std::vector<Cycle> cycles;

    std::size_t count() const noexcept { return cycles.size(); }
    std::size_t count(Block b) const noexcept {
        return static_cast<std::size_t>(std::count_if(
            cycles.begin(), cycles.end(), [b](const Cycle& c) { return c.block == b; }));
    }
};

/// Cycles of the union of two matchings. Each cycle alternates a p-arc and a q-arc.
inline LoopDecomposition loop_decomposition(const Pairing& p, const Pairing& q,
                                            const std::optional<Coloring>& c = std::nullopt) {
    if (p.size() != q.size()) throw std::invalid_argument("pairings have different lengths");
    if (c && (!is_block_respecting(p, *c) || !is_block_respecting(q, *c)))
        throw std::invalid_argument("pairing is not block-respecting for coloring " + c->str());

    LoopDecomposition out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (seen[start]) continue;
        Cycle cycle;
        if (c) cycle.block = (*c)[start];
        std::size_t pos = start;
        do {
            seen[pos] = true;
            cycle.positions.push_back(pos);
            const std::size_t across = p.mate(pos);
            seen[across] = true;
            cycle.positions.push_back(across);
            pos = q.mate(across);
        } while (pos != start);
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

/// Cycle count only; the hot path of Gram assembly.
inline std::size_t count_loops(const Pairing& p, const Pairing& q) {
    std::vector<bool> seen(p.size(), false);
    std::size_t loops = 0;
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (seen[start]) continue;
        ++loops;
        std::size_t pos = start;
        do {
            seen[pos] = true;
            seen[p.mate(pos)] = true;
            pos = q.mate(p.mate(pos));
        } while (pos != start);
    }
    return loops;
}

} // namespace qgi

#pragma once

// The free fusion semiring: irreducibles a_x indexed by words x in u, u*, with
//   a_x a_y = sum over x = v g, y = g* w of a_{v w}.

#include "qgi/words.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qgi {

using IrreducibleWord = Word;

/// Anti-multiplicative involution: reverse and swap u <-> u*.
inline Word star_reverse(const Word& x) {
    std::vector<Letter> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = opposite(x[x.size() - 1 - i]);
    return Word(std::move(out));
}

/// Nonnegative integer combination of irreducibles; only positive multiplicities are stored.
class FusionVector {
public:
    using Terms = std::map<Word, mpz_class>;

    FusionVector() = default;
    static FusionVector unit() { return single(Word{}); }
    static FusionVector single(const Word& x, const mpz_class& mult = 1) {
        FusionVector v;
        v.add(x, mult);
        return v;
    }

    void add(const Word& x, const mpz_class& mult) {
        if (sgn(mult) < 0) throw std::invalid_argument("fusion multiplicities are nonnegative");
        if (sgn(mult) == 0) return;
        terms_[x] += mult;
    }

    void add(const FusionVector& other, const mpz_class& scale = 1) {
        for (const auto& [w, m] : other.terms_) add(w, m * scale);
    }

    mpz_class multiplicity(const Word& x) const {
        auto it = terms_.find(x);
        return it == terms_.end() ? mpz_class(0) : it->second;
    }

    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool operator==(const FusionVector&) const = default;

private:
    Terms terms_;
};

/// Decomposition of a_x a_y: one summand v w per suffix g of x with g* a prefix of y.
inline FusionVector fuse(const Word& x, const Word& y) {
    FusionVector out;
    const std::size_t max_overlap = std::min(x.size(), y.size());
    for (std::size_t t = 0; t <= max_overlap; ++t) {
        // g = x[|x|-t ..]; g* must equal y[0 .. t)
        bool matches = true;
        for (std::size_t i = 0; i < t && matches; ++i)
            matches = y[i] == opposite(x[x.size() - 1 - i]);
        if (!matches) break; // a longer g* extends a failed prefix
        out.add(x.slice(0, x.size() - t) + y.slice(t, y.size() - t), 1);
    }
    return out;
}

/// Bilinear extension of fuse.
inline FusionVector fuse(const FusionVector& a, const FusionVector& b) {
    FusionVector out;
    for (const auto& [x, mx] : a.terms())
        for (const auto& [y, my] : b.terms()) out.add(fuse(x, y), mx * my);
    return out;
}

/// Multiplicity of the trivial comodule in a_{e_1} a_{e_2} ... a_{e_l}, fused left to right.
inline mpz_class trivial_multiplicity(const Word& word) {
    FusionVector acc = FusionVector::unit();
    for (Letter l : word) acc = fuse(acc, FusionVector::single(Word({l})));
    return acc.multiplicity(Word{});
}

/// Quantum dimension of a_x for A_u(n), via d(x L) = n d(x) - [last(x) = opposite(L)] d(drop_last(x)).
inline mpz_class dimension(const Word& x, int n) {
    if (n < 2) throw std::invalid_argument("dimension requires n >= 2, got " + std::to_string(n));
    // prefix[k] = d(x[0..k))
    std::vector<mpz_class> prefix(x.size() + 1);
    prefix[0] = 1;
    for (std::size_t k = 1; k <= x.size(); ++k) {
        prefix[k] = n * prefix[k - 1];
        if (k >= 2 && x[k - 2] == opposite(x[k - 1])) prefix[k] -= prefix[k - 2];
    }
    return prefix[x.size()];
}

} // namespace qgi

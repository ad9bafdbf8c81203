#pragma once

// Pairings as invariant functionals on V^(e_1) ⊗ ... ⊗ V^(e_l), dim V = n.
//
// All span questions are answered in Gram coordinates: a coefficient vector a
// over a family of pairings stands for the functional sum_p a_p T_p, and two
// vectors denote the same functional iff they agree modulo ker G. The
// n^l-dimensional ambient realization is only used by the small-case oracles.

#include "qgi/exact.hpp"
#include "qgi/words.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgi {

struct AmbientSpec {
    int n = 1; // dim V

    explicit AmbientSpec(int dim) : n(dim) {
        if (dim < 1) throw std::invalid_argument("ambient dimension must be >= 1");
    }
};

/// Orthogonal split V = W ⊕ U with W = span(e_1..e_dW), U = span(e_{dW+1}..e_n).
struct QuotientSpec {
    int dim_w = 1;
    int dim_u = 1;

    QuotientSpec(int w, int u) : dim_w(w), dim_u(u) {
        if (w < 1 || u < 1) throw std::invalid_argument("quotient block dimensions must be >= 1");
    }

    int total() const noexcept { return dim_w + dim_u; }
};

inline constexpr std::uint64_t default_realization_cap = 10'000'000;

namespace detail {

inline Integer ipow(long base, std::size_t exp) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

inline std::uint64_t ambient_size(std::size_t len, int n, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < len; ++i) {
        if (total > cap / static_cast<std::uint64_t>(n))
            throw std::length_error("ambient tensor space n^" + std::to_string(len) +
                                    " exceeds the realization cap of " + std::to_string(cap) +
                                    " entries; use the Gram-matrix path instead");
        total *= static_cast<std::uint64_t>(n);
    }
    return total;
}

} // namespace detail

/// G_ij = n^(loops(p_i, p_j)): the inner products of the pairing functionals.
inline ExactMatrix gram_matrix(const std::vector<Pairing>& pairings, const Word& word,
                               const AmbientSpec& amb) {
    for (const auto& p : pairings) require_fits(p, word);
    const std::size_t m = pairings.size();
    ExactMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            Rational v(detail::ipow(amb.n, count_loops(pairings[i], pairings[j])));
            g(i, j) = v;
            g(j, i) = v;
        }
    return g;
}

/// Gram matrix on the summand selected by `c`: each W-loop contributes dim W, each U-loop dim U.
inline ExactMatrix gram_matrix_colored(const std::vector<Pairing>& pairings, const Word& word,
                                       const Coloring& c, const QuotientSpec& q) {
    if (c.size() != word.size()) throw std::invalid_argument("coloring length differs from word");
    for (const auto& p : pairings) {
        require_fits(p, word);
        if (!is_block_respecting(p, c))
            throw std::invalid_argument("pairing is not block-respecting for coloring " + c.str());
    }
    const std::size_t m = pairings.size();
    ExactMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const auto loops = loop_decomposition(pairings[i], pairings[j], c);
            Integer v = detail::ipow(q.dim_w, loops.count(Block::W)) *
                        detail::ipow(q.dim_u, loops.count(Block::U));
            g(i, j) = Rational(v);
            g(j, i) = g(i, j);
        }
    return g;
}

/// Coefficients of T_p on the basis multi-indices (i_1..i_l), i_1 most significant:
/// the product over arcs (a,b) of delta(i_a, i_b).
inline std::vector<std::int64_t> realize_functional(const Pairing& p, const Word& word,
                                                    const AmbientSpec& amb,
                                                    std::uint64_t cap = default_realization_cap) {
    require_fits(p, word);
    const std::size_t len = word.size();
    const std::uint64_t total = detail::ambient_size(len, amb.n, cap);
    std::vector<std::int64_t> out(total, 0);
    std::vector<int> digits(len, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        for (std::size_t pos = len; pos-- > 0;) {
            digits[pos] = static_cast<int>(rest % static_cast<std::uint64_t>(amb.n));
            rest /= static_cast<std::uint64_t>(amb.n);
        }
        bool on = true;
        for (std::size_t pos = 0; pos < len && on; ++pos)
            if (digits[pos] != digits[p.mate(pos)]) on = false;
        out[idx] = on ? 1 : 0;
    }
    return out;
}

/// Dimension of the U(n)-invariant subspace of V^(e), from the Lie algebra action alone.
///
/// E_ab acts as E_ab on plain slots and as -E_ba on star slots. The diagonal
/// generators act diagonally on basis tensors, so their joint kernel is spanned by
/// the weight-zero multi-indices; the remaining kernel is cut out by the
/// off-diagonal generators restricted there, whose images are assembled
/// exactly as sparse integer columns.
inline std::size_t invariant_dimension_oracle(const Word& word, const AmbientSpec& amb,
                                              std::uint64_t cap = default_realization_cap) {
    const std::size_t len = word.size();
    const int n = amb.n;
    const std::uint64_t total = detail::ambient_size(len, n, cap);

    auto decode = [&](std::uint64_t idx) {
        std::vector<int> d(len);
        for (std::size_t pos = len; pos-- > 0;) {
            d[pos] = static_cast<int>(idx % static_cast<std::uint64_t>(n));
            idx /= static_cast<std::uint64_t>(n);
        }
        return d;
    };
    auto encode = [&](const std::vector<int>& d) {
        std::uint64_t idx = 0;
        for (int v : d) idx = idx * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(v);
        return idx;
    };

    // weight of a basis tensor: (#a in plain slots) - (#a in star slots), per a
    std::vector<std::uint64_t> zero_weight;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const auto d = decode(idx);
        std::vector<int> weight(static_cast<std::size_t>(n), 0);
        for (std::size_t pos = 0; pos < len; ++pos)
            weight[static_cast<std::size_t>(d[pos])] += word[pos] == Letter::Plain ? 1 : -1;
        bool zero = true;
        for (int w : weight) zero = zero && w == 0;
        if (zero) zero_weight.push_back(idx);
    }
    if (zero_weight.empty()) return 0;
    if (n == 1) return zero_weight.size();

    // One row per (generator, target basis tensor) actually reached.
    using RowKey = std::pair<std::uint64_t, std::uint64_t>;
    std::map<RowKey, std::size_t> row_index;
    std::vector<std::vector<std::pair<RowKey, long>>> images(zero_weight.size());
    for (std::size_t col = 0; col < zero_weight.size(); ++col) {
        const auto d = decode(zero_weight[col]);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                const auto gen = static_cast<std::uint64_t>(a * n + b);
                for (std::size_t pos = 0; pos < len; ++pos) {
                    // plain slot: E_ab e_i = delta(b,i) e_a; star slot: -E_ba f_i = -delta(a,i) f_b
                    auto t = d;
                    long sign = 0;
                    if (word[pos] == Letter::Plain && d[pos] == b) { t[pos] = a; sign = 1; }
                    if (word[pos] == Letter::Star && d[pos] == a) { t[pos] = b; sign = -1; }
                    if (sign == 0) continue;
                    const RowKey key{gen, encode(t)};
                    row_index.emplace(key, 0);
                    images[col].emplace_back(key, sign);
                }
            }
    }
    std::size_t next = 0;
    for (auto& [key, idx] : row_index) idx = next++;

    ExactMatrix action(row_index.size(), zero_weight.size());
    for (std::size_t col = 0; col < images.size(); ++col)
        for (const auto& [key, v] : images[col]) action(row_index.at(key), col) += v;
    return zero_weight.size() - rank(action);
}

/// Rank of the Gram matrix of the non-crossing pairings.
inline std::size_t nc_rank(const Word& word, const AmbientSpec& amb) {
    const auto nc = enumerate_noncrossing(word);
    if (nc.empty()) return 0;
    return rank(gram_matrix(nc, word, amb));
}

/// Restriction of T_p to the summand selected by c: p itself when block-respecting,
/// otherwise the zero functional (absent).
inline std::optional<Pairing> restriction(const Pairing& p, const Coloring& c) {
    if (is_block_respecting(p, c)) return p;
    return std::nullopt;
}

struct FullnessVerdict {
    bool holds = true;
    std::size_t solution_space_dim = 0;
    std::optional<ExactVector> witness; // coefficients over enumerate_pairings(word)
};

namespace detail {

struct FullnessSystem {
    std::vector<Pairing> all;
    std::vector<std::size_t> nc_index; // positions in `all` of the non-crossing pairings
    ExactMatrix gram;
    ExactMatrix constraints; // rows r with r · a = 0 for every D-coinvariant a
};

inline FullnessSystem build_fullness_system(const Word& word, const AmbientSpec& amb,
                                            const QuotientSpec& q) {
    if (q.total() != amb.n)
        throw std::invalid_argument("quotient blocks " + std::to_string(q.dim_w) + "+" +
                                    std::to_string(q.dim_u) + " do not sum to n = " +
                                    std::to_string(amb.n));
    FullnessSystem sys;
    sys.all = enumerate_pairings(word);
    for (std::size_t i = 0; i < sys.all.size(); ++i)
        if (is_noncrossing(sys.all[i])) sys.nc_index.push_back(i);
    sys.gram = gram_matrix(sys.all, word, amb);
    const std::size_t m = sys.all.size();
    sys.constraints = ExactMatrix(0, m);
    if (m == 0) return sys;

    for (const auto& c : enumerate_colorings(word)) {
        std::vector<std::size_t> members; // P_c as indices into `all`
        std::vector<std::size_t> nc_local;
        std::vector<Pairing> local;
        for (std::size_t i = 0; i < m; ++i) {
            if (!restriction(sys.all[i], c)) continue;
            if (is_noncrossing(sys.all[i])) nc_local.push_back(local.size());
            members.push_back(i);
            local.push_back(sys.all[i]);
        }
        if (members.empty()) continue;

        const ExactMatrix gc = gram_matrix_colored(local, word, c, q);
        // G_c a|P_c must lie in the column space of G_c[:, NC_c]; with K_c spanning
        // the cokernel of that block this reads K_c G_c a|P_c = 0.
        std::vector<ExactVector> coker;
        if (nc_local.empty()) {
            for (std::size_t i = 0; i < local.size(); ++i) {
                ExactVector e(local.size(), Rational(0));
                e[i] = 1;
                coker.push_back(std::move(e));
            }
        } else {
            coker = cokernel_basis(gc.select_columns(nc_local));
        }
        for (const auto& k : coker) {
            ExactVector row(m, Rational(0));
            for (std::size_t j = 0; j < local.size(); ++j) {
                Rational acc = 0;
                for (std::size_t i = 0; i < local.size(); ++i)
                    if (sgn(k[i]) != 0) acc += k[i] * gc(i, j);
                row[members[j]] = acc;
            }
            bool nonzero = false;
            for (const auto& v : row) nonzero = nonzero || sgn(v) != 0;
            if (nonzero) sys.constraints.append_row(row);
        }
    }
    return sys;
}

inline bool in_global_nc_span(const FullnessSystem& sys, const ExactVector& a) {
    const ExactVector target = sys.gram * a;
    return in_column_space(sys.gram.select_columns(sys.nc_index), target).has_value();
}

inline FullnessVerdict decide_fullness(const FullnessSystem& sys) {
    FullnessVerdict verdict;
    if (sys.all.empty()) return verdict;
    const auto solutions = sys.constraints.rows() == 0
                               ? nullspace_basis(ExactMatrix(1, sys.all.size()))
                               : nullspace_basis(sys.constraints);
    verdict.solution_space_dim = solutions.size();
    for (const auto& a : solutions) {
        if (!in_global_nc_span(sys, a)) {
            verdict.holds = false;
            verdict.witness = a;
            break;
        }
    }
    return verdict;
}

inline bool certifies(const FullnessSystem& sys, const ExactVector& witness) {
    if (witness.size() != sys.all.size()) return false;
    if (sys.constraints.rows() > 0)
        for (const auto& v : sys.constraints * witness)
            if (sgn(v) != 0) return false;
    return !in_global_nc_span(sys, witness);
}

} // namespace detail

/// Decides whether every functional sum_p a_p T_p (p over all pairings of `word`) whose
/// restriction to each W/U summand lies in the span of that summand's block-respecting
/// non-crossing pairings is itself in the span of the global non-crossing pairings.
inline FullnessVerdict joint_fullness(const Word& word, const AmbientSpec& amb,
                                      const QuotientSpec& q) {
    return detail::decide_fullness(detail::build_fullness_system(word, amb, q));
}

/// Re-checks a witness from scratch: it must satisfy every block constraint and its
/// functional must fall outside the global non-crossing span.
/// Re-checks a witness from scratch: it must satisfy every block constraint and its
/// functional must fall outside the global non-crossing span.
inline bool witness_certifies(const Word& word, const AmbientSpec& amb, const QuotientSpec& q,
                              const ExactVector& witness) {
    return detail::certifies(detail::build_fullness_system(word, amb, q), witness);
}

} // namespace qgi

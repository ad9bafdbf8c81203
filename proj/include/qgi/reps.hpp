#pragma once

// Finite-dimensional *-representations of A_u(n) and B_u(n) in double precision.
//
// A representation assigns a d×d matrix to each generator. Writing u for the
// nd×nd block matrix (u_ij) and ū for (u_ij^*), the defining relations are that
// u and ū are unitary; for B_u(n) each generator is also self-adjoint.

#include "qgi/poly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgi {

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Largest singular value; 0 for empty matrices.
inline double operator_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

inline double unitarity_defect(const CMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return operator_norm(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols()));
}

class MatrixRep {
public:
    /// `images` is row-major: images[i*n + j] is the image of the (i,j) generator.
    MatrixRep(Family family, int n, int d, std::vector<CMatrix> images)
        : family_(family), n_(n), d_(d), images_(std::move(images)) {
        if (n < 1 || d < 1) throw std::invalid_argument("representation needs n >= 1 and d >= 1");
        if (images_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
            throw std::invalid_argument("representation needs n*n generator images");
        for (const auto& m : images_)
            if (m.rows() != d || m.cols() != d)
                throw std::invalid_argument("generator image is not " + std::to_string(d) + "x" +
                                            std::to_string(d));
    }

    Family family() const noexcept { return family_; }
    int n() const noexcept { return n_; }
    int d() const noexcept { return d_; }

    /// Image of the generator at 0-based (i, j).
    const CMatrix& image(int i, int j) const {
        return images_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                       static_cast<std::size_t>(j)];
    }

    /// The nd×nd matrix u with (i,j) block image(i,j).
    CMatrix block_matrix() const {
        CMatrix u(n_ * d_, n_ * d_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) u.block(i * d_, j * d_, d_, d_) = image(i, j);
        return u;
    }

    /// ū: the (i,j) block is image(i,j)^*.
    CMatrix conjugate_block_matrix() const {
        CMatrix u(n_ * d_, n_ * d_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) u.block(i * d_, j * d_, d_, d_) = image(i, j).adjoint();
        return u;
    }

private:
    Family family_;
    int n_;
    int d_;
    std::vector<CMatrix> images_;
};

struct RelationReport {
    double unitary_left = 0;    // ‖u*u - 1‖
    double unitary_right = 0;   // ‖uu* - 1‖
    double conjugate_left = 0;  // ‖ū*ū - 1‖
    double conjugate_right = 0; // ‖ūū* - 1‖
    std::optional<double> selfadjoint; // max ‖v_ij - v_ij*‖, B-type only
    double tolerance = 0;
    bool passed = false;

    double max_residual() const {
        double r = std::max({unitary_left, unitary_right, conjugate_left, conjugate_right});
        return selfadjoint ? std::max(r, *selfadjoint) : r;
    }
};

inline RelationReport check_relations(const MatrixRep& rep, double tol) {
    RelationReport r;
    r.tolerance = tol;
    const CMatrix u = rep.block_matrix();
    const CMatrix ub = rep.conjugate_block_matrix();
    const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
    r.unitary_left = operator_norm(u.adjoint() * u - id);
    r.unitary_right = operator_norm(u * u.adjoint() - id);
    r.conjugate_left = operator_norm(ub.adjoint() * ub - id);
    r.conjugate_right = operator_norm(ub * ub.adjoint() - id);
    if (rep.family() == Family::B) {
        double worst = 0;
        for (int i = 0; i < rep.n(); ++i)
            for (int j = 0; j < rep.n(); ++j)
                worst = std::max(worst, operator_norm(rep.image(i, j) - rep.image(i, j).adjoint()));
        r.selfadjoint = worst;
    }
    r.passed = r.max_residual() <= tol;
    return r;
}

inline constexpr double scalar_unitarity_tol = 1e-12;
inline constexpr double construction_tol = 1e-10;

namespace detail {

inline void require_unitary(const CMatrix& m, double tol, const char* what) {
    if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + " is not square");
    const double defect = unitarity_defect(m);
    if (!(defect <= tol))
        throw std::invalid_argument(std::string(what) + " is not unitary (defect " +
                                    std::to_string(defect) + ")");
}

inline void require_relations(const MatrixRep& rep, double tol, const char* what) {
    const auto report = check_relations(rep, tol);
    if (!report.passed)
        throw std::runtime_error(std::string(what) + " violates the defining relations (residual " +
                                 std::to_string(report.max_residual()) + ")");
}

} // namespace detail

/// One-dimensional representation through the abelianization: u_ij -> w_ij.
inline MatrixRep point_rep(const CMatrix& w) {
    detail::require_unitary(w, scalar_unitarity_tol, "point");
    const int n = static_cast<int>(w.rows());
    std::vector<CMatrix> images;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) images.push_back(CMatrix::Constant(1, 1, w(i, j)));
    return MatrixRep(Family::A, n, 1, std::move(images));
}

/// One-dimensional representation of B_u(n): v_ij -> o_ij.
inline MatrixRep orthogonal_point_rep(const RMatrix& o) {
    if (o.rows() != o.cols()) throw std::invalid_argument("orthogonal point is not square");
    const double defect = operator_norm(
        (o.transpose() * o - RMatrix::Identity(o.rows(), o.cols())).cast<Complex>());
    if (!(defect <= scalar_unitarity_tol))
        throw std::invalid_argument("point is not orthogonal (defect " + std::to_string(defect) + ")");
    const int n = static_cast<int>(o.rows());
    std::vector<CMatrix> images;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) images.push_back(CMatrix::Constant(1, 1, Complex(o(i, j), 0.0)));
    return MatrixRep(Family::B, n, 1, std::move(images));
}

/// u_ij -> T · diag_α((points_α)_ij), the pair (t -> T, w_ij -> point evaluations)
/// of a representation of C[t,t^-1] * C(U(n)). With m points and d = T.rows(),
/// m must divide d; each point then occupies a diagonal block of size d/m.
inline MatrixRep free_product_rep(const CMatrix& t, const std::vector<CMatrix>& points, int n) {
    detail::require_unitary(t, construction_tol, "T");
    if (points.empty()) throw std::invalid_argument("free_product_rep needs at least one point");
    const int d = static_cast<int>(t.rows());
    const int m = static_cast<int>(points.size());
    if (d % m != 0)
        throw std::invalid_argument("dimension " + std::to_string(d) + " is not a multiple of " +
                                    std::to_string(m) + " points");
    for (const auto& p : points) {
        if (p.rows() != n || p.cols() != n)
            throw std::invalid_argument("point is not " + std::to_string(n) + "x" + std::to_string(n));
        detail::require_unitary(p, construction_tol, "point");
    }
    const int blk = d / m;
    std::vector<CMatrix> images;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXcd diag(d);
            for (int a = 0; a < m; ++a) diag.segment(a * blk, blk).setConstant(points[a](i, j));
            images.push_back(t * diag.asDiagonal());
        }
    return MatrixRep(Family::A, n, d, std::move(images));
}

/// Block-diagonal representation of size n1+n2, zero off the two diagonal blocks.
inline MatrixRep block_rep(const MatrixRep& first, const MatrixRep& second) {
    if (first.d() != second.d())
        throw std::invalid_argument("block_rep needs equal Hilbert space dimensions (" +
                                    std::to_string(first.d()) + " vs " + std::to_string(second.d()) +
                                    ")");
    if (first.family() != second.family())
        throw std::invalid_argument("block_rep needs representations of the same family");
    const int n1 = first.n();
    const int n = n1 + second.n();
    const int d = first.d();
    std::vector<CMatrix> images;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < n1 && j < n1) images.push_back(first.image(i, j));
            else if (i >= n1 && j >= n1) images.push_back(second.image(i - n1, j - n1));
            else images.push_back(CMatrix::Zero(d, d));
        }
    return MatrixRep(first.family(), n, d, std::move(images));
}

/// Direct sum of two representations of the same algebra: Hilbert dimensions add.
inline MatrixRep direct_sum(const MatrixRep& first, const MatrixRep& second) {
    if (first.family() != second.family() || first.n() != second.n())
        throw std::invalid_argument("direct_sum needs representations of the same algebra");
    const int d1 = first.d();
    const int d = d1 + second.d();
    std::vector<CMatrix> images;
    for (int i = 0; i < first.n(); ++i)
        for (int j = 0; j < first.n(); ++j) {
            CMatrix m = CMatrix::Zero(d, d);
            m.topLeftCorner(d1, d1) = first.image(i, j);
            m.bottomRightCorner(second.d(), second.d()) = second.image(i, j);
            images.push_back(std::move(m));
        }
    return MatrixRep(first.family(), first.n(), d, std::move(images));
}

/// u_ij -> T · v_ij. A one-dimensional `brep` is promoted to scalar multiples of the identity.
inline MatrixRep lift_b_to_a(const CMatrix& t, const MatrixRep& brep) {
    if (brep.family() != Family::B) throw std::invalid_argument("lift_b_to_a needs a B-type representation");
    detail::require_unitary(t, construction_tol, "T");
    detail::require_relations(brep, construction_tol, "B-type representation");
    const int d = static_cast<int>(t.rows());
    if (brep.d() != d && brep.d() != 1)
        throw std::invalid_argument("B-type representation dimension " + std::to_string(brep.d()) +
                                    " is incompatible with T of size " + std::to_string(d));
    std::vector<CMatrix> images;
    for (int i = 0; i < brep.n(); ++i)
        for (int j = 0; j < brep.n(); ++j)
            images.push_back(brep.d() == d ? CMatrix(t * brep.image(i, j))
                                           : CMatrix(t * brep.image(i, j)(0, 0)));
    MatrixRep out(Family::A, brep.n(), d, std::move(images));
    detail::require_relations(out, construction_tol, "lifted representation");
    return out;
}

/// pi(p) for a representation pi; adjoint letters map to conjugate-transposed images.
inline CMatrix evaluate(const NCPoly& p, const MatrixRep& rep) {
    if (p.family() != rep.family())
        throw std::invalid_argument(std::string("polynomial in family ") + family_name(p.family()) +
                                    " evaluated on a " + family_name(rep.family()) +
                                    "-type representation");
    if (p.n() != rep.n())
        throw std::invalid_argument("polynomial has n = " + std::to_string(p.n()) +
                                    ", representation has n = " + std::to_string(rep.n()));
    const int d = rep.d();
    CMatrix acc = CMatrix::Zero(d, d);
    for (const auto& term : p.terms()) {
        CMatrix prod = CMatrix::Identity(d, d);
        for (const auto& g : term.monomial) {
            if (g.adjoint) prod = prod * rep.image(g.row, g.col).adjoint();
            else prod = prod * rep.image(g.row, g.col);
        }
        acc += term.coeff * prod;
    }
    return acc;
}

/// The polynomials (u*u)_ij - δ_ij, (uu*)_ij - δ_ij, (ū*ū)_ij - δ_ij, (ūū*)_ij - δ_ij.
inline std::vector<NCPoly> relation_polynomials(Family family, int n) {
    std::vector<NCPoly> out;
    auto gen = [&](int i, int j, bool adj) { return Generator{i, j, adj}; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            NCPoly uu(family, n), uu_r(family, n), cc(family, n), cc_r(family, n);
            for (int k = 0; k < n; ++k) {
                uu.add_term(1.0, {gen(k, i, true), gen(k, j, false)});   // (u*u)_ij
                uu_r.add_term(1.0, {gen(i, k, false), gen(j, k, true)}); // (uu*)_ij
                cc.add_term(1.0, {gen(k, i, false), gen(k, j, true)});   // (ū*ū)_ij
                cc_r.add_term(1.0, {gen(i, k, true), gen(j, k, false)}); // (ūū*)_ij
            }
            for (NCPoly* p : {&uu, &uu_r, &cc, &cc_r}) {
                if (i == j) p->add_term(-1.0, {});
                out.push_back(std::move(*p));
            }
        }
    return out;
}

using Rng = std::mt19937_64;

namespace detail {

inline CMatrix complex_gaussian(int n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix z(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    return z;
}

} // namespace detail

/// Haar-distributed element of U(n): QR of a complex Gaussian matrix, with the
/// phases of R's diagonal moved into Q.
inline CMatrix haar_unitary(int n, Rng& rng) {
    const CMatrix z = detail::complex_gaussian(n, rng);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

/// Haar element of SU(n): a Haar unitary divided by an n-th root of its determinant.
inline CMatrix haar_special_unitary(int n, Rng& rng) {
    CMatrix u = haar_unitary(n, rng);
    const Complex det = u.determinant();
    return u * std::pow(det, -1.0 / n);
}

/// Haar element of O(n), same recipe over the reals.
inline RMatrix haar_orthogonal(int n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    RMatrix z(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) z(i, j) = normal(rng);
    Eigen::HouseholderQR<RMatrix> qr(z);
    RMatrix q = qr.householderQ() * RMatrix::Identity(n, n);
    const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0) q.col(j) *= -1.0;
    return q;
}

/// Parametrized families of representations searched by `separate`.
enum class StrategyKind {
    Point,       // u_ij -> w_ij, w Haar in U(n); d = 1
    FreeProduct, // free_product_rep with Haar T in U(d) and d Haar points of SU(n)
    Block,       // block_rep of two free-product reps of sizes ceil(n/2), floor(n/2)
    LiftB,       // lift_b_to_a of Haar T and a direct sum of d orthogonal points
    Orthogonal,  // B-type: direct sum of d orthogonal points
};

struct Strategy {
    StrategyKind kind = StrategyKind::FreeProduct;
    int d = 2;

    Family family() const { return kind == StrategyKind::Orthogonal ? Family::B : Family::A; }
};

inline StrategyKind parse_strategy_kind(std::string_view name) {
    if (name == "point") return StrategyKind::Point;
    if (name == "freeproduct") return StrategyKind::FreeProduct;
    if (name == "block") return StrategyKind::Block;
    if (name == "liftb") return StrategyKind::LiftB;
    if (name == "orthogonal") return StrategyKind::Orthogonal;
    throw std::invalid_argument("unknown strategy '" + std::string(name) +
                                "' (expected point, freeproduct, block, liftb or orthogonal)");
}

inline const char* strategy_name(StrategyKind k) {
    switch (k) {
    case StrategyKind::Point: return "point";
    case StrategyKind::FreeProduct: return "freeproduct";
    case StrategyKind::Block: return "block";
    case StrategyKind::LiftB: return "liftb";
    case StrategyKind::Orthogonal: return "orthogonal";
    }
    return "?";
}

namespace detail {

inline MatrixRep random_free_product(int n, int d, Rng& rng, bool special) {
    const CMatrix t = haar_unitary(d, rng);
    std::vector<CMatrix> points;
    for (int a = 0; a < d; ++a)
        points.push_back(special ? haar_special_unitary(n, rng) : haar_unitary(n, rng));
    return free_product_rep(t, points, n);
}

inline MatrixRep random_orthogonal_sum(int n, int d, Rng& rng) {
    MatrixRep acc = orthogonal_point_rep(haar_orthogonal(n, rng));
    for (int a = 1; a < d; ++a) acc = direct_sum(acc, orthogonal_point_rep(haar_orthogonal(n, rng)));
    return acc;
}

} // namespace detail

/// One draw from the strategy's family.
inline MatrixRep draw_rep(const Strategy& s, int n, Rng& rng) {
    if (s.d < 1) throw std::invalid_argument("strategy dimension must be >= 1");
    switch (s.kind) {
    case StrategyKind::Point: return point_rep(haar_unitary(n, rng));
    case StrategyKind::FreeProduct: return detail::random_free_product(n, s.d, rng, true);
    case StrategyKind::Block: {
        if (n < 2) throw std::invalid_argument("block strategy needs n >= 2");
        const int n1 = n - n / 2;
        auto first = detail::random_free_product(n1, s.d, rng, false);
        auto second = detail::random_free_product(n - n1, s.d, rng, false);
        return block_rep(first, second);
    }
    case StrategyKind::LiftB: {
        const CMatrix t = haar_unitary(s.d, rng);
        return lift_b_to_a(t, detail::random_orthogonal_sum(n, s.d, rng));
    }
    case StrategyKind::Orthogonal: return detail::random_orthogonal_sum(n, s.d, rng);
    }
    throw std::logic_error("unhandled strategy");
}

struct SeparationWitness {
    std::size_t trial = 0; // 0-based; the trial's generator was seeded with seed + trial
    double norm = 0;
    MatrixRep rep;
};

/// First trial whose representation maps p to an operator of norm > tol.
/// Absence means "not found in this family", never "p is zero".
inline std::optional<SeparationWitness> separate(const NCPoly& p, const Strategy& strategy,
                                                 std::size_t trials, std::uint64_t seed, double tol) {
    if (trials < 1) throw std::invalid_argument("separate needs at least one trial");
    if (strategy.family() != p.family())
        throw std::invalid_argument(std::string("strategy '") + strategy_name(strategy.kind) +
                                    "' produces " + family_name(strategy.family()) +
                                    "-type representations, polynomial is in family " +
                                    family_name(p.family()));
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(seed + t);
        MatrixRep rep = draw_rep(strategy, p.n(), rng);
        const double norm = operator_norm(evaluate(p, rep));
        if (norm > tol) return SeparationWitness{t, norm, std::move(rep)};
    }
    return std::nullopt;
}

} // namespace qgi

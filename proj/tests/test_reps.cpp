#include "qgi/reps.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>

using namespace qgi;

namespace {

constexpr double kRelTol = 1e-10;

NCPoly random_poly(Family family, int n, Rng& rng) {
    std::uniform_int_distribution<int> idx(0, n - 1);
    std::uniform_int_distribution<int> len(0, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    std::normal_distribution<double> coef(0.0, 1.0);
    NCPoly p(family, n);
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        for (int k = len(rng); k > 0; --k) m.push_back({idx(rng), idx(rng), coin(rng) == 1});
        p.add_term({coef(rng), coef(rng)}, std::move(m));
    }
    return p;
}

std::vector<MatrixRep> sample_reps(int n, Rng& rng) {
    std::vector<MatrixRep> reps;
    reps.push_back(point_rep(haar_unitary(n, rng)));
    reps.push_back(draw_rep({StrategyKind::FreeProduct, 2}, n, rng));
    reps.push_back(draw_rep({StrategyKind::FreeProduct, 4}, n, rng));
    if (n >= 2) reps.push_back(draw_rep({StrategyKind::Block, 3}, n, rng));
    reps.push_back(draw_rep({StrategyKind::LiftB, 3}, n, rng));
    return reps;
}

bool bit_identical(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

// ---- parse_poly --------------------------------------------------------------

TEST(ParsePoly, Commutator) {
    const auto p = parse_poly("u11 u12 - u12 u11", 2, Family::A);
    ASSERT_EQ(p.terms().size(), 2u);
    EXPECT_EQ(p.terms()[0].coeff, Complex(1.0));
    EXPECT_EQ(p.terms()[1].coeff, Complex(-1.0));
    EXPECT_EQ(p.terms()[0].monomial, (Monomial{{0, 0, false}, {0, 1, false}}));
    EXPECT_EQ(p.terms()[1].monomial, (Monomial{{0, 1, false}, {0, 0, false}}));
}

TEST(ParsePoly, AdjointGenerator) {
    const auto p = parse_poly("u11'", 2, Family::A);
    ASSERT_EQ(p.terms().size(), 1u);
    EXPECT_EQ(p.terms()[0].monomial, (Monomial{{0, 0, true}}));
}

TEST(ParsePoly, IndexOutOfRange) {
    EXPECT_THROW(parse_poly("u15", 2, Family::A), IndexRangeError);
    EXPECT_THROW(parse_poly("u01", 2, Family::A), IndexRangeError);
    try {
        parse_poly("u11 + u31", 2, Family::A);
        FAIL();
    } catch (const IndexRangeError& e) {
        EXPECT_EQ(e.position(), 8u);
    }
}

TEST(ParsePoly, CoefficientsAndUnit) {
    const auto p = parse_poly("2.5 u11 + (1-2i) u12' u21 - i + 3e-1*u22", 2, Family::A);
    ASSERT_EQ(p.terms().size(), 4u);
    EXPECT_EQ(p.terms()[0].coeff, Complex(2.5));
    EXPECT_EQ(p.terms()[1].coeff, Complex(1.0, -2.0));
    EXPECT_EQ(p.terms()[1].monomial, (Monomial{{0, 1, true}, {1, 0, false}}));
    EXPECT_EQ(p.terms()[2].coeff, Complex(0.0, -1.0));
    EXPECT_TRUE(p.terms()[2].monomial.empty());
    EXPECT_EQ(p.terms()[3].coeff, Complex(0.3));
}

TEST(ParsePoly, GrammarCorners) {
    const auto p = parse_poly("(-i + .5) u12'' - 1 + 2i", 2, Family::A);
    ASSERT_EQ(p.terms().size(), 3u);
    EXPECT_EQ(p.terms()[0].coeff, Complex(0.5, -1.0));
    EXPECT_EQ(p.terms()[0].monomial, (Monomial{{0, 1, false}}));
    EXPECT_EQ(p.terms()[1].coeff, Complex(-1.0));
    EXPECT_TRUE(p.terms()[1].monomial.empty());
    EXPECT_EQ(p.terms()[2].coeff, Complex(0.0, 2.0));
    EXPECT_EQ(parse_poly("u11*u12 u21", 2, Family::A).terms()[0].monomial.size(), 3u);
    try {
        parse_poly("u15", 2, Family::A);
        FAIL();
    } catch (const IndexRangeError& e) {
        EXPECT_EQ(e.position(), 3u);
    }
}

TEST(ParsePoly, LongIndexForm) {
    const auto p = parse_poly("v(10,3)", 12, Family::B);
    EXPECT_EQ(p.terms()[0].monomial, (Monomial{{9, 2, false}}));
}

TEST(ParsePoly, SyntaxErrors) {
    EXPECT_THROW(parse_poly("", 2, Family::A), ParseError);
    EXPECT_THROW(parse_poly("u11 +", 2, Family::A), ParseError);
    EXPECT_THROW(parse_poly("u1", 2, Family::A), ParseError);
    EXPECT_THROW(parse_poly("u11 $", 2, Family::A), ParseError);
    EXPECT_THROW(parse_poly("v11", 2, Family::A), ParseError);
    try {
        parse_poly("u11 u12 # u21", 2, Family::A);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 9u);
    }
}

// ---- check_relations ----------------------------------------------------------

TEST(CheckRelations, IdentityPointIsExact) {
    const auto report = check_relations(point_rep(CMatrix::Identity(2, 2)), 0.0);
    EXPECT_EQ(report.unitary_left, 0.0);
    EXPECT_EQ(report.unitary_right, 0.0);
    EXPECT_EQ(report.conjugate_left, 0.0);
    EXPECT_EQ(report.conjugate_right, 0.0);
    EXPECT_TRUE(report.passed);
    EXPECT_FALSE(report.selfadjoint);
}

TEST(CheckRelations, ZeroImagesFail) {
    std::vector<CMatrix> zeros(4, CMatrix::Zero(2, 2));
    const auto report = check_relations(MatrixRep(Family::A, 2, 2, zeros), kRelTol);
    EXPECT_NEAR(report.unitary_left, 1.0, 1e-15);
    EXPECT_FALSE(report.passed);
}

TEST(CheckRelations, NonSelfAdjointBTypeFails) {
    std::vector<CMatrix> images{CMatrix::Constant(1, 1, Complex(0, 1))};
    const auto report = check_relations(MatrixRep(Family::B, 1, 1, images), kRelTol);
    ASSERT_TRUE(report.selfadjoint);
    EXPECT_NEAR(*report.selfadjoint, 2.0, 1e-15);
    EXPECT_FALSE(report.passed);
}

// ---- constructions --------------------------------------------------------------

TEST(PointRep, IdentityAndDiagonal) {
    const auto rep = point_rep(CMatrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(rep.image(i, j)(0, 0), Complex(i == j ? 1.0 : 0.0));

    CMatrix diag = CMatrix::Zero(2, 2);
    diag(0, 0) = std::polar(1.0, 0.3);
    diag(1, 1) = std::polar(1.0, -1.1);
    const auto d = point_rep(diag);
    EXPECT_EQ(d.image(0, 1)(0, 0), Complex(0.0));
    EXPECT_TRUE(check_relations(d, 1e-12).passed);
}

TEST(PointRep, HaarRandom) {
    Rng rng(3);
    EXPECT_TRUE(check_relations(point_rep(haar_unitary(3, rng)), 1e-12).passed);
}

TEST(PointRep, RejectsNonUnitary) {
    EXPECT_THROW(point_rep(CMatrix::Constant(2, 2, Complex(1.0))), std::invalid_argument);
    EXPECT_THROW(point_rep(CMatrix::Identity(2, 3)), std::invalid_argument);
}

TEST(OrthogonalPointRep, Examples) {
    const auto id = orthogonal_point_rep(RMatrix::Identity(3, 3));
    EXPECT_EQ(id.family(), Family::B);
    EXPECT_EQ(id.image(1, 1)(0, 0), Complex(1.0));
    EXPECT_EQ(id.image(1, 2)(0, 0), Complex(0.0));

    RMatrix rot(2, 2);
    const double c = std::cos(std::numbers::pi / 2), s = std::sin(std::numbers::pi / 2);
    rot << c, -s, s, c;
    const auto r = orthogonal_point_rep(rot);
    EXPECT_NEAR(r.image(0, 1)(0, 0).real(), -1.0, 1e-15);
    EXPECT_NEAR(r.image(1, 0)(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(r.image(0, 0)(0, 0)), 0.0, 1e-15);

    Rng rng(11);
    EXPECT_TRUE(check_relations(orthogonal_point_rep(haar_orthogonal(4, rng)), 1e-12).passed);
    EXPECT_THROW(orthogonal_point_rep(RMatrix::Constant(2, 2, 1.0)), std::invalid_argument);
}

TEST(FreeProductRep, IdentityTRecoversPoint) {
    Rng rng(5);
    const CMatrix w = haar_unitary(2, rng);
    const auto rep = free_product_rep(CMatrix::Identity(1, 1), {w}, 2);
    const auto pt = point_rep(w);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_EQ(rep.image(i, j), pt.image(i, j));
}

TEST(FreeProductRep, TwoSU2Points) {
    Rng rng(8);
    CMatrix t = CMatrix::Zero(2, 2);
    t(0, 0) = 1.0;
    t(1, 1) = -1.0;
    const auto rep = free_product_rep(t, {haar_special_unitary(2, rng), haar_special_unitary(2, rng)}, 2);
    EXPECT_EQ(rep.d(), 2);
    EXPECT_TRUE(check_relations(rep, kRelTol).passed);
}

TEST(FreeProductRep, Errors) {
    Rng rng(1);
    const CMatrix w = haar_unitary(2, rng);
    EXPECT_THROW(free_product_rep(2.0 * CMatrix::Identity(2, 2), {w, w}, 2), std::invalid_argument);
    EXPECT_THROW(free_product_rep(CMatrix::Identity(3, 3), {w, w}, 2), std::invalid_argument);
    EXPECT_THROW(free_product_rep(CMatrix::Identity(2, 2), {w}, 3), std::invalid_argument);
    EXPECT_THROW(free_product_rep(CMatrix::Identity(2, 2), {}, 2), std::invalid_argument);
}

TEST(SpecialUnitary, DeterminantOne) {
    Rng rng(21);
    for (int n = 1; n <= 4; ++n) {
        const CMatrix s = haar_special_unitary(n, rng);
        EXPECT_NEAR(std::abs(s.determinant() - Complex(1.0)), 0.0, 1e-12);
        EXPECT_LE(unitarity_defect(s), 1e-12);
    }
}

TEST(BlockRep, PointsGiveBlockDiagonalUnitary) {
    Rng rng(13);
    const auto rep = block_rep(point_rep(haar_unitary(2, rng)), point_rep(haar_unitary(2, rng)));
    EXPECT_EQ(rep.n(), 4);
    EXPECT_EQ(rep.d(), 1);
    EXPECT_EQ(rep.image(0, 3)(0, 0), Complex(0.0));
    EXPECT_EQ(rep.image(2, 1)(0, 0), Complex(0.0));
    EXPECT_TRUE(check_relations(rep, 1e-12).passed);
}

TEST(BlockRep, FreeProductBlocks) {
    Rng rng(17);
    const auto a = draw_rep({StrategyKind::FreeProduct, 3}, 2, rng);
    const auto b = draw_rep({StrategyKind::FreeProduct, 3}, 2, rng);
    const auto rep = block_rep(a, b);
    EXPECT_EQ(rep.n(), 4);
    EXPECT_TRUE(check_relations(rep, kRelTol).passed);
}

TEST(BlockRep, MismatchedDimension) {
    Rng rng(2);
    EXPECT_THROW(block_rep(point_rep(haar_unitary(2, rng)), draw_rep({StrategyKind::FreeProduct, 2}, 2, rng)),
                 std::invalid_argument);
}

TEST(LiftBToA, Examples) {
    const auto trivial = lift_b_to_a(CMatrix::Identity(1, 1), orthogonal_point_rep(RMatrix::Identity(2, 2)));
    EXPECT_EQ(trivial.family(), Family::A);
    EXPECT_EQ(trivial.image(0, 0)(0, 0), Complex(1.0));
    EXPECT_EQ(trivial.image(0, 1)(0, 0), Complex(0.0));

    Rng rng(31);
    const auto phase = lift_b_to_a(CMatrix::Constant(1, 1, Complex(0, 1)), orthogonal_point_rep(haar_orthogonal(3, rng)));
    EXPECT_TRUE(check_relations(phase, 1e-12).passed);

    // Random T with a d×d B-type rep built from diagonal orthogonal blocks.
    MatrixRep brep = orthogonal_point_rep(haar_orthogonal(3, rng));
    for (int k = 1; k < 4; ++k) brep = direct_sum(brep, orthogonal_point_rep(haar_orthogonal(3, rng)));
    const auto lifted = lift_b_to_a(haar_unitary(4, rng), brep);
    EXPECT_TRUE(check_relations(lifted, kRelTol).passed);

    // A one-dimensional B rep is promoted to scalars against a larger T.
    EXPECT_TRUE(check_relations(lift_b_to_a(haar_unitary(3, rng), orthogonal_point_rep(haar_orthogonal(2, rng))),
                                kRelTol)
                    .passed);
}

TEST(LiftBToA, Errors) {
    Rng rng(4);
    EXPECT_THROW(lift_b_to_a(CMatrix::Identity(1, 1), point_rep(haar_unitary(2, rng))), std::invalid_argument);
    std::vector<CMatrix> bad{CMatrix::Constant(1, 1, Complex(0.5))};
    EXPECT_THROW(lift_b_to_a(CMatrix::Identity(1, 1), MatrixRep(Family::B, 1, 1, bad)), std::runtime_error);
    MatrixRep two = direct_sum(orthogonal_point_rep(RMatrix::Identity(2, 2)), orthogonal_point_rep(RMatrix::Identity(2, 2)));
    EXPECT_THROW(lift_b_to_a(CMatrix::Identity(3, 3), two), std::invalid_argument);
}

TEST(Constructions, RandomDrawsPassRelations) {
    Rng rng(2024);
    for (int trial = 0; trial < 30; ++trial)
        for (int n = 2; n <= 4; ++n)
            for (const auto& rep : sample_reps(n, rng)) {
                const auto report = check_relations(rep, kRelTol);
                EXPECT_TRUE(report.passed) << "n=" << n << " residual " << report.max_residual();
            }
}

// ---- evaluate -----------------------------------------------------------------------

TEST(Evaluate, UnitIsIdentity) {
    Rng rng(6);
    const auto rep = draw_rep({StrategyKind::FreeProduct, 3}, 2, rng);
    EXPECT_EQ(evaluate(NCPoly::unit(Family::A, 2), rep), CMatrix::Identity(3, 3));
}

TEST(Evaluate, CommutatorVanishesOnPoints) {
    Rng rng(7);
    const auto p = parse_poly("u11 u12 - u12 u11", 2, Family::A);
    for (int k = 0; k < 20; ++k) EXPECT_EQ(operator_norm(evaluate(p, point_rep(haar_unitary(2, rng)))), 0.0);
}

TEST(Evaluate, RowRelation) {
    Rng rng(9);
    const auto p = parse_poly("u11 u11' + u12 u12' - 1", 2, Family::A);
    for (int k = 0; k < 10; ++k)
        for (const auto& rep : sample_reps(2, rng)) EXPECT_LE(operator_norm(evaluate(p, rep)), kRelTol);
}

TEST(Evaluate, RelationPolynomialsVanish) {
    Rng rng(10);
    for (int n = 2; n <= 3; ++n) {
        const auto polys = relation_polynomials(Family::A, n);
        EXPECT_EQ(polys.size(), static_cast<std::size_t>(4 * n * n));
        for (const auto& rep : sample_reps(n, rng))
            for (const auto& p : polys) EXPECT_LE(operator_norm(evaluate(p, rep)), kRelTol);
        MatrixRep b = draw_rep({StrategyKind::Orthogonal, 2}, n, rng);
        for (const auto& p : relation_polynomials(Family::B, n)) EXPECT_LE(operator_norm(evaluate(p, b)), kRelTol);
    }
}

TEST(Evaluate, StarHomomorphism) {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 3;
        const auto reps = sample_reps(n, rng);
        const auto& rep = reps[static_cast<std::size_t>(trial) % reps.size()];
        const auto p = random_poly(Family::A, n, rng);
        const auto q = random_poly(Family::A, n, rng);
        const CMatrix ep = evaluate(p, rep), eq = evaluate(q, rep);
        const double scale = (1.0 + operator_norm(ep)) * (1.0 + operator_norm(eq));
        EXPECT_LE(operator_norm(evaluate(p * q, rep) - ep * eq), 1e-8 * scale);
        EXPECT_LE(operator_norm(evaluate(p.adjoint(), rep) - ep.adjoint()), 1e-8 * (1.0 + operator_norm(ep)));
        EXPECT_LE(operator_norm(evaluate(p + q, rep) - (ep + eq)), 1e-8 * scale);
    }
}

TEST(Evaluate, Mismatch) {
    Rng rng(14);
    const auto rep = point_rep(haar_unitary(2, rng));
    EXPECT_THROW(evaluate(parse_poly("u11", 3, Family::A), rep), std::invalid_argument);
    EXPECT_THROW(evaluate(parse_poly("v11", 2, Family::B), rep), std::invalid_argument);
}

// ---- separate -----------------------------------------------------------------------

TEST(Separate, PointStrategyNeverSeparatesCommutator) {
    const auto p = parse_poly("u11 u12 - u12 u11", 2, Family::A);
    EXPECT_FALSE(separate(p, {StrategyKind::Point, 1}, 100, 42, 1e-6));
}

TEST(Separate, FreeProductFindsWitness) {
    const auto p = parse_poly("u11 u12 - u12 u11", 2, Family::A);
    const auto w = separate(p, {StrategyKind::FreeProduct, 2}, 100, 42, 1e-6);
    ASSERT_TRUE(w);
    EXPECT_GT(w->norm, 1e-6);
    EXPECT_EQ(w->rep.d(), 2);
    EXPECT_TRUE(check_relations(w->rep, kRelTol).passed);
    EXPECT_NEAR(operator_norm(evaluate(p, w->rep)), w->norm, 0.0);
}

TEST(Separate, ZeroPolynomial) {
    const auto zero = parse_poly("0", 2, Family::A);
    EXPECT_FALSE(separate(zero, {StrategyKind::FreeProduct, 2}, 10, 1, 1e-6));
    const auto cancel = parse_poly("u12 - u12", 2, Family::A);
    EXPECT_FALSE(separate(cancel, {StrategyKind::Block, 2}, 10, 1, 1e-6));
}

TEST(Separate, Reproducible) {
    const auto p = parse_poly("u11 u21' u12 - u12 u21' u11", 2, Family::A);
    for (auto kind : {StrategyKind::FreeProduct, StrategyKind::Block, StrategyKind::LiftB}) {
        const auto a = separate(p, {kind, 3}, 50, 77, 1e-6);
        const auto b = separate(p, {kind, 3}, 50, 77, 1e-6);
        ASSERT_EQ(a.has_value(), b.has_value());
        if (!a) continue;
        EXPECT_EQ(a->trial, b->trial);
        EXPECT_TRUE(bit_identical(a->norm, b->norm));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) EXPECT_EQ(a->rep.image(i, j), b->rep.image(i, j));
    }
}

TEST(Separate, FamilyMismatch) {
    const auto p = parse_poly("v11 v12 - v12 v11", 2, Family::B);
    EXPECT_THROW(separate(p, {StrategyKind::FreeProduct, 2}, 1, 0, 1e-6), std::invalid_argument);
    // orthogonal points commute
    EXPECT_FALSE(separate(p, {StrategyKind::Orthogonal, 3}, 20, 0, 1e-6));
}

TEST(Strategy, Names) {
    for (auto k : {StrategyKind::Point, StrategyKind::FreeProduct, StrategyKind::Block, StrategyKind::LiftB,
                   StrategyKind::Orthogonal})
        EXPECT_EQ(parse_strategy_kind(strategy_name(k)), k);
    EXPECT_THROW(parse_strategy_kind("bogus"), std::invalid_argument);
}

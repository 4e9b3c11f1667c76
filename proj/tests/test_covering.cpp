#include <gtest/gtest.h>

#include "support.hpp"

using namespace frob;
using frob::test::make_instance;

namespace {
LatticeSpec lat(std::initializer_list<std::initializer_list<Rational>> rows) { return LatticeSpec(Matrix<Rational>(rows)); }
const Rational kTol(1, 1 << 20);
}  // namespace

TEST(Covering, SimplexValidation) {
    EXPECT_THROW(SimplexSpec({Rational(1), Rational(0)}), Error);
    EXPECT_EQ(SimplexSpec::standard(2).volume(), Rational(1, 2));
    EXPECT_EQ(SimplexSpec::from_tuple(make_instance({3, 5, 7})).volume(), Rational(1, 30));
}

TEST(Covering, IntegerLatticeHasMuTwo) {
    auto s = SimplexSpec::standard(2);
    auto z = lat({{1, 0}, {0, 1}});
    EXPECT_TRUE(is_covering_2d(s, Rational(2), z).covered);
    auto below = is_covering_2d(s, Rational(2) - Rational(1, 1000), z);
    ASSERT_FALSE(below.covered);
    EXPECT_FALSE(frob::test::brute_point_covered(s, Rational(2) - Rational(1, 1000), z, *below.witness));
    auto mu = inhomogeneous_minimum_2d(s, z, kTol);
    EXPECT_LE(mu.lo, 2);
    EXPECT_GE(mu.hi, 2);
    EXPECT_LE(mu.hi, mu.lo * (1 + kTol));
}

TEST(Covering, OptimalLatticeAttainsSqrt3) {
    auto s = SimplexSpec::standard(2);
    auto l0 = lat({{1, 0}, {Rational(1, 3), Rational(1, 3)}});
    EXPECT_TRUE(is_covering_2d(s, Rational(1), l0).covered);
    EXPECT_FALSE(is_covering_2d(s, Rational(4095, 4096), l0).covered);
    Interval normalized = Interval::from_integer(1) / rational_root(l0.det_abs(), 2);
    EXPECT_TRUE(normalized.overlaps(Interval::sqrt3()));
}

TEST(Covering, ContinuityUnderBasisPerturbation) {
    // mu(S_2, diag(1 + 1/k, 1)) = 2 + 1/k.
    auto s = SimplexSpec::standard(2);
    Rational prev_gap = 10;
    for (long k : {2, 8, 32, 128}) {
        auto l = lat({{1 + Rational(1, k), 0}, {0, 1}});
        auto mu = inhomogeneous_minimum_2d(s, l, kTol);
        Rational gap = abs(mu.hi - 2);
        EXPECT_LE(gap, Rational(1, k) + 3 * kTol);
        EXPECT_LT(gap, prev_gap);
        prev_gap = gap;
        EXPECT_LE(mu.lo, 2 + Rational(1, k));
        EXPECT_GE(mu.hi, 2 + Rational(1, k));
    }
}

TEST(Covering, DiagonalTransformConsistency) {
    // mu(S_alpha, D^-1 L) = mu(S_2, L) with D = diag(alpha).
    std::vector<Rational> alpha{Rational(2, 5), Rational(3, 5)};
    auto l = lat({{1, 0}, {Rational(1, 3), Rational(1, 3)}});
    auto mapped = alpha_transform(l, alpha);
    auto a = inhomogeneous_minimum_2d(SimplexSpec(alpha), mapped, kTol);
    auto b = inhomogeneous_minimum_2d(SimplexSpec::standard(2), l, kTol);
    EXPECT_LE(a.lo, b.hi);
    EXPECT_LE(b.lo, a.hi);
}

TEST(Covering, KannanIdentityExact) {
    for (auto v : std::vector<std::vector<long>>{{3, 5, 7}, {1, 4, 9}, {6, 9, 20}, {11, 13, 17}}) {
        auto rep = kannan_check(make_instance(v));
        EXPECT_TRUE(rep.exact_mode);
        EXPECT_TRUE(rep.pass) << make_instance(v).str();
        EXPECT_TRUE(rep.at_f.covered);
        EXPECT_FALSE(rep.below_f.covered);
    }
    EXPECT_EQ(kannan_check(make_instance({3, 5, 7})).f, 19);
}

TEST(Covering, KannanIdentitySampled) {
    KannanOptions opt;
    opt.samples = 2000;
    auto rep = kannan_check(make_instance({5, 7, 11, 13}), opt);
    EXPECT_FALSE(rep.exact_mode);
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.uncovered_at_f, 0u);
    EXPECT_EQ(rep.f, 45);
}

TEST(Covering, TupleOracleSupremumIsF) {
    frob::test::Rng rng(5);
    for (int k = 0; k < 40; ++k) {
        auto inst = frob::test::random_instance(rng, static_cast<std::size_t>(rng.uniform(3, 5)), 60);
        TupleCoverOracle oracle(inst);
        EXPECT_EQ(oracle.supremum(), frobenius_number(inst).f) << inst.str();
        auto x = oracle.deep_point(Rational(1, 1000));
        Rational sum = 0;
        for (std::size_t i = 0; i + 1 < inst.size(); ++i) sum += Rational(inst[i]);
        EXPECT_EQ(oracle.cost(x), Rational(oracle.supremum()) - sum / 1000);
    }
}

TEST(Covering, TupleOracleAgreesWithGeometry) {
    auto inst = make_instance({4, 9, 11});
    TupleCoverOracle oracle(inst);
    auto s = SimplexSpec::from_tuple(inst);
    auto l = lattice_from_tuple(inst);
    frob::test::Rng rng(3);
    for (int k = 0; k < 400; ++k) {
        Point p{rng.rational(-40, 40, 13), rng.rational(-40, 40, 13)};
        Rational sigma = rng.positive(30, 1);
        EXPECT_EQ(oracle.covered({p.x, p.y}, sigma), frob::test::brute_point_covered(s, sigma, l, p));
    }
}

TEST(Covering, ScalingVerdictsAgree) {
    auto s = SimplexSpec({Rational(2), Rational(3, 2)});
    auto l = lat({{Rational(3, 2), Rational(1, 2)}, {Rational(-1, 3), 1}});
    for (auto sigma : {Rational(1), Rational(2), Rational(5, 2), Rational(4)})
        for (auto t : {Rational(1, 3), Rational(2), Rational(7, 5)}) EXPECT_TRUE(scaling_check(s, l, sigma, t));
    EXPECT_THROW(scaling_check(s, l, Rational(1), Rational(0)), Error);
}

TEST(Covering, Mu0Bracket) {
    auto b = mu0_bounds(3);
    EXPECT_TRUE(b.lower.certainly_less(Interval::sqrt3()));
    EXPECT_EQ(b.upper, 2);
    EXPECT_EQ(b.gamma_upper, Rational(1, 2));
    for (std::size_t n = 3; n <= 12; ++n) {
        auto m = mu0_bounds(n);
        EXPECT_TRUE(m.lower.certainly_less(Interval::from_rational(m.upper)));
        EXPECT_TRUE(m.lower_over_dim.certainly_greater(Interval::from_integer(1) / Interval::e()));
    }
}

TEST(Mu0Search, ShortRunStaysAboveSqrt3) {
    Mu0SearchConfig cfg;
    cfg.starts = 2;
    cfg.max_iters = 30;
    auto r = mu0_search_2d(cfg);
    EXPECT_EQ(r.best_lattice.det_abs(), 1);
    EXPECT_FALSE(Interval::from_rational(r.best_mu).certainly_less(Interval::sqrt3() - Rational(1, 1000000)));
    EXPECT_LT(r.best_mu.get_d(), 2.0 + 1e-5);  // start 0 is Z^2
    auto again = mu0_search_2d(cfg);
    EXPECT_EQ(again.best_mu, r.best_mu);
}

TEST(CoveringProperties, Monotonicity) {
    auto r = frob::test::property_monotonicity(21, 150);
    EXPECT_TRUE(r.ok()) << r.failures.front();
}

TEST(CoveringProperties, WitnessValidity) {
    auto r = frob::test::property_witness(22, 150);
    EXPECT_TRUE(r.ok()) << r.failures.front();
}

TEST(CoveringProperties, TranslationInvariance) {
    auto r = frob::test::property_translation(23, 150);
    EXPECT_TRUE(r.ok()) << r.failures.front();
}

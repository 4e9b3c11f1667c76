#include <gtest/gtest.h>

#include "support.hpp"

using namespace frob;
using frob::test::brute_frobenius;
using frob::test::make_instance;

TEST(Frobenius, ValidatesInstances) {
    EXPECT_THROW(make_instance({4, 6, 8}), Error);
    EXPECT_THROW(make_instance({5, 3, 7}), Error);
    EXPECT_THROW(make_instance({5}), Error);
    try {
        make_instance({4, 6});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotCoprime);
    }
}

TEST(Frobenius, KnownValues) {
    auto r = frobenius_number(make_instance({3, 5, 7}));
    EXPECT_EQ(r.g, 4);
    EXPECT_EQ(r.f, 19);
    EXPECT_EQ(frobenius_number(make_instance({6, 9, 20})).g, 43);
    EXPECT_EQ(frobenius_number(make_instance({1, 5})).g, -1);
    EXPECT_EQ(frobenius_number(make_instance({2, 3})).f, 6);
}

TEST(Frobenius, SharpFormulaForPairs) {
    for (long a = 2; a <= 60; ++a)
        for (long b = a + 1; b <= 60; ++b) {
            if (std::gcd(a, b) != 1) continue;
            auto r = frobenius_number(make_instance({a, b}));
            ASSERT_EQ(r.g, (a - 1) * (b - 1) - 1);
            ASSERT_EQ(r.f, a * b);
        }
}

TEST(Frobenius, MatchesSieveOracle) {
    frob::test::Rng rng(7);
    for (int k = 0; k < 300; ++k) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(2, 5));
        auto inst = frob::test::random_instance(rng, n, 90);
        std::vector<long> v;
        for (const auto& x : inst.values()) v.push_back(x.get_si());
        ASSERT_EQ(frobenius_number(inst).g, brute_frobenius(v)) << inst.str();
    }
}

TEST(Frobenius, RepresentabilityAgreesWithDirectScan) {
    auto inst = make_instance({5, 8, 11});
    auto res = frobenius_number(inst);
    for (long n = 0; n <= 60; ++n) {
        bool direct = false;
        for (long i = 0; 5 * i <= n && !direct; ++i)
            for (long j = 0; 5 * i + 8 * j <= n && !direct; ++j)
                direct = (n - 5 * i - 8 * j) % 11 == 0;
        EXPECT_EQ(is_representable(Integer(n), inst, res, false), direct) << n;
    }
    // f is the largest integer that is not a positive combination.
    EXPECT_FALSE(is_representable(res.f, inst, res, true));
    for (long k = 1; k <= 30; ++k) EXPECT_TRUE(is_representable(res.f + k, inst, res, true));
}

TEST(Frobenius, RatioAndBounds) {
    auto inst = make_instance({3, 5, 7});
    auto ratio = f_ratio(inst).ratio;
    EXPECT_NEAR(ratio.mid(), 19.0 / std::sqrt(105.0), 1e-12);
    EXPECT_THROW(f_ratio(make_instance({2, 3})), Error);

    auto b = bounds_report(inst);
    EXPECT_TRUE(b.lower_bounds_hold());
    EXPECT_TRUE(b.find("davison")->satisfied);
    EXPECT_TRUE(b.find("corollary1_strict")->satisfied);
    EXPECT_FALSE(b.find("sharp")->applicable);

    auto pair = bounds_report(make_instance({2, 3}));
    EXPECT_TRUE(pair.find("sharp")->satisfied);
    EXPECT_EQ(pair.g, 1);
    EXPECT_EQ(pair.f, 6);
}

TEST(Frobenius, BudgetGuardsLargeModulus) {
    FrobeniusConfig cfg;
    cfg.max_modulus = 100;
    EXPECT_THROW(frobenius_number(make_instance({101, 103, 107}), cfg), Error);
}

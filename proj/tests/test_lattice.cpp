#include <gtest/gtest.h>

#include "support.hpp"

using namespace frob;
using frob::test::make_instance;

TEST(Lattice, HermiteFormOfTupleLattice) {
    auto l = lattice_from_tuple(make_instance({3, 5, 7}));
    EXPECT_EQ(to_string(l.basis()), "1,5;0,7");
    EXPECT_EQ(l.det_abs(), 7);
}

TEST(Lattice, TupleLatticeMatchesPointEnumeration) {
    for (auto v : std::vector<std::vector<long>>{{3, 5, 7}, {4, 9, 10, 13}, {6, 10, 15}}) {
        auto inst = make_instance(v);
        auto l = lattice_from_tuple(inst);
        ASSERT_EQ(l.dim(), v.size() - 1);
        // Every basis row satisfies the congruence.
        for (std::size_t i = 0; i < l.dim(); ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < l.dim(); ++j) s += inst[j] * l.basis()(i, j).get_num();
            EXPECT_EQ(mod(s, inst.largest()), 0);
        }
        EXPECT_EQ(l.det_abs(), Rational(inst.largest()));
    }
}

TEST(Lattice, RankDeficientGeneratorsRejected) {
    Matrix<Integer> m{{Integer(1), Integer(2)}, {Integer(2), Integer(4)}};
    EXPECT_THROW(hermite_normal_form(m), Error);
    EXPECT_THROW(LatticeSpec(Matrix<Rational>{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}), Error);
}

TEST(Lattice, CanonicalFormIdentifiesEqualLattices) {
    LatticeSpec a(Matrix<Rational>{{Rational(1), Rational(0)}, {Rational(1, 3), Rational(1, 3)}});
    LatticeSpec b(Matrix<Rational>{{Rational(4, 3), Rational(1, 3)}, {Rational(5, 3), Rational(2, 3)}});
    EXPECT_TRUE(same_lattice(a, b));
    EXPECT_FALSE(same_lattice(a, scale_lattice(a, Rational(2))));
}

TEST(Lattice, Scaling) {
    LatticeSpec z(Matrix<Rational>::identity(2));
    EXPECT_EQ(scale_lattice(z, Rational(3, 2)).det_abs(), Rational(9, 4));
    EXPECT_THROW(scale_lattice(z, Rational(0)), Error);
    auto r = scale_lattice(z, RadicalScalar{Rational(3), 2});
    EXPECT_EQ(*r.det_abs_exact(), 3);
    auto c = scale_lattice(LatticeSpec(Matrix<Rational>::identity(3)), RadicalScalar{Rational(2), 2});
    EXPECT_FALSE(c.det_abs_exact());
    EXPECT_NEAR(c.det_abs().mid(), std::pow(2.0, 1.5), 1e-12);
}

TEST(Lattice, StandardCoveringLattice) {
    auto l = standard_covering_lattice(4);
    EXPECT_EQ(l.det_abs(), Rational(1, 27));
    EXPECT_THROW(standard_covering_lattice(2), Error);
}

TEST(LatticeProperties, HnfIdempotence) {
    auto r = frob::test::property_hnf(11, 300);
    EXPECT_TRUE(r.ok()) << r.failures.front();
}

TEST(LatticeProperties, MembershipCongruence) {
    auto r = frob::test::property_membership(12, 100);
    EXPECT_TRUE(r.ok()) << r.failures.front();
}

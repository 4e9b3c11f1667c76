#include <gtest/gtest.h>

#include "support.hpp"

using namespace frob;

namespace {

ConstructionInput worked_input() {
    return make_construction_input(LatticeSpec(Matrix<Rational>::identity(2)), {Rational(1, 2), Rational(3, 4)});
}

/// Minor omitting column i of an integer matrix, by Gaussian elimination.
Integer numeric_minor(const Matrix<Integer>& m, std::size_t i) { return determinant(m.without_column(i)); }

}  // namespace

TEST(Construction, AlphaValidation) {
    LatticeSpec z(Matrix<Rational>::identity(2));
    EXPECT_THROW(make_construction_input(z, {Rational(0), Rational(1, 2)}), Error);
    EXPECT_THROW(make_construction_input(z, {Rational(1, 2), Rational(3, 2)}), Error);
    EXPECT_THROW(make_construction_input(z, {Rational(3, 4), Rational(1, 2)}), Error);
    EXPECT_THROW(make_construction_input(z, {Rational(1, 2)}), Error);
}

TEST(Construction, DenominatorClearsAllEntries) {
    auto in = worked_input();
    EXPECT_EQ(in.d, 4);
    LatticeSpec l(Matrix<Rational>{{Rational(5, 2), Rational(0)}, {Rational(5, 6), Rational(5, 9)}});
    auto in2 = make_construction_input(l, {Rational(2, 5), Rational(3, 5)});
    EXPECT_EQ(in2.d, 18);
    auto b = unperturbed_matrix(in2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(is_integer(in2.d * b(i, j)));
}

TEST(Construction, NonIntegerCoefficientDetected) {
    auto in = worked_input();
    in.d = 2;
    try {
        build_parametric_matrix(in, {Integer(1), Integer(2)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NonIntegerCoefficient);
    }
}

TEST(Construction, WorkedExampleMinors) {
    auto in = worked_input();
    auto pm = build_parametric_matrix(in, {Integer(1), Integer(2)});
    auto ms = minor_polynomials(pm, in);
    // -2t(4t+2), 3t(4t+1), (4t+1)(4t+2)
    EXPECT_EQ(ms.M[0], (IntPoly{Integer(0), Integer(-4), Integer(-8)}));
    EXPECT_EQ(ms.M[1], (IntPoly{Integer(0), Integer(3), Integer(12)}));
    EXPECT_EQ(ms.M[2], (IntPoly{Integer(2), Integer(12), Integer(16)}));
    for (long t = 1; t <= 20; ++t) {
        auto m = pm.evaluate(Integer(t));
        for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ms.M[i].evaluate(Integer(t)), numeric_minor(m, i));
    }
}

TEST(Construction, GcdOneSearch) {
    auto in = worked_input();
    auto pm = build_parametric_matrix(in, {Integer(1), Integer(2)});
    auto ms = minor_polynomials(pm, in);
    std::vector<Integer> expected;
    for (long t = 1; t <= 40; ++t) {
        auto m = pm.evaluate(Integer(t));
        Integer g = 0;
        for (std::size_t i = 0; i < 3; ++i) g = gcd(g, numeric_minor(m, i));
        if (g == 1) expected.push_back(t);
    }
    EXPECT_EQ(find_gcd_one(ms, Integer(40)), expected);
    EXPECT_EQ(gcd_at(ms, Integer(1)), 3);
    EXPECT_EQ(gcd_at(ms, Integer(2)), 2);
    EXPECT_EQ(expected.front(), 3);
}

TEST(Construction, WorkedExampleTuple) {
    auto in = worked_input();
    auto out = construct_tuple(in, {Integer(1), Integer(2)}, Integer(3));
    EXPECT_EQ(out.a.str(), "84,117,182");
    EXPECT_EQ(to_string(out.basis_rows), "13,0;0,14");
    EXPECT_EQ(mod(Integer(13 * 84), Integer(182)), 0);
    EXPECT_EQ(mod(Integer(14 * 117), Integer(182)), 0);
    EXPECT_TRUE(same_lattice(LatticeSpec::from_integer_basis(out.basis_rows), lattice_from_tuple(out.a)));
    EXPECT_EQ(out.aN_leading_ratio, make_rational(Integer(182), Integer(144)));
}

TEST(Construction, DegenerateOffsetsRejected) {
    auto in = worked_input();
    try {
        minor_polynomials(build_parametric_matrix(in, {Integer(0), Integer(0)}), in);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::CommonFactorFound);
    }
}

TEST(Construction, GcdAndOrderingFailures) {
    auto in = make_construction_input(LatticeSpec(Matrix<Rational>::identity(2)), {Rational(1, 2), Rational(1, 2)});
    auto pm = build_parametric_matrix(in, {Integer(1), Integer(2)});
    auto ms = compute_minors(pm, in);
    // |M_1| = t(2t+2) > |M_2| = t(2t+1): the ordering never holds.
    EXPECT_FALSE(ordering_threshold(ms).has_value());
    for (auto [t, code] : {std::pair{1L, Errc::OrderingFailed}, std::pair{2L, Errc::GcdNotOne}}) {
        try {
            construct_tuple(in, pm, ms, Integer(t));
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), code) << e.what();
        }
    }
    auto good = minor_polynomials(build_parametric_matrix(worked_input(), {Integer(1), Integer(2)}), worked_input());
    auto th = ordering_threshold(good);
    ASSERT_TRUE(th.has_value());
    for (Integer t = *th; t < *th + 50; ++t) {
        Integer a = abs(good.M[0].evaluate(t)), b = abs(good.M[1].evaluate(t)), c = abs(good.M[2].evaluate(t));
        EXPECT_TRUE(0 < a && a < b && b < c);
    }
}

TEST(Construction, OutputsAreLatticesOfTheirTuples) {
    frob::test::Rng rng(31);
    std::size_t checked = 0;
    for (int k = 0; k < 30; ++k) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(3, 4));
        Matrix<Rational> b(n - 1, n - 1);
        for (std::size_t i = 0; i < n - 1; ++i)
            for (std::size_t j = 0; j < n - 1; ++j) b(i, j) = rng.rational(-4, 4, 3);
        if (determinant(b) == 0) continue;
        std::vector<Rational> alpha;
        for (std::size_t i = 0; i < n - 1; ++i) alpha.push_back(rng.positive(9, 9));
        std::sort(alpha.begin(), alpha.end());
        if (alpha.back() > 1) continue;
        auto in = make_construction_input(LatticeSpec(b), alpha);
        ConstructionSearch cfg;
        cfg.t_max = 6;
        cfg.tstar_max = 2;
        cfg.max_outputs = 3;
        for (const auto& o : search_constructions(in, cfg).outputs) {
            EXPECT_TRUE(same_lattice(LatticeSpec::from_integer_basis(o.basis_rows), lattice_from_tuple(o.a)));
            ++checked;
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(Construction, MinorIdentitiesOnRandomInputs) {
    frob::test::Rng rng(41);
    int done = 0;
    while (done < 60) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(3, 5));
        Matrix<Rational> b(n - 1, n - 1);
        for (std::size_t i = 0; i < n - 1; ++i)
            for (std::size_t j = 0; j < n - 1; ++j) b(i, j) = rng.rational(-6, 6, 12);
        if (determinant(b) == 0) continue;
        std::vector<Rational> alpha;
        for (std::size_t i = 0; i < n - 1; ++i) alpha.push_back(rng.positive(12, 12));
        std::sort(alpha.begin(), alpha.end());
        if (alpha.back() > 1) continue;
        auto in = make_construction_input(LatticeSpec(b), alpha);
        std::vector<Integer> ts;
        for (std::size_t i = 0; i < n - 1; ++i) ts.emplace_back(rng.uniform(0, 5));
        auto pm = build_parametric_matrix(in, ts);
        auto ms = compute_minors(pm, in);
        auto bm = unperturbed_matrix(in);
        const Rational det = in.lattice.det_abs();
        for (std::size_t i = 0; i < n; ++i) {
            Rational bi = determinant(bm.without_column(i));  // Gaussian, independent of cofactor expansion
            EXPECT_EQ(Rational(ms.M[i].coefficient(n - 1)), Rational(pow(in.d, n - 1)) * bi);
            if (i + 1 < n) EXPECT_EQ(abs(bi), alpha[i] * det);
            else EXPECT_EQ(abs(bi), det);
        }
        EXPECT_TRUE(verify_minor_identities(ms, in).all());
        ++done;
    }
}

TEST(Construction, AsymptoticEnvelopes) {
    auto in = worked_input();
    ConstructionSearch cfg;
    cfg.t_max = 300;
    cfg.max_outputs = 1000;
    auto res = search_constructions(in, cfg, std::vector<Integer>{1, 2});
    ASSERT_GE(res.outputs.size(), 3u);
    auto rep = verify_asymptotics(res.outputs, in);
    EXPECT_TRUE(rep.pass());
    // a_N(t) / (det L d^2 t^2) decreases toward 1.
    for (std::size_t i = 1; i < res.outputs.size(); ++i) {
        EXPECT_LT(res.outputs[i].aN_leading_ratio, res.outputs[i - 1].aN_leading_ratio);
        EXPECT_GT(res.outputs[i].aN_leading_ratio, 1);
    }
    std::vector<ConstructionOutput> two(res.outputs.begin(), res.outputs.begin() + 2);
    EXPECT_THROW(verify_asymptotics(two, in), Error);
}

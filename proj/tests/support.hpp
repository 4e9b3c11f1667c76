#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "frob/frob.hpp"

namespace frob::test {

/// Largest integer not representable as a non-negative combination, by a
/// direct sieve up to the Schur bound (a_1 - 1)(a_N - 1).
inline long brute_frobenius(const std::vector<long>& a) {
    long limit = (a.front() - 1) * (a.back() - 1) + a.back();
    std::vector<char> rep(static_cast<std::size_t>(limit + 1), 0);
    rep[0] = 1;
    for (long n = 1; n <= limit; ++n)
        for (long x : a)
            if (x <= n && rep[static_cast<std::size_t>(n - x)]) {
                rep[static_cast<std::size_t>(n)] = 1;
                break;
            }
    long g = -1;
    for (long n = 0; n <= limit; ++n)
        if (!rep[static_cast<std::size_t>(n)]) g = n;
    return g;
}

inline FrobeniusInstance make_instance(const std::vector<long>& a) {
    std::vector<Integer> z;
    for (long x : a) z.emplace_back(x);
    return validate_instance(z);
}

/// Independent 2D point test: enumerate lattice coefficients in a window
/// bounded by the basis coordinates of the body's vertices.
inline bool brute_point_covered(const SimplexSpec& s, const Rational& sigma, const LatticeSpec& l, const Point& p,
                                const Point& shift = {0, 0}) {
    const auto& B = l.basis();
    const auto& w = s.weights();
    const Rational qx = p.x - shift.x, qy = p.y - shift.y;
    std::vector<std::vector<Rational>> verts = {{qx, qy}, {qx - sigma / w[0], qy}, {qx, qy - sigma / w[1]}};
    Rational lo0 = 0, hi0 = 0, lo1 = 0, hi1 = 0;
    bool first = true;
    for (const auto& v : verts) {
        auto c = solve_left(B, v);
        if (first || c[0] < lo0) lo0 = c[0];
        if (first || c[0] > hi0) hi0 = c[0];
        if (first || c[1] < lo1) lo1 = c[1];
        if (first || c[1] > hi1) hi1 = c[1];
        first = false;
    }
    for (Integer i = floor(lo0) - 1; i <= ceil(hi0) + 1; ++i)
        for (Integer j = floor(lo1) - 1; j <= ceil(hi1) + 1; ++j) {
            Rational x = qx - (i * B(0, 0) + j * B(1, 0));
            Rational y = qy - (i * B(0, 1) + j * B(1, 1));
            if (x >= 0 && y >= 0 && w[0] * x + w[1] * y <= sigma) return true;
        }
    return false;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
    Rational rational(long num_lo, long num_hi, long den_max) {
        return make_rational(Integer(uniform(num_lo, num_hi)), Integer(uniform(1, den_max)));
    }
    Rational positive(long num_hi, long den_max) { return rational(1, num_hi, den_max); }
    std::mt19937_64& engine() { return g_; }

private:
    std::mt19937_64 g_;
};

inline LatticeSpec random_lattice_2d(Rng& rng) {
    while (true) {
        Matrix<Rational> b{{rng.rational(-6, 6, 5), rng.rational(-6, 6, 5)}, {rng.rational(-6, 6, 5), rng.rational(-6, 6, 5)}};
        if (determinant(b) != 0) return LatticeSpec(std::move(b));
    }
}

inline SimplexSpec random_simplex_2d(Rng& rng) { return SimplexSpec({rng.positive(5, 4), rng.positive(5, 4)}); }

/// A random valid tuple of length n with a_N <= a_max.
inline FrobeniusInstance random_instance(Rng& rng, std::size_t n, long a_max) {
    while (true) {
        std::vector<long> v;
        while (v.size() < n) {
            long x = rng.uniform(2, a_max);
            if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
        }
        std::sort(v.begin(), v.end());
        long g = 0;
        for (long x : v) g = std::gcd(g, x);
        if (g == 1) return make_instance(v);
    }
}

inline Matrix<Integer> random_unimodular(Rng& rng, std::size_t n) {
    Matrix<Integer> u = Matrix<Integer>::identity(n);
    for (int step = 0; step < 8; ++step) {
        std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        if (i == j) {
            u.swap_rows(i, (i + 1) % n);
            continue;
        }
        Integer k(rng.uniform(-3, 3));
        for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
    }
    return u;
}

inline Matrix<Integer> multiply(const Matrix<Integer>& a, const Matrix<Integer>& b) {
    Matrix<Integer> m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t k = 0; k < a.cols(); ++k) m(i, j) += a(i, k) * b(k, j);
    return m;
}

struct PropertyResult {
    std::string name;
    std::size_t cases = 0;
    std::vector<std::string> failures{};
    bool ok() const { return failures.empty(); }
};

/// sigma1 < sigma2 and a covering at sigma1 implies a covering at sigma2.
inline PropertyResult property_monotonicity(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"covering monotone in sigma"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        auto s = random_simplex_2d(rng);
        auto l = random_lattice_2d(rng);
        Rational s1 = rng.positive(40, 7), s2 = s1 + rng.positive(20, 7);
        bool v1 = is_covering_2d(s, s1, l).covered, v2 = is_covering_2d(s, s2, l).covered;
        ++r.cases;
        if (v1 && !v2) r.failures.push_back("sigma " + to_string(s1) + " < " + to_string(s2) + " on " + to_string(l.basis()));
    }
    return r;
}

/// Every reported witness is uncovered under the independent point test and
/// the verdict agrees with the area argument: covered only if sigma^2 vol(S) >= det L.
inline PropertyResult property_witness(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"witness validity"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        auto s = random_simplex_2d(rng);
        auto l = random_lattice_2d(rng);
        Rational sigma = rng.positive(40, 7);
        auto v = is_covering_2d(s, sigma, l);
        ++r.cases;
        if (v.covered && sigma * sigma * s.volume() < l.det_abs()) r.failures.push_back("covered below area bound");
        if (!v.covered) {
            if (!v.witness) r.failures.push_back("missing witness");
            else if (brute_point_covered(s, sigma, l, *v.witness)) r.failures.push_back("witness is covered");
        }
    }
    return r;
}

/// Verdicts are unchanged when the body is translated by -sigma*p with
/// p = (1/6, 1/6), and when the lattice basis is changed unimodularly.
inline PropertyResult property_translation(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"translation and basis invariance"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        auto s = random_simplex_2d(rng);
        auto l = random_lattice_2d(rng);
        Rational sigma = rng.positive(40, 7);
        CoveringOptions opt;
        opt.shift = Point{-sigma / 6, -sigma / 6};
        bool base = is_covering_2d(s, sigma, l).covered;
        bool shifted = is_covering_2d(s, sigma, l, opt).covered;
        auto u = random_unimodular(rng, 2);
        Matrix<Rational> b(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t k = 0; k < 2; ++k) b(i, j) += Rational(u(i, k)) * l.basis()(k, j);
        bool rebased = is_covering_2d(s, sigma, LatticeSpec(b)).covered;
        ++r.cases;
        if (base != shifted || base != rebased) r.failures.push_back("verdict changed on " + to_string(l.basis()));
    }
    return r;
}

/// HNF is idempotent and invariant under unimodular row operations.
inline PropertyResult property_hnf(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"HNF idempotence"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
        Matrix<Integer> m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-9, 9);
        if (determinant(m) == 0) continue;
        ++r.cases;
        auto h = hermite_normal_form(m);
        if (!(hermite_normal_form(h) == h)) r.failures.push_back("not idempotent: " + to_string(m));
        if (!(hermite_normal_form(multiply(random_unimodular(rng, n), m)) == h))
            r.failures.push_back("basis dependent: " + to_string(m));
    }
    return r;
}

/// x in L_a iff sum_{i<N} a_i x_i = 0 mod a_N, and |det L_a| = a_N.
inline PropertyResult property_membership(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"membership congruence"};
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(3, 5));
        auto inst = random_instance(rng, n, 80);
        auto l = lattice_from_tuple(inst);
        ++r.cases;
        if (l.det_abs() != Rational(inst.largest())) r.failures.push_back("det mismatch for " + inst.str());
        for (int k = 0; k < 20; ++k) {
            std::vector<Rational> x;
            Integer s = 0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                Integer xi(rng.uniform(-200, 200));
                x.emplace_back(xi);
                s += inst[i] * xi;
            }
            // Force roughly half of the points into the lattice.
            if (k % 2 == 0) {
                Integer fix = mod(-s, inst.largest());
                // a_1 is invertible mod a_N only when coprime; otherwise keep the random point.
                Integer inv;
                if (mpz_invert(inv.get_mpz_t(), inst[0].get_mpz_t(), inst.largest().get_mpz_t()) != 0) {
                    Integer step = mod(fix * inv, inst.largest());
                    x[0] += Rational(step);
                    s += inst[0] * step;
                }
            }
            bool expected = mod(s, inst.largest()) == 0;
            if (membership(l, x) != expected) r.failures.push_back("membership mismatch for " + inst.str());
        }
    }
    return r;
}

inline std::vector<PropertyResult> property_suite(std::uint64_t seed) {
    return {property_monotonicity(seed, 150), property_witness(seed + 1, 150), property_translation(seed + 2, 150),
            property_hnf(seed + 3, 300), property_membership(seed + 4, 100)};
}

}  // namespace frob::test

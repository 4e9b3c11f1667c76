#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frob/arith.hpp"
#include "frob/error.hpp"
#include "frob/frobenius.hpp"
#include "frob/interval.hpp"
#include "frob/matrix.hpp"

namespace frob {

/// Row-style Hermite normal form of the lattice generated by the rows of
/// `generators` (m x k, full column rank k). The result is k x k, upper
/// triangular with positive pivots and entries above each pivot in [0, pivot).
inline Matrix<Integer> hermite_normal_form(const Matrix<Integer>& generators) {
    Matrix<Integer> h = generators;
    const std::size_t m = h.rows();
    const std::size_t k = h.cols();
    auto row_sub = [&](std::size_t dst, std::size_t src, const Integer& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < k; ++j) h(dst, j) -= q * h(src, j);
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < k; ++c) {
        if (r >= m) throw Error(Errc::RankDeficient, "generators do not span a full-rank lattice");
        while (true) {
            // Pivot: smallest non-zero |entry| in column c at or below row r.
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (h(i, c) != 0 && (best == m || abs(h(i, c)) < abs(h(best, c)))) best = i;
            if (best == m) throw Error(Errc::RankDeficient, "generators do not span a full-rank lattice");
            h.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h(i, c) == 0) continue;
                row_sub(i, r, floor_div(h(i, c), h(r, c)));
                if (h(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(r, c) < 0)
            for (std::size_t j = 0; j < k; ++j) h(r, j) = -h(r, j);
        for (std::size_t i = 0; i < r; ++i) row_sub(i, r, floor_div(h(i, c), h(r, c)));
        ++r;
    }
    Matrix<Integer> out(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out(i, j) = h(i, j);
    return out;
}

/// Full-rank lattice given by rational basis rows, with cached |det|.
class LatticeSpec {
public:
    LatticeSpec() = default;

    /// Keeps the basis as given; throws RankDeficient if singular.
    explicit LatticeSpec(Matrix<Rational> basis) : basis_(std::move(basis)) {
        if (basis_.rows() != basis_.cols() || basis_.rows() == 0)
            throw Error(Errc::DimensionMismatch, "basis must be square and non-empty");
        det_abs_ = abs(determinant(basis_));
        if (det_abs_ == 0) throw Error(Errc::RankDeficient, "singular basis");
    }

    static LatticeSpec from_integer_basis(const Matrix<Integer>& b) {
        Matrix<Rational> q(b.rows(), b.cols());
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) q(i, j) = Rational(b(i, j));
        return LatticeSpec(std::move(q));
    }

    std::size_t dim() const { return basis_.rows(); }
    const Matrix<Rational>& basis() const { return basis_; }
    const Rational& det_abs() const { return det_abs_; }

    bool is_integral() const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (!is_integer(basis_(i, j))) return false;
        return true;
    }

    /// Least common denominator of all basis entries.
    Integer denominator() const {
        Integer d = 1;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) d = lcm(d, basis_(i, j).get_den());
        return d;
    }

    /// Same lattice with its basis in Hermite normal form (rational lattices
    /// are cleared of denominators, reduced, and scaled back).
    LatticeSpec canonical() const {
        const Integer d = denominator();
        Matrix<Integer> z(dim(), dim());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) z(i, j) = Rational(basis_(i, j) * d).get_num();
        Matrix<Integer> h = hermite_normal_form(z);
        Matrix<Rational> q(dim(), dim());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) q(i, j) = make_rational(h(i, j), d);
        return LatticeSpec(std::move(q));
    }

    friend bool same_lattice(const LatticeSpec& a, const LatticeSpec& b) {
        return a.dim() == b.dim() && a.canonical().basis() == b.canonical().basis();
    }

private:
    Matrix<Rational> basis_;
    Rational det_abs_;
};

/// Unimodular column reduction of the row (a_1 ... a_N): returns an N x (N-1)
/// matrix whose columns span the integer kernel.
inline Matrix<Integer> integer_kernel_of_row(std::span<const Integer> a) {
    const std::size_t n = a.size();
    std::vector<Integer> v(a.begin(), a.end());
    Matrix<Integer> u = Matrix<Integer>::identity(n);
    auto col_sub = [&](std::size_t dst, std::size_t src, const Integer& q) {
        v[dst] -= q * v[src];
        for (std::size_t i = 0; i < n; ++i) u(i, dst) -= q * u(i, src);
    };
    std::size_t pivot = 0;
    while (true) {
        pivot = n;
        for (std::size_t j = 0; j < n; ++j)
            if (v[j] != 0 && (pivot == n || abs(v[j]) < abs(v[pivot]))) pivot = j;
        bool done = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == pivot || v[j] == 0) continue;
            col_sub(j, pivot, floor_div(v[j], v[pivot]));
            if (v[j] != 0) done = false;
        }
        if (done) break;
    }
    Matrix<Integer> ker(n, n - 1);
    for (std::size_t j = 0, c = 0; j < n; ++j) {
        if (j == pivot) continue;
        for (std::size_t i = 0; i < n; ++i) ker(i, c) = u(i, j);
        ++c;
    }
    return ker;
}

/// The lattice {x in Z^{N-1} : sum a_i x_i = 0 mod a_N}, in Hermite normal form.
inline LatticeSpec lattice_from_tuple(const FrobeniusInstance& inst) {
    const std::size_t n = inst.size();
    Matrix<Integer> ker = integer_kernel_of_row(inst.values());
    // Drop the last coordinate; the projection is injective on the kernel.
    Matrix<Integer> gens(n - 1, n - 1);
    for (std::size_t c = 0; c < n - 1; ++c)
        for (std::size_t i = 0; i < n - 1; ++i) gens(c, i) = ker(i, c);
    return LatticeSpec::from_integer_basis(hermite_normal_form(gens));
}

/// True iff x is an integer combination of the basis rows.
inline bool membership(const LatticeSpec& lattice, const std::vector<Rational>& x) {
    if (x.size() != lattice.dim()) throw Error(Errc::DimensionMismatch, "point dimension differs from lattice");
    for (const auto& c : solve_left(lattice.basis(), x))
        if (!is_integer(c)) return false;
    return true;
}

inline LatticeSpec scale_lattice(const LatticeSpec& lattice, const Rational& s) {
    if (s <= 0) throw Error(Errc::NonPositiveScale, "scale must be positive");
    Matrix<Rational> b = lattice.basis();
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= s;
    return LatticeSpec(std::move(b));
}

/// Positive real scalar radicand^(1/root), kept symbolic.
struct RadicalScalar {
    Rational radicand = 1;
    unsigned long root = 1;

    Interval value() const { return rational_root(radicand, root); }
};

/// A rational lattice multiplied by a possibly irrational positive scalar.
struct ScaledLattice {
    LatticeSpec base;
    RadicalScalar scale;

    /// |det| = radicand^(dim/root) * det(base); exact when root divides dim.
    std::optional<Rational> det_abs_exact() const {
        if (base.dim() % scale.root != 0) return std::nullopt;
        return pow(scale.radicand, base.dim() / scale.root) * base.det_abs();
    }
    Interval det_abs() const {
        if (auto e = det_abs_exact()) return Interval::from_rational(*e);
        Interval s = scale.value();
        Interval acc = Interval::from_rational(base.det_abs());
        for (std::size_t i = 0; i < base.dim(); ++i) acc = acc * s;
        return acc;
    }
};

inline ScaledLattice scale_lattice(const LatticeSpec& lattice, const RadicalScalar& s) {
    if (s.radicand <= 0 || s.root == 0) throw Error(Errc::NonPositiveScale, "scale must be positive");
    return ScaledLattice{lattice, s};
}

/// The lattice generated by e_j / (N-1): a covering lattice of the standard simplex.
inline LatticeSpec standard_covering_lattice(std::size_t n) {
    if (n < 3) throw Error(Errc::DimensionTooSmall, "standard covering lattice needs N >= 3");
    Matrix<Rational> b(n - 1, n - 1);
    for (std::size_t i = 0; i < n - 1; ++i) b(i, i) = Rational(1, static_cast<unsigned long>(n - 1));
    return LatticeSpec(std::move(b));
}

}  // namespace frob

#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "frob/arith.hpp"

namespace frob {

/// Univariate polynomial with coefficients in ascending degree order.
/// The zero polynomial has no coefficients and degree -1.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const T& constant) : c_{constant} { trim(); }  // NOLINT: implicit lift of scalars
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// c * t^k
    static Polynomial monomial(const T& c, std::size_t k) {
        std::vector<T> v(k + 1, T(0));
        v[k] = c;
        return Polynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coefficients() const { return c_; }
    T coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    template <class U>
    U evaluate(const U& t) const {
        U acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + U(*it);
        return acc;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(v));
    }
    Polynomial operator-() const {
        std::vector<T> v = c_;
        for (auto& x : v) x = -x;
        return Polynomial(std::move(v));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }

    std::vector<T> c_;
};

/// Lifts an integer polynomial to Q[t].
inline Polynomial<Rational> to_rational(const Polynomial<Integer>& p) {
    std::vector<Rational> v;
    for (const auto& c : p.coefficients()) v.emplace_back(c);
    return Polynomial<Rational>(std::move(v));
}

/// Euclidean division in Q[t]; returns (quotient, remainder).
inline std::pair<Polynomial<Rational>, Polynomial<Rational>> divmod(const Polynomial<Rational>& a,
                                                                    const Polynomial<Rational>& b) {
    if (b.is_zero()) throw Error(Errc::DimensionMismatch, "polynomial division by zero");
    std::vector<Rational> rem = a.coefficients();
    const int db = b.degree();
    std::vector<Rational> quot(rem.size() >= b.coefficients().size() ? rem.size() - b.coefficients().size() + 1 : 0);
    for (int k = static_cast<int>(rem.size()) - 1; k >= db; --k) {
        Rational f = rem[static_cast<std::size_t>(k)] / b.leading();
        if (f == 0) continue;
        quot[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coefficient(static_cast<std::size_t>(j));
    }
    return {Polynomial<Rational>(std::move(quot)), Polynomial<Rational>(std::move(rem))};
}

/// Monic gcd in Q[t]; gcd(0, 0) = 0.
inline Polynomial<Rational> gcd(Polynomial<Rational> a, Polynomial<Rational> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    Rational lead = a.leading();
    std::vector<Rational> v = a.coefficients();
    for (auto& x : v) x /= lead;
    return Polynomial<Rational>(std::move(v));
}

/// Human-readable form in the variable `var`, highest degree first.
template <class T>
std::string to_string(const Polynomial<T>& p, const std::string& var = "t") {
    if (p.is_zero()) return "0";
    std::string s;
    for (int k = p.degree(); k >= 0; --k) {
        T c = p.coefficient(static_cast<std::size_t>(k));
        if (c == T(0)) continue;
        bool neg = c < T(0);
        T mag = neg ? T(-c) : c;
        if (s.empty()) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        bool unit = mag == T(1);
        if (!unit || k == 0) s += to_string(mag);
        if (k >= 1) s += (unit ? "" : "*") + var;
        if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
}

}  // namespace frob

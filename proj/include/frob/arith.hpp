#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frob/error.hpp"

namespace frob {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer gcd_of(std::span<const Integer> xs) {
    Integer g = 0;
    for (const auto& x : xs) g = gcd(g, x);
    return g;
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

/// Floor division rounding toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Non-negative remainder of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer floor(const Rational& q) {
    return floor_div(q.get_num(), q.get_den());
}

inline Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
    return make_rational(pow(base.get_num(), e), pow(base.get_den(), e));
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline bool fits_u64(const Integer& a) {
    return a >= 0 && mpz_sizeinbase(a.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Integer& a) {
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, a.get_mpz_t());
    return v;
}

inline Integer from_u64(std::uint64_t v) {
    Integer r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

inline std::string to_string(const Integer& a) { return a.get_str(); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

inline Integer parse_integer(std::string_view text) {
    auto s = detail::trim(text);
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    if (!detail::all_digits(body)) throw Error(Errc::ParseError, "not an integer: '" + std::string(text) + "'");
    Integer r;
    std::string owned(s.front() == '+' ? s.substr(1) : s);
    r.set_str(owned, 10);
    return r;
}

/// Accepts "p", "p/q", and plain or exponent decimals ("0.25", "1e-6"),
/// converting decimals exactly.
inline Rational parse_rational(std::string_view text) {
    auto s = detail::trim(text);
    if (s.empty()) throw Error(Errc::ParseError, "empty rational");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(s.substr(0, slash));
        Integer den = parse_integer(s.substr(slash + 1));
        if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
        return make_rational(num, den);
    }
    bool negative = false;
    std::string_view body = s;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        exponent = parse_integer(body.substr(e + 1)).get_si();
        body = body.substr(0, e);
    }
    std::string digits;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view ip = body.substr(0, dot);
        std::string_view fp = body.substr(dot + 1);
        if ((!ip.empty() && !detail::all_digits(ip)) || (!fp.empty() && !detail::all_digits(fp)) ||
            (ip.empty() && fp.empty()))
            throw Error(Errc::ParseError, "not a number: '" + std::string(text) + "'");
        digits = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
    } else {
        if (!detail::all_digits(body)) throw Error(Errc::ParseError, "not a number: '" + std::string(text) + "'");
        digits = std::string(body);
    }
    Integer mant;
    mant.set_str(digits, 10);
    if (negative) mant = -mant;
    Rational q = exponent >= 0 ? Rational(mant * pow(Integer(10), static_cast<unsigned long>(exponent)))
                               : make_rational(mant, pow(Integer(10), static_cast<unsigned long>(-exponent)));
    return q;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

inline std::vector<Integer> parse_integer_list(std::string_view s) {
    std::vector<Integer> out;
    for (auto part : split(s, ',')) out.push_back(parse_integer(part));
    return out;
}

inline std::vector<Rational> parse_rational_list(std::string_view s) {
    std::vector<Rational> out;
    for (auto part : split(s, ',')) out.push_back(parse_rational(part));
    return out;
}

/// Best rational approximation of x with denominator at most max_den
/// (continued-fraction convergents plus the final semiconvergent).
inline Rational best_rational_approximation(const Rational& x, const Integer& max_den) {
    if (max_den < 1) throw Error(Errc::ParseError, "denominator limit must be positive");
    if (x.get_den() <= max_den) return x;
    // Convergents h/k of the continued fraction of x.
    Integer h_prev = 1, k_prev = 0;
    Integer h = floor(x), k = 1;
    Rational rem = x - h;
    while (rem != 0) {
        Rational inv = 1 / rem;
        Integer a = floor(inv);
        Integer h_next = a * h + h_prev;
        Integer k_next = a * k + k_prev;
        if (k_next > max_den) {
            Integer m = floor_div(max_den - k_prev, k);
            Rational semi = make_rational(m * h + h_prev, m * k + k_prev);
            Rational conv = make_rational(h, k);
            return abs(semi - x) < abs(conv - x) ? semi : conv;
        }
        h_prev = h; k_prev = k;
        h = h_next; k = k_next;
        rem = inv - a;
    }
    return make_rational(h, k);
}

inline Rational rational_from_double(double v) {
    Rational q(v);
    q.canonicalize();
    return q;
}

}  // namespace frob

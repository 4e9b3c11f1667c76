#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "frob/arith.hpp"

namespace frob {

/// Working precision of certified reals, in bits.
inline constexpr mpfr_prec_t kRealPrecision = 128;

namespace detail {

class BigFloat {
public:
    BigFloat() { mpfr_init2(v_, kRealPrecision); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, kRealPrecision); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept : BigFloat() { mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

}  // namespace detail

/// Closed interval [lo, hi] of reals with outward-rounded endpoints.
/// Every operation returns an interval guaranteed to contain the exact result.
class Interval {
public:
    Interval() = default;

    static Interval from_rational(const Rational& q) {
        Interval r;
        mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static Interval from_integer(const Integer& z) { return from_rational(Rational(z)); }

    static Interval sqrt3() { return root(from_integer(3), 2); }
    static Interval e() {
        Interval r;
        detail::BigFloat one;
        mpfr_set_ui(one.get(), 1, MPFR_RNDN);
        mpfr_exp(r.lo_.get(), one.get(), MPFR_RNDD);
        mpfr_exp(r.hi_.get(), one.get(), MPFR_RNDU);
        return r;
    }

    /// k-th root of a non-negative interval.
    static Interval root(const Interval& x, unsigned long k) {
        Interval r;
        if (mpfr_sgn(x.lo_.get()) < 0) throw Error(Errc::NonPositiveScale, "root of a possibly negative interval");
        mpfr_rootn_ui(r.lo_.get(), x.lo_.get(), k, MPFR_RNDD);
        mpfr_rootn_ui(r.hi_.get(), x.hi_.get(), k, MPFR_RNDU);
        return r;
    }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r;
        mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r;
        mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        return combine(a, b, [](mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
            mpfr_mul(out, x, y, rnd);
        });
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0)
            throw Error(Errc::DimensionMismatch, "interval division by an interval containing zero");
        return combine(a, b, [](mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
            mpfr_div(out, x, y, rnd);
        });
    }

    double lo() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
    double hi() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
    double mid() const {
        detail::BigFloat m;
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return mpfr_get_d(m.get(), MPFR_RNDN);
    }
    double width() const {
        detail::BigFloat w;
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return mpfr_get_d(w.get(), MPFR_RNDU);
    }

    /// Certified strict comparisons: true only when every point of a lies
    /// below (above) every point of b.
    bool certainly_less(const Interval& b) const { return mpfr_less_p(hi_.get(), b.lo_.get()) != 0; }
    bool certainly_greater(const Interval& b) const { return b.certainly_less(*this); }
    bool contains(const Rational& q) const {
        return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
    }
    bool overlaps(const Interval& b) const {
        return mpfr_lessequal_p(lo_.get(), b.hi_.get()) && mpfr_lessequal_p(b.lo_.get(), hi_.get());
    }

    /// Lower endpoint as an exact rational (useful for certified bounds).
    Rational lo_rational() const { return endpoint_rational(lo_); }
    Rational hi_rational() const { return endpoint_rational(hi_); }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    std::string str(int digits = 12) const {
        detail::BigFloat m;
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, m.get());
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

private:
    template <class Op>
    static Interval combine(const Interval& a, const Interval& b, Op op) {
        detail::BigFloat c[8];
        mpfr_srcptr as[2] = {a.lo_.get(), a.hi_.get()};
        mpfr_srcptr bs[2] = {b.lo_.get(), b.hi_.get()};
        int n = 0;
        for (auto x : as)
            for (auto y : bs) {
                op(c[n++].get(), x, y, MPFR_RNDD);
                op(c[n++].get(), x, y, MPFR_RNDU);
            }
        Interval r;
        mpfr_set(r.lo_.get(), c[0].get(), MPFR_RNDN);
        mpfr_set(r.hi_.get(), c[0].get(), MPFR_RNDN);
        for (int i = 1; i < n; ++i) {
            mpfr_min(r.lo_.get(), r.lo_.get(), c[i].get(), MPFR_RNDN);
            mpfr_max(r.hi_.get(), r.hi_.get(), c[i].get(), MPFR_RNDN);
        }
        return r;
    }

    static Rational endpoint_rational(const detail::BigFloat& x) {
        Integer mant;
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x.get());
        Rational r(mant);
        if (e >= 0) {
            mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
        } else {
            mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
        }
        return r;
    }

    detail::BigFloat lo_;
    detail::BigFloat hi_;
};

inline Interval operator+(const Interval& a, const Rational& b) { return a + Interval::from_rational(b); }
inline Interval operator-(const Interval& a, const Rational& b) { return a - Interval::from_rational(b); }
inline Interval operator*(const Interval& a, const Rational& b) { return a * Interval::from_rational(b); }
inline Interval operator/(const Interval& a, const Rational& b) { return a / Interval::from_rational(b); }

/// q^(1/k) for a non-negative rational q.
inline Interval rational_root(const Rational& q, unsigned long k) {
    return Interval::root(Interval::from_rational(q), k);
}

}  // namespace frob

#pragma once

#include <mpfr.h>

#include <algorithm>
#include <utility>

#include "hirank/arith/errors.hpp"
#include "hirank/arith/rational.hpp"

namespace hirank {

/* Closed interval [lo, hi] of MPFR floats.  Every operation rounds lo down
 * and hi up, so the exact result of the real operation on any members of
 * the operands lies in the result.
 */
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(const Rational& q, mpfr_prec_t prec) : Interval(prec) {
        mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
    }
    Interval(const Integer& z, mpfr_prec_t prec) : Interval(prec) {
        mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
    }
    Interval(double lo, double hi, mpfr_prec_t prec) : Interval(prec) {
        mpfr_set_d(lo_, lo, MPFR_RNDD);
        mpfr_set_d(hi_, hi, MPFR_RNDU);
    }
    Interval(const Interval& o) : Interval(o.precision()) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept : Interval(o.precision()) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(const Interval& o) {
        if (this != &o) {
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    Interval& operator=(Interval&& o) noexcept {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
    [[nodiscard]] double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    [[nodiscard]] double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    [[nodiscard]] double mid() const {
        Interval m(*this);
        mpfr_add(m.lo_, lo_, hi_, MPFR_RNDN);
        return mpfr_get_d(m.lo_, MPFR_RNDN) / 2;
    }
    /// Upper bound on hi - lo.
    [[nodiscard]] double width() const {
        Interval w(precision());
        mpfr_sub(w.hi_, hi_, lo_, MPFR_RNDU);
        return mpfr_get_d(w.hi_, MPFR_RNDU);
    }
    [[nodiscard]] bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    [[nodiscard]] bool positive() const { return mpfr_sgn(lo_) > 0; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(a.precision());
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(a.precision());
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a) {
        Interval r(a.precision());
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        return a.combine(b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) { mpfr_mul(r, x, y, rnd); });
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw DivisionByZero("interval division by an interval containing 0");
        return a.combine(b, [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) { mpfr_div(r, x, y, rnd); });
    }
    /// Exact scaling by 2^e.
    [[nodiscard]] Interval ldexp(long e) const {
        Interval r(*this);
        mpfr_mul_2si(r.lo_, lo_, e, MPFR_RNDD);
        mpfr_mul_2si(r.hi_, hi_, e, MPFR_RNDU);
        return r;
    }
    /// Binary exponent of the larger endpoint magnitude (0 for [0, 0]).
    [[nodiscard]] long magnitude_exponent() const {
        const bool zh = mpfr_zero_p(hi_), zl = mpfr_zero_p(lo_);
        if (zh && zl) return 0;
        if (zh) return static_cast<long>(mpfr_get_exp(lo_));
        if (zl) return static_cast<long>(mpfr_get_exp(hi_));
        return std::max(static_cast<long>(mpfr_get_exp(hi_)), static_cast<long>(mpfr_get_exp(lo_)));
    }

    friend Interval abs(const Interval& a) {
        Interval r(a.precision());
        if (mpfr_sgn(a.lo_) >= 0) return a;
        if (mpfr_sgn(a.hi_) <= 0) return -a;
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval max(const Interval& a, const Interval& b) {
        Interval r(a.precision());
        mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval log(const Interval& a) {
        if (!a.positive()) throw InvalidArgument("log of an interval not bounded away from 0");
        Interval r(a.precision());
        mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }
    /// Hull of a and b.
    friend Interval hull(const Interval& a, const Interval& b) {
        Interval r(a.precision());
        mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

private:
    template <typename Op>
    Interval combine(const Interval& b, Op op) const {
        Interval r(precision());
        mpfr_t t;
        mpfr_init2(t, precision());
        mpfr_srcptr xs[2] = {lo_, hi_};
        mpfr_srcptr ys[2] = {b.lo_, b.hi_};
        bool first = true;
        for (auto x : xs)
            for (auto y : ys) {
                op(t, x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
                op(t, x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return r;
    }

    mpfr_t lo_, hi_;
};

}  // namespace hirank

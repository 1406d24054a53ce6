#pragma once

#include <mpfr.h>

#include <utility>

#include "hirank/arith/rational.hpp"

namespace hirank {

/* Minimal RAII handle over an MPFR float with round-to-nearest
 * arithmetic.  Precision is fixed at construction; results take the
 * precision of the left operand.
 */
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Integer& z, mpfr_prec_t prec) : Real(prec) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
    Real(const Rational& q, mpfr_prec_t prec) : Real(prec) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    Real(double d, mpfr_prec_t prec) : Real(prec) { mpfr_set_d(v_, d, MPFR_RNDN); }
    Real(const Real& o) : Real(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept : Real(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(a.precision());
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(a.precision());
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(a.precision());
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(a.precision());
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

    friend Real abs(const Real& a) {
        Real r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real log(const Real& a) {
        Real r(a.precision());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }

private:
    mpfr_t v_;
};

}  // namespace hirank

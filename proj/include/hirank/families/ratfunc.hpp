#pragma once

#include <optional>
#include <string>

#include "hirank/arith/poly.hpp"

namespace hirank {

/// num/den in lowest terms with den monic.
class RatFunc {
public:
    RatFunc() : den_{Rational(1)} {}
    RatFunc(PolyQ num) : num_(std::move(num)), den_{Rational(1)} {}  // NOLINT: polynomials are rational functions
    RatFunc(PolyQ num, PolyQ den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        normalize();
    }

    [[nodiscard]] const PolyQ& num() const { return num_; }
    [[nodiscard]] const PolyQ& den() const { return den_; }
    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
    [[nodiscard]] bool is_polynomial() const { return den_.degree() == 0; }

    /// Value at t, or nullopt at a pole.
    [[nodiscard]] std::optional<Rational> operator()(const Rational& t) const {
        Rational d = den_(t);
        if (d == 0) return std::nullopt;
        return num_(t) / d;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RatFunc operator-(const RatFunc& a) { return {-a.num_, a.den_}; }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZero("rational function division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = PolyQ{Rational(1)};
            return;
        }
        PolyQ g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divrem(num_, g).first;
            den_ = divrem(den_, g).first;
        }
        Rational lc = den_.lead();
        if (lc != 1) {
            Rational inv = 1 / lc;
            num_ *= inv;
            den_ *= inv;
        }
    }

    PolyQ num_, den_;
};

inline std::string to_string(const RatFunc& f, const std::string& var = "T") {
    if (f.is_polynomial()) return to_string(f.num(), var);
    return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

/// Square root in Q(T) if f is a square there.
inline std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f) {
    if (f.is_zero()) return RatFunc{};
    auto s = poly_sqrt(f.num() * f.den());
    if (!s) return std::nullopt;
    return RatFunc(*s, f.den());
}

}  // namespace hirank

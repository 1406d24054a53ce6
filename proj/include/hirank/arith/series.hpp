#pragma once

#include <cstddef>
#include <vector>

#include "hirank/arith/errors.hpp"
#include "hirank/arith/poly.hpp"

namespace hirank {

/* Truncated power series sum_{i < order} c_i u^i with exact rational
 * coefficients.  Used with u = 1/X for expansions at infinity.
 */
struct PowerSeries {
    std::vector<Rational> c;  // size == order

    explicit PowerSeries(std::size_t order = 0) : c(order, Rational(0)) {}
    [[nodiscard]] std::size_t order() const { return c.size(); }

    [[nodiscard]] PowerSeries truncated(std::size_t n) const {
        PowerSeries r(n);
        for (std::size_t i = 0; i < n && i < c.size(); ++i) r.c[i] = c[i];
        return r;
    }
};

inline PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

inline PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

inline PowerSeries operator*(const Rational& s, PowerSeries a) {
    for (auto& x : a.c) x *= s;
    return a;
}

/// 1/a by Newton iteration y <- y(2 - a y); requires a_0 != 0.
inline PowerSeries series_inverse(const PowerSeries& a) {
    if (a.order() == 0) return a;
    if (a.c[0] == 0) throw DivisionByZero("series with zero constant term");
    PowerSeries y(1);
    y.c[0] = 1 / a.c[0];
    std::size_t prec = 1;
    while (prec < a.order()) {
        prec = std::min(2 * prec, a.order());
        PowerSeries yp = y.truncated(prec);
        PowerSeries ay = a.truncated(prec) * yp;
        PowerSeries two(prec);
        two.c[0] = 2;
        y = yp * (two - ay);
    }
    return y;
}

/// (1 + a_1 u + ...)^{1/3} by Newton iteration y <- (2y + a/y^2)/3; a_0 must be 1.
inline PowerSeries series_cube_root_unit(const PowerSeries& a) {
    if (a.order() == 0) return a;
    if (a.c[0] != 1) throw InvalidArgument("cube root needs constant term 1");
    PowerSeries y(1);
    y.c[0] = 1;
    std::size_t prec = 1;
    const Rational third(1, 3);
    while (prec < a.order()) {
        prec = std::min(2 * prec, a.order());
        PowerSeries yp = y.truncated(prec);
        PowerSeries q = a.truncated(prec) * series_inverse(yp * yp);
        y = third * (yp + yp + q);
    }
    return y;
}

/* R is the polynomial part and c the X^{-1} coefficient of the Laurent
 * expansion of f^{1/3} at infinity.
 */
struct PrincipalPart {
    PolyQ R;
    Rational c;
    /// expansion coefficients s_0, s_1, ... with f^{1/3} = sum s_j X^{k-j}
    std::vector<Rational> expansion;
};

/* f monic of degree 3k.  Writing u = 1/X, f = X^{3k} g(u) with g(0) = 1,
 * and f^{1/3} = X^k g(u)^{1/3}.  `terms` extra coefficients beyond X^{-1}
 * are kept in `expansion` (at least k + 2 coefficients are always
 * computed).
 */
inline PrincipalPart series_cube_root(const PolyQ& f, std::size_t terms = 1) {
    if (f.degree() <= 0 || f.degree() % 3 != 0) throw InvalidArgument("degree not divisible by 3");
    if (f.lead() != 1) throw InvalidArgument("polynomial must be monic");
    if (terms < 1) throw InvalidArgument("terms must be >= 1");
    const auto n = static_cast<std::size_t>(f.degree());
    const std::size_t k = n / 3;
    const std::size_t order = k + 1 + terms;
    PowerSeries g(order);
    for (std::size_t i = 0; i < order && i <= n; ++i) g.c[i] = f.coeff(n - i);
    PowerSeries s = series_cube_root_unit(g);
    std::vector<Rational> rc(k + 1);
    for (std::size_t j = 0; j <= k; ++j) rc[k - j] = s.c[j];
    return PrincipalPart{PolyQ(std::move(rc)), s.c[k + 1], s.c};
}

}  // namespace hirank

#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hirank/arith/errors.hpp"
#include "hirank/arith/rational.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(SingularCurve);
HIRANK_DOMAIN_ERROR(NotOnCurve);

struct CurveInvariants {
    Rational b2, b4, b6, b8, c4, c6, disc;
    std::optional<Rational> j;  // empty would mean infinite j; never for a valid curve
};

/// Invariants of the (possibly singular) Weierstrass coefficient tuple.
inline CurveInvariants weierstrass_invariants(const Rational& a1, const Rational& a2, const Rational& a3,
                                              const Rational& a4, const Rational& a6) {
    CurveInvariants iv;
    iv.b2 = a1 * a1 + 4 * a2;
    iv.b4 = 2 * a4 + a1 * a3;
    iv.b6 = a3 * a3 + 4 * a6;
    iv.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    iv.c4 = iv.b2 * iv.b2 - 24 * iv.b4;
    iv.c6 = -iv.b2 * iv.b2 * iv.b2 + 36 * iv.b2 * iv.b4 - 216 * iv.b6;
    iv.disc = -iv.b2 * iv.b2 * iv.b8 - 8 * iv.b4 * iv.b4 * iv.b4 - 27 * iv.b6 * iv.b6 + 9 * iv.b2 * iv.b4 * iv.b6;
    if (iv.disc != 0) iv.j = iv.c4 * iv.c4 * iv.c4 / iv.disc;
    return iv;
}

/* An affine point (x, y) or the point at infinity.  Construction does not
 * check membership on any curve; WeierstrassCurve::point does.
 */
class Point {
public:
    Point() = default;  // infinity
    Point(Rational x, Rational y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}
    static Point infinity() { return {}; }

    [[nodiscard]] bool is_infinity() const { return inf_; }
    [[nodiscard]] const Rational& x() const { return x_; }
    [[nodiscard]] const Rational& y() const { return y_; }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

private:
    bool inf_ = true;
    Rational x_, y_;
};

inline std::string to_string(const Point& p) {
    if (p.is_infinity()) return "O";
    return "(" + to_string(p.x()) + ", " + to_string(p.y()) + ")";
}

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q, nonsingular.
class WeierstrassCurve {
public:
    WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
        : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)},
          inv_(weierstrass_invariants(a_[0], a_[1], a_[2], a_[3], a_[4])) {
        if (inv_.disc == 0) throw SingularCurve("discriminant vanishes");
    }
    /// Short form y^2 = x^3 + a x + b.
    static WeierstrassCurve short_form(const Rational& a, const Rational& b) { return {0, 0, 0, a, b}; }

    [[nodiscard]] const Rational& a1() const { return a_[0]; }
    [[nodiscard]] const Rational& a2() const { return a_[1]; }
    [[nodiscard]] const Rational& a3() const { return a_[2]; }
    [[nodiscard]] const Rational& a4() const { return a_[3]; }
    [[nodiscard]] const Rational& a6() const { return a_[4]; }
    [[nodiscard]] const std::array<Rational, 5>& coefficients() const { return a_; }
    [[nodiscard]] const CurveInvariants& invariants() const { return inv_; }
    [[nodiscard]] const Rational& discriminant() const { return inv_.disc; }
    [[nodiscard]] const Rational& j_invariant() const { return *inv_.j; }

    friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) { return a.a_ == b.a_; }

    /// Left side minus right side of the equation at (x, y).
    [[nodiscard]] Rational equation(const Rational& x, const Rational& y) const {
        return y * y + a1() * x * y + a3() * y - (((x + a2()) * x + a4()) * x + a6());
    }

    [[nodiscard]] bool contains(const Point& p) const { return p.is_infinity() || equation(p.x(), p.y()) == 0; }

    [[nodiscard]] Point point(const Rational& x, const Rational& y) const {
        Point p(x, y);
        if (!contains(p)) throw NotOnCurve(to_string(p));
        return p;
    }

    /// Points with the given x-coordinate (zero, one or two of them).
    [[nodiscard]] std::vector<Point> lift_x(const Rational& x) const {
        // y^2 + (a1 x + a3) y - rhs = 0
        Rational b = a1() * x + a3();
        Rational rhs = ((x + a2()) * x + a4()) * x + a6();
        Rational d = b * b + 4 * rhs;
        auto s = exact_sqrt(d);
        if (!s) return {};
        Rational y1 = (-b + *s) / 2;
        if (*s == 0) return {Point(x, y1)};
        return {Point(x, y1), Point(x, Rational(-b - *s) / 2)};
    }

    [[nodiscard]] Point negate(const Point& p) const {
        if (p.is_infinity()) return p;
        return {p.x(), -p.y() - a1() * p.x() - a3()};
    }

    [[nodiscard]] Point add(const Point& p, const Point& q) const {
        if (p.is_infinity()) return q;
        if (q.is_infinity()) return p;
        Rational lambda, nu;
        if (p.x() == q.x()) {
            Rational ysum = p.y() + q.y() + a1() * q.x() + a3();
            if (ysum == 0) return Point::infinity();
            lambda = (3 * p.x() * p.x() + 2 * a2() * p.x() + a4() - a1() * p.y()) / (2 * p.y() + a1() * p.x() + a3());
            nu = (-p.x() * p.x() * p.x() + a4() * p.x() + 2 * a6() - a3() * p.y()) / (2 * p.y() + a1() * p.x() + a3());
        } else {
            lambda = (q.y() - p.y()) / (q.x() - p.x());
            nu = (p.y() * q.x() - q.y() * p.x()) / (q.x() - p.x());
        }
        Rational x3 = lambda * lambda + a1() * lambda - a2() - p.x() - q.x();
        Rational y3 = -(lambda + a1()) * x3 - nu - a3();
        return {x3, y3};
    }

    [[nodiscard]] Point sub(const Point& p, const Point& q) const { return add(p, negate(q)); }
    [[nodiscard]] Point dbl(const Point& p) const { return add(p, p); }

    /// n P by double-and-add.
    [[nodiscard]] Point mul(const Integer& n, const Point& p) const {
        if (n < 0) return negate(mul(Integer(-n), p));
        Point acc = Point::infinity();
        Point base = p;
        Integer e = n;
        while (e != 0) {
            if (mpz_odd_p(e.get_mpz_t())) acc = add(acc, base);
            e >>= 1;
            if (e != 0) base = dbl(base);
        }
        return acc;
    }
    [[nodiscard]] Point mul(long n, const Point& p) const { return mul(Integer(n), p); }

    /// Exact order of p if it is at most `cap`, nullopt otherwise.
    [[nodiscard]] std::optional<int> order(const Point& p, int cap = 12) const {
        Point q = p;
        for (int k = 1; k <= cap; ++k) {
            if (q.is_infinity()) return k;
            q = add(q, p);
        }
        return std::nullopt;
    }

private:
    std::array<Rational, 5> a_;
    CurveInvariants inv_;
};

/* Curve text format: `a1 a2 a3 a4 a6`, each an integer or p/q. */
inline WeierstrassCurve parse_curve(const std::string& line) {
    std::istringstream is(line);
    std::vector<Rational> a;
    std::string tok;
    while (is >> tok) a.push_back(parse_rational(tok));
    if (a.size() != 5) throw ParseError("curve line needs 5 coefficients, got " + std::to_string(a.size()));
    return {a[0], a[1], a[2], a[3], a[4]};
}

inline std::string format_curve(const WeierstrassCurve& e) {
    std::ostringstream os;
    for (std::size_t i = 0; i < 5; ++i) os << (i ? " " : "") << to_string(e.coefficients()[i]);
    return os.str();
}

/* Points file line: `x y` with rationals (p/q allowed); "O" for infinity. */
inline Point parse_point(const std::string& line) {
    std::istringstream is(line);
    std::string xs, ys;
    if (!(is >> xs)) throw ParseError("empty point line");
    if (xs == "O" || xs == "inf") return Point::infinity();
    if (!(is >> ys)) throw ParseError("point line needs x and y");
    return {parse_rational(xs), parse_rational(ys)};
}

/* Isomorphism (x, y) = (u^2 x' + r, u^3 y' + s u^2 x' + t) between models. */
struct Isomorphism {
    Rational u{1}, r{0}, s{0}, t{0};

    /// coefficients of the target model E' given the source E
    [[nodiscard]] WeierstrassCurve apply(const WeierstrassCurve& e) const {
        const auto& [a1, a2, a3, a4, a6] = e.coefficients();
        Rational a1p = (a1 + 2 * s) / u;
        Rational a2p = (a2 - s * a1 + 3 * r - s * s) / (u * u);
        Rational a3p = (a3 + r * a1 + 2 * t) / rational_pow(u, 3);
        Rational a4p = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / rational_pow(u, 4);
        Rational a6p = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / rational_pow(u, 6);
        return {a1p, a2p, a3p, a4p, a6p};
    }
    /// E-point to E'-point
    [[nodiscard]] Point forward(const Point& p) const {
        if (p.is_infinity()) return p;
        Rational xp = (p.x() - r) / (u * u);
        Rational yp = (p.y() - s * (p.x() - r) - t) / rational_pow(u, 3);
        return {xp, yp};
    }
    /// E'-point to E-point
    [[nodiscard]] Point backward(const Point& p) const {
        if (p.is_infinity()) return p;
        Rational x = u * u * p.x() + r;
        Rational y = rational_pow(u, 3) * p.y() + s * u * u * p.x() + t;
        return {x, y};
    }
};

/// A scaling (x, y) = (x'/u^2, y'/u^3) that makes every a_i integral.
inline Isomorphism integral_model_scaling(const WeierstrassCurve& e) {
    // need u^i a_i integral: take u = product over the denominators' primes, simplest choice lcm
    Integer u = 1;
    for (const auto& a : e.coefficients()) mpz_lcm(u.get_mpz_t(), u.get_mpz_t(), a.get_den_mpz_t());
    Isomorphism iso;
    iso.u = make_rational(Integer(1), u);
    return iso;
}

/* Isomorphism to y^2 = x^3 - 27 c4 x - 54 c6 (x' = 36x + 3 b2,
 * y' = 108 (2y + a1 x + a3)); integral when E is.
 */
inline Isomorphism short_model_isomorphism(const WeierstrassCurve& e) {
    Isomorphism iso;
    iso.u = Rational(1, 6);
    iso.r = -e.invariants().b2 / 12;
    iso.s = -e.a1() / 2;
    iso.t = (e.a1() * e.invariants().b2 / 12 - e.a3()) / 2;
    return iso;
}

}  // namespace hirank

#pragma once

#include <array>
#include <set>
#include <vector>

#include "hirank/arith/linalg.hpp"
#include "hirank/arith/poly.hpp"
#include "hirank/arith/series.hpp"
#include "hirank/curves/cubic.hpp"
#include "hirank/curves/ternary_form.hpp"
#include "hirank/curves/weierstrass.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(CoincidentX);
HIRANK_DOMAIN_ERROR(SingularResult);
HIRANK_DOMAIN_ERROR(QuinticNonzero);
HIRANK_DOMAIN_ERROR(NonUniqueDecomposition);
HIRANK_DOMAIN_ERROR(DegenerateConfiguration);

// ---------------------------------------------------------------------------
// Interpolation through three points

struct Interpolated {
    WeierstrassCurve curve;
    std::array<Point, 3> points;
};

/// The curve y^2 = x^3 + a2 x^2 + a4 x + a6 through three points with distinct x.
inline Interpolated interpolate3(const std::array<std::pair<Rational, Rational>, 3>& pts) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (pts[i].first == pts[j].first)
                throw CoincidentX("points " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " share x");
    linalg::RatMatrix m;
    linalg::RatVector rhs;
    for (const auto& [x, y] : pts) {
        m.push_back({x * x, x, Rational(1)});
        rhs.push_back(y * y - x * x * x);
    }
    auto sol = linalg::solve(m, rhs);  // Vandermonde with distinct nodes: always solvable
    try {
        WeierstrassCurve e(0, (*sol)[0], 0, (*sol)[1], (*sol)[2]);
        return {e, {e.point(pts[0].first, pts[0].second), e.point(pts[1].first, pts[1].second),
                     e.point(pts[2].first, pts[2].second)}};
    } catch (const SingularCurve&) {
        throw SingularResult("interpolated cubic has a repeated root");
    }
}

// ---------------------------------------------------------------------------
// Mestre's construction

/// X^{-1} coefficient of the expansion of prod (X - x_i)^{1/3} at infinity.
inline Rational mestre_quintic(const std::array<Rational, 12>& x) {
    return series_cube_root(from_roots({x.begin(), x.end()})).c;
}

/// lambda (a,a,a,b,b,b,c,c,c,d,d,d) + mu (b,c,d,a,c,d,a,b,d,a,b,c).
inline std::array<Rational, 12> a4_vector(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                                          const Rational& lambda, const Rational& mu) {
    const std::array<const Rational*, 12> v1{&a, &a, &a, &b, &b, &b, &c, &c, &c, &d, &d, &d};
    const std::array<const Rational*, 12> v2{&b, &c, &d, &a, &c, &d, &a, &b, &d, &a, &b, &c};
    std::array<Rational, 12> out;
    for (std::size_t i = 0; i < 12; ++i) out[i] = lambda * *v1[i] + mu * *v2[i];
    return out;
}

/* Grid certificate that F composed with a polynomial parametrization vanishes
 * identically.  Each parametrization has degree <= 5 in every variable, so a
 * zero set containing S^k with |S| >= 6 forces the composite to be zero.
 */
struct GridCertificate {
    std::size_t variables = 0;
    std::size_t points_per_variable = 0;
    std::size_t evaluations = 0;
    std::size_t nonzero = 0;

    [[nodiscard]] bool proves_vanishing() const { return nonzero == 0 && points_per_variable > 5; }
};

namespace detail {
template <typename Map>
GridCertificate certify_on_grid(std::size_t vars, std::size_t n, Map&& map) {
    GridCertificate cert{vars, n, 0, 0};
    std::vector<Rational> nodes;
    for (std::size_t i = 0; i < n; ++i) nodes.push_back(make_rational(static_cast<long>(2 * i) - static_cast<long>(n) + 1, 3));
    std::vector<std::size_t> idx(vars, 0);
    std::vector<Rational> v(vars);
    for (;;) {
        for (std::size_t k = 0; k < vars; ++k) v[k] = nodes[idx[k]];
        ++cert.evaluations;
        if (mestre_quintic(map(v)) != 0) ++cert.nonzero;
        std::size_t k = 0;
        while (k < vars && ++idx[k] == n) idx[k++] = 0;
        if (k == vars) break;
    }
    return cert;
}
}  // namespace detail

/// F on x_i + x_{6+i} = 0, parametrized by (x_1, ..., x_6).
inline GridCertificate certify_antipodal_vanishing(std::size_t n = 6) {
    return detail::certify_on_grid(6, n, [](const std::vector<Rational>& y) {
        std::array<Rational, 12> x;
        for (std::size_t i = 0; i < 6; ++i) {
            x[i] = y[i];
            x[6 + i] = -y[i];
        }
        return x;
    });
}

/// F on the A4 family, parametrized by (a, b, c, d, lambda, mu).
inline GridCertificate certify_a4_vanishing(std::size_t n = 6) {
    return detail::certify_on_grid(6, n, [](const std::vector<Rational>& v) {
        return a4_vector(v[0], v[1], v[2], v[3], v[4], v[5]);
    });
}

struct Mestre12 {
    std::array<Rational, 12> x;
    PolyQ R, A2, A3;
    /// Y^3 + A2(X, Z) Y + A3(X, Z), homogenized
    TernaryForm cubic;
    /// (x_i : R(x_i) : 1)
    std::vector<ProjPoint> points;
};

inline Mestre12 mestre_family(const std::array<Rational, 12>& x) {
    if (std::set<Rational>(x.begin(), x.end()).size() != 12) throw InvalidArgument("x_i must be distinct");
    const PolyQ f = from_roots({x.begin(), x.end()});
    auto pp = series_cube_root(f);
    if (pp.c != 0) throw QuinticNonzero("F(x) = " + to_string(pp.c));
    const PolyQ rest = f - pp.R.pow(3);
    if (rest.degree() > 6) throw NonUniqueDecomposition("deg(f - R^3) > 6 although F(x) = 0");
    auto [a2, a3] = divrem(rest, pp.R);
    if (a2.degree() > 2 || a3.degree() > 3 || pp.R.pow(3) + a2 * pp.R + a3 != f)
        throw NonUniqueDecomposition("decomposition check failed");
    Mestre12 m{x, pp.R, a2, a3, TernaryForm(3), {}};
    m.cubic.set({0, 3, 0}, 1);
    for (int i = 0; i <= 2; ++i) m.cubic.set({i, 1, 2 - i}, a2.coeff(static_cast<std::size_t>(i)));
    for (int i = 0; i <= 3; ++i) m.cubic.set({i, 0, 3 - i}, a3.coeff(static_cast<std::size_t>(i)));
    for (const auto& xi : x) {
        ProjPoint p{xi, pp.R(xi), Rational(1)};
        if (m.cubic(p) != 0) throw NonUniqueDecomposition("marked point off the cubic");
        m.points.push_back(p);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Neron's pencil of cubics through nine points of the cuspidal cubic

/// A(u) = (u : 1 : u^3) on Y^2 Z = X^3.
inline ProjPoint cuspidal_point(const Rational& u) { return {u, Rational(1), u * u * u}; }

inline TernaryForm cuspidal_cubic() {
    TernaryForm g(3);
    g.set({0, 2, 1}, 1);
    g.set({3, 0, 0}, -1);
    return g;
}

struct PlaneCubicPencil {
    TernaryForm c0, c1;
    std::vector<ProjPoint> base_points;  // A(u_1) .. A(u_8), A(u_0)

    [[nodiscard]] TernaryForm member(const Rational& t) const { return c0 + t * c1; }
};

inline PlaneCubicPencil neron_pencil(const std::array<Rational, 8>& u) {
    Rational u0 = 0;
    for (const auto& v : u) u0 -= v;
    std::set<Rational> all(u.begin(), u.end());
    if (all.size() != 8) throw InvalidArgument("u_i must be distinct");
    if (all.count(Rational(0)) != 0) throw InvalidArgument("u_i must be nonzero");
    if (u0 == 0 || all.count(u0) != 0) throw InvalidArgument("u_0 = -sum u_i must be nonzero and distinct from the u_i");

    std::vector<ProjPoint> pts;
    for (const auto& v : u) pts.push_back(cuspidal_point(v));
    auto basis = forms_through(3, pts);
    if (basis.size() != 2) throw DegenerateConfiguration("cubics through the eight points form a space of dimension " +
                                                        std::to_string(basis.size()));
    const TernaryForm gamma = cuspidal_cubic();
    PlaneCubicPencil pencil{TernaryForm(3), gamma, pts};
    for (const auto& b : basis)
        if (linalg::rank({b.coefficients(), gamma.coefficients()}) == 2) {
            pencil.c0 = b;
            break;
        }
    const ProjPoint ninth = cuspidal_point(u0);
    if (pencil.c0(ninth) != 0) throw DegenerateConfiguration("ninth base point check failed");
    pencil.base_points.push_back(ninth);
    return pencil;
}

/// Line through A(u) and A(-u/2), tangent to the cuspidal cubic at A(-u/2).
inline TernaryForm tangent_line(const Rational& u) {
    if (u == 0) throw InvalidArgument("u = 0: A(u) and A(-u/2) coincide");
    return line_through(cuspidal_point(u), cuspidal_point(-u / 2));
}

/// l(A(s)) = l0 s + l1 + l2 s^3 as a polynomial in s.
inline PolyQ line_on_cuspidal(const TernaryForm& line) {
    return PolyQ{line.coeff({0, 1, 0}), line.coeff({1, 0, 0}), Rational(0), line.coeff({0, 0, 1})};
}

}  // namespace hirank

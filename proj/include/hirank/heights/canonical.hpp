#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "hirank/arith/interval.hpp"
#include "hirank/arith/linalg.hpp"
#include "hirank/arith/rational.hpp"
#include "hirank/curves/weierstrass.hpp"

namespace hirank {

inline constexpr double kDefaultHeightEps = 1e-8;

/// log max(|num x|, den x).
inline double naive_height(const Point& p) {
    if (p.is_infinity()) throw InvalidArgument("naive height of the point at infinity");
    const Integer& n = p.x().get_num();
    const Integer& d = p.x().get_den();
    return abs(n) > d ? log_abs(n) : log_abs(d);
}

/// A value with a sound absolute error bound: |true - value| <= error.
struct HeightValue {
    double value = 0;
    double error = 0;
};

namespace height_detail {

// binary quartic forms as coefficients of A^4, A^3 B, ..., B^4
using Quartic = std::array<Integer, 5>;

inline Integer eval_homog(const Quartic& f, const Integer& a, const Integer& b) {
    const Integer a2 = a * a, b2 = b * b;
    return f[0] * a2 * a2 + f[1] * a2 * a * b + f[2] * a2 * b2 + f[3] * a * b2 * b + f[4] * b2 * b2;
}

inline Interval eval_homog(const Quartic& f, const Interval& a, const Interval& b, mpfr_prec_t prec) {
    const Interval a2 = a * a, b2 = b * b;
    return Interval(f[0], prec) * a2 * a2 + Interval(f[1], prec) * a2 * a * b + Interval(f[2], prec) * a2 * b2 +
           Interval(f[3], prec) * a * b2 * b + Interval(f[4], prec) * b2 * b2;
}

/// Resultant of two binary quartics via the 8x8 Sylvester matrix.
inline linalg::IntMatrix sylvester(const Quartic& f, const Quartic& g) {
    linalg::IntMatrix m(8, linalg::IntVector(8, Integer(0)));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t i = 0; i < 5; ++i) {
            m[r][r + i] = f[i];
            m[r + 4][r + i] = g[i];
        }
    return m;
}

/* Sum of |coefficients| of cubic forms G1, G2 with G1 F1 + G2 F2 = Res * e,
 * e the monomial A^7 (target = 0) or B^7 (target = 7).  Bounds |G1|+|G2| on
 * the unit box max(|A|, |B|) <= 1.
 */
inline Rational cofactor_norm(const linalg::IntMatrix& syl, const Integer& res, std::size_t target) {
    // rows of syl are A^(3-r) F1 and A^(3-r) B^r F2 shifts; solve syl^T c = res * e_target
    linalg::RatMatrix at(8, linalg::RatVector(8));
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) at[j][i] = syl[i][j];
    linalg::RatVector rhs(8, Rational(0));
    rhs[target] = res;
    auto c = linalg::solve(at, rhs);
    if (!c) throw InvalidArgument("doubling forms have a common factor");
    Rational s = 0;
    for (const auto& v : *c) s += abs(v);
    return s;
}

inline Integer gcd3(const Integer& a, const Integer& b, const Integer& c) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace height_detail

/* Neron-Tate height hhat(P) = lim 4^-n h(x(2^n P)) with a sound error bound.
 *
 * On an integral model write x(2^k P) = A_k / B_k in lowest terms and let
 * F1, F2 be the doubling forms, so A_{k+1} = F1(A_k, B_k) / g_k with
 * g_k = gcd(F1, F2), a divisor of Res = Res(F1, F2).  Then
 *   hhat = h_0 + sum_k 4^-(k+1) (log max|F1|,|F2| at (a_k, b_k) - log g_k)
 * for any real representatives (a_k, b_k) of the projective point with
 * max(|a_k|, |b_k|) = 1.  g_k is exact (A_k, B_k tracked mod Res^(n+1-k));
 * the real terms are evaluated in interval arithmetic; the tail after n
 * terms is at most 4^-n / 3 * max(log c_high, log c_cof).
 */
inline HeightValue canonical_height_bounds(const WeierstrassCurve& e_in, const Point& p_in,
                                           double eps = kDefaultHeightEps) {
    using namespace height_detail;
    if (!e_in.contains(p_in)) throw InvalidArgument("point is not on the curve");
    if (p_in.is_infinity()) return {0, 0};
    if (!(eps > 0)) throw InvalidArgument("eps must be positive");
    // torsion orders over Q are at most 12; their orbits defeat the real recursion
    if (e_in.order(p_in, 12)) return {0, 0};
    const Isomorphism iso = integral_model_scaling(e_in);
    const WeierstrassCurve e = iso.apply(e_in);
    const Point p = iso.forward(p_in);
    const auto& iv = e.invariants();
    const Integer b2 = iv.b2.get_num(), b4 = iv.b4.get_num(), b6 = iv.b6.get_num(), b8 = iv.b8.get_num();
    const Quartic f1{Integer(1), Integer(0), -b4, -2 * b6, -b8};
    const Quartic f2{Integer(0), Integer(4), b2, 2 * b4, b6};

    const auto syl = sylvester(f1, f2);
    Integer res = abs(linalg::det(syl));
    const Integer c_high = std::max(1 + abs(b4) + 2 * abs(b6) + abs(b8), 4 + abs(b2) + 2 * abs(b4) + abs(b6));
    const double log_c_high = log_abs(c_high);
    const Rational cof = std::max(cofactor_norm(syl, res, 0), cofactor_norm(syl, res, 7));
    const double log_cof = log_abs(cof.get_num()) - log_abs(cof.get_den());
    // 1.01 absorbs double rounding in the bound itself
    const double tail_const = 1.01 * std::max({log_c_high, log_cof, 1.0}) / 3;

    int n = 0;
    double tail = tail_const;
    while (tail > eps / 4) {
        tail /= 4;
        ++n;
    }

    // exact non-archimedean part
    std::vector<Integer> g(static_cast<std::size_t>(n));
    {
        Integer modulus = integer_pow(res, static_cast<unsigned long>(n + 1));
        Integer a = mod(p.x().get_num(), modulus), b = mod(p.x().get_den(), modulus);
        for (int k = 0; k < n; ++k) {
            Integer u = mod(eval_homog(f1, a, b), modulus), v = mod(eval_homog(f2, a, b), modulus);
            Integer gk = gcd3(u, v, res);
            modulus /= gk;
            a = mod(u / gk, modulus);
            b = mod(v / gk, modulus);
            g[static_cast<std::size_t>(k)] = gk;
        }
    }

    const Integer& a0 = p.x().get_num();
    const Integer& b0 = p.x().get_den();
    const Integer m0 = abs(a0) > b0 ? abs(a0) : b0;
    for (mpfr_prec_t prec = 64 + 8 * n; prec <= 1 << 16; prec *= 2) {
        Interval sum = log(Interval(m0, prec));
        Interval a(make_rational(a0, m0), prec), b(make_rational(b0, m0), prec);
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            Interval u = eval_homog(f1, a, b, prec), v = eval_homog(f2, a, b, prec);
            Interval top = max(abs(u), abs(v));
            Interval scale = max(abs(a), abs(b));
            if (!top.positive() || !scale.positive()) {
                ok = false;
                break;
            }
            Interval term = log(top) - Interval(Integer(4), prec) * log(scale) - log(Interval(g[static_cast<std::size_t>(k)], prec));
            sum = sum + term.ldexp(-2 * (k + 1));
            // rescale exactly by a power of two to keep magnitudes near 1
            long shift = top.magnitude_exponent();
            a = u.ldexp(-shift);
            b = v.ldexp(-shift);
        }
        if (!ok) continue;
        const double mid = sum.mid();
        // the double midpoint adds one rounding of relative size 2^-53
        const double err = sum.width() / 2 + tail + std::abs(mid) * 0x1p-52;
        if (err <= eps || prec * 2 > (1 << 16)) return {mid, err};
    }
    throw InvalidArgument("canonical height: precision limit reached");
}

inline double canonical_height(const WeierstrassCurve& e, const Point& p, double eps = kDefaultHeightEps) {
    return canonical_height_bounds(e, p, eps).value;
}

/// <P, Q> = (hhat(P + Q) - hhat(P) - hhat(Q)) / 2.
inline HeightValue height_pairing_bounds(const WeierstrassCurve& e, const Point& p, const Point& q,
                                         double eps = kDefaultHeightEps) {
    auto s = canonical_height_bounds(e, e.add(p, q), eps);
    auto hp = canonical_height_bounds(e, p, eps);
    auto hq = canonical_height_bounds(e, q, eps);
    return {(s.value - hp.value - hq.value) / 2, (s.error + hp.error + hq.error) / 2 * (1 + 1e-12)};
}

inline double height_pairing(const WeierstrassCurve& e, const Point& p, const Point& q, double eps = kDefaultHeightEps) {
    return height_pairing_bounds(e, p, q, eps).value;
}

}  // namespace hirank

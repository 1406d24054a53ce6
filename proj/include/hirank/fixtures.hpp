#pragma once

#include <string>
#include <vector>

#include "hirank/curves/weierstrass.hpp"
#include "hirank/families/family.hpp"
#include "hirank/lattices/standard.hpp"

namespace hirank::fixtures {

inline PolyQ lin(long c0, long c1) { return PolyQ{Rational(c0), Rational(c1)}; }

/* Y^2 + aXY + abY = X^3 + bX^2 with a = (8T-1)(32T+7), b = 8(T+1)(15T-8)(31T-7).
 * The X^2 coefficient is b: with ab there, none of the four X-coordinates
 * below admits a Y over Q(T).
 * Torsion section (0,0) of order 4 first, then four sections of infinite order
 * with Y recovered from X.
 */
inline CurveFamily z4_family() {
    const PolyQ a = lin(-1, 8) * lin(7, 32);
    const PolyQ b = lin(1, 1) * lin(-8, 15) * lin(-7, 31) * Rational(8);
    CurveFamily fam({a, b, a * b, PolyQ{}, PolyQ{}});
    fam.add_section({RatFunc{}, RatFunc{}});
    const std::vector<PolyQ> xs{
        lin(1, 1) * lin(-7, 31) * lin(7, 32) * make_rational(-15, 4),
        lin(-1, 8) * lin(-8, 15) * lin(-7, 31) * lin(7, 32),
        -(lin(1, 1) * lin(-1, 8) * lin(-8, 15) * lin(7, 32)),
        lin(1, 1) * lin(5, 2) * lin(-8, 15) * lin(7, 32) * Rational(-4),
    };
    for (const auto& x : xs) {
        auto y = recover_y(fam, x);
        if (!y) throw InvalidArgument("fixture section has no Y over Q(T)");
        fam.add_section({x, *y});
    }
    return fam;
}

inline const Rational& z4_special_t() {
    static const Rational t = make_rational(18745, 6321);
    return t;
}

/// y^2 = x^3 + T^6 + 1 with the section (-T^2, 1).
inline CurveFamily shioda_family() {
    return CurveFamily({PolyQ{}, PolyQ{}, PolyQ{}, PolyQ{}, PolyQ{1, 0, 0, 0, 0, 0, 1}}, {{RatFunc(PolyQ{0, 0, -1}), RatFunc(PolyQ{1})}});
}

inline WeierstrassCurve rank28_curve() {
    return parse_curve(
        "1 -1 1 -20067762415575526585033208209338542750930230312178956502 "
        "34481611795030556467032985690390720374855944359319180361266008296291939448732243429");
}

/// u^2 = 16t^6 - 19t^4 + 88t^2 - 48.
inline PolyQ shimura_sextic() { return PolyQ{-48, 0, 88, 0, -19, 0, 16}; }

inline std::vector<std::pair<Rational, Rational>> shimura_points() {
    return {{Rational(2), Rational(32)}, {make_rational(14, 13), make_rational(64 * 251, 13 * 13 * 13)}};
}

/// NS = H + (-E8) + (-E8) of the Inose surface; f and s span H.
inline IntLattice inose_ns() { return direct_sum({hyperbolic_plane(), e_n(8).scaled(-1), e_n(8).scaled(-1)}); }

inline IntVector inose_fiber() {
    IntVector f(18, Integer(0));
    f[0] = 1;
    return f;
}

inline IntVector inose_zero_section() {
    IntVector s(18, Integer(0));
    s[0] = -1;
    s[1] = 1;
    return s;
}

/// The alternate model: N_ess = D16+, containing R = D16 with index 2.
inline IntLattice inose_d16_model() { return d_n_plus(16); }

/// v = (w, w) with w of norm 4 in each E8; its 2-neighbor of E8 + E8 is D16+.
inline IntVector e8_squared_neighbor_vector() {
    const IntVector w{0, 0, 0, 0, 0, 1, 0, -1};
    IntVector v(w);
    v.insert(v.end(), w.begin(), w.end());
    return v;
}

}  // namespace hirank::fixtures

#pragma once

#include <optional>
#include <vector>

#include "hirank/arith/linalg.hpp"
#include "hirank/arith/poly.hpp"
#include "hirank/curves/ternary_form.hpp"
#include "hirank/curves/weierstrass.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(SingularPoint);
HIRANK_DOMAIN_ERROR(ReducibleCubic);

namespace detail {

/// f restricted to the line a + s b, as a polynomial in s.
inline PolyQ restrict_to_line(const TernaryForm& f, const ProjPoint& a, const ProjPoint& b) {
    auto coord = [&](std::size_t i) { return PolyQ{a[i], b[i]}; };
    return f.evaluate<PolyQ>(coord(0), coord(1), coord(2));
}

inline ProjPoint along(const ProjPoint& a, const ProjPoint& b, const Rational& s) {
    return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
}

/// Some point on line l other than `not_this`.
inline ProjPoint other_point_on_line(const TernaryForm& l, const ProjPoint& not_this) {
    auto pts = points_on_line(l);
    return proportional(pts[0], not_this) ? pts[1] : pts[0];
}

inline TernaryForm tangent_form(const TernaryForm& c, const ProjPoint& p) {
    auto g = c.gradient(p);
    return TernaryForm::linear(g[0], g[1], g[2]);
}

/* Third intersection of the tangent at a smooth point a.  Returns nullopt
 * when the tangent line is a component of c.
 */
inline std::optional<ProjPoint> tangent_third_point(const TernaryForm& c, const ProjPoint& a) {
    const TernaryForm t = tangent_form(c, a);
    const ProjPoint w = other_point_on_line(t, a);
    const PolyQ r = restrict_to_line(c, a, w);  // s^2 (c2 + c3 s)
    if (r.is_zero()) return std::nullopt;
    const Rational c2 = r.coeff(2), c3 = r.coeff(3);
    if (c3 == 0) return w;
    return normalize(along(a, w, -c2 / c3));
}

}  // namespace detail

/* Birational map from a smooth plane cubic C with rational point P to a
 * Weierstrass model, sending P to infinity.  With T the tangent at P:
 *   x = Xf / T,  y = Yf / T^2   (then rescaled by u, v),
 * where Xf is a line through the residual point Q of T (or through P when
 * P is a flex) and Yf is a conic through P and tangent to C at Q (or L*T
 * with L(P) != 0 for a flex).
 */
class NagellMap {
public:
    NagellMap(const TernaryForm& cubic, const ProjPoint& base) : c_(cubic), p_(normalize(base)) {
        if (c_.degree() != 3) throw InvalidArgument("plane cubic expected");
        if (c_(p_) != 0) throw NotOnCurve("base point " + to_string(p_) + " is not on the cubic");
        auto grad = c_.gradient(p_);
        if (grad[0] == 0 && grad[1] == 0 && grad[2] == 0) throw SingularPoint("base point is singular");
        t_ = detail::tangent_form(c_, p_);
        auto q = detail::tangent_third_point(c_, p_);
        if (!q) throw ReducibleCubic("tangent line at the base point is a component");
        q_ = *q;
        flex_ = proportional(q_, p_);
        build_functions();
        build_relation();
    }

    [[nodiscard]] const WeierstrassCurve& curve() const { return *e_; }
    [[nodiscard]] const TernaryForm& cubic() const { return c_; }
    [[nodiscard]] const ProjPoint& base_point() const { return p_; }
    [[nodiscard]] bool base_is_flex() const { return flex_; }
    /// x, y numerator forms and the common linear denominator (before u, v scaling)
    [[nodiscard]] const TernaryForm& x_numerator() const { return xf_; }
    [[nodiscard]] const TernaryForm& y_numerator() const { return yf_; }
    [[nodiscard]] const TernaryForm& denominator() const { return t_; }
    [[nodiscard]] const Rational& x_scale() const { return u_; }
    [[nodiscard]] const Rational& y_scale() const { return v_; }

    /// Image of a point of C.
    [[nodiscard]] Point forward(const ProjPoint& r_in) const {
        const ProjPoint r = normalize(r_in);
        if (c_(r) != 0) throw NotOnCurve(to_string(r));
        if (proportional(r, p_)) return Point::infinity();
        const Rational d = t_(r);
        if (d != 0) return {xf_(r) / d / u_, yf_(r) / (d * d) / v_};
        // r is the residual point Q of a non-flex base point
        auto third = detail::tangent_third_point(c_, q_);
        if (!third) throw ReducibleCubic("tangent line at the residual point is a component");
        if (!proportional(*third, q_)) return e_->negate(forward(*third));
        // Q is a flex: its image is 2-torsion, x from C = Xf g1 + T g2
        const Rational x = -g2_(q_) / g1_(q_) / u_;
        auto lifts = e_->lift_x(x);
        if (lifts.size() != 1) throw InvalidArgument("residual point does not map to 2-torsion");
        return lifts.front();
    }

    /// Preimage on C of a point of the Weierstrass model.
    [[nodiscard]] ProjPoint backward(const Point& w) const {
        if (w.is_infinity()) return p_;
        if (!e_->contains(w)) throw NotOnCurve(to_string(w));
        if (!flex_ && w == forward(q_)) return q_;
        const Rational x = w.x() * u_, y = w.y() * v_;
        // line Xf - x T passes through b0 (Q, or P for a flex); the conic
        // Yf - y T^2 meets it at b0 and the wanted point
        const ProjPoint b0 = flex_ ? p_ : q_;
        const TernaryForm line = xf_ - x * t_;
        const ProjPoint w0 = detail::other_point_on_line(line, b0);
        const TernaryForm g = yf_ - y * (t_ * t_);
        const PolyQ gs = detail::restrict_to_line(g, b0, w0);
        ProjPoint r;
        if (gs.is_zero()) throw InvalidArgument("backward map undetermined");
        if (gs.coeff(2) == 0)
            r = w0;
        else
            r = normalize(detail::along(b0, w0, -gs.coeff(1) / gs.coeff(2)));
        if (c_(r) != 0) throw InvalidArgument("backward map left the cubic");
        return r;
    }

private:
    void build_functions() {
        auto lines_through = [&](const ProjPoint& a) { return forms_through(1, {a}); };
        auto not_multiple_of_t = [&](const std::vector<TernaryForm>& cands) {
            for (const auto& l : cands)
                if (linalg::rank({t_.coefficients(), l.coefficients()}) == 2) return l;
            throw ReducibleCubic("no auxiliary line");
        };
        if (flex_) {
            xf_ = not_multiple_of_t(lines_through(p_));
            TernaryForm l;
            for (int i = 0; i < 3; ++i)
                if (p_[static_cast<std::size_t>(i)] != 0) {
                    l = TernaryForm::linear(i == 0 ? 1 : 0, i == 1 ? 1 : 0, i == 2 ? 1 : 0);
                    break;
                }
            yf_ = l * t_;
            return;
        }
        xf_ = not_multiple_of_t(lines_through(q_));
        // conics through P and Q with contact >= 2 with C at Q
        const TernaryForm tq = detail::tangent_form(c_, q_);
        const ProjPoint dir = detail::other_point_on_line(tq, q_);
        linalg::RatMatrix rows;
        for (const auto& pt : {p_, q_}) {
            linalg::RatVector row;
            for (const auto& e : TernaryForm::monomials(2)) {
                TernaryForm m(2);
                m.set(e, 1);
                row.push_back(m(pt));
            }
            rows.push_back(row);
        }
        linalg::RatVector contact;
        for (const auto& e : TernaryForm::monomials(2)) {
            TernaryForm m(2);
            m.set(e, 1);
            auto gq = m.gradient(q_);
            contact.push_back(gq[0] * dir[0] + gq[1] * dir[1] + gq[2] * dir[2]);
        }
        rows.push_back(contact);
        const auto a = (t_ * xf_).coefficients();
        const auto b = (t_ * t_).coefficients();
        for (const auto& v : linalg::nullspace(rows)) {
            if (linalg::rank({a, b, v}) == 3) {
                yf_ = TernaryForm::from_coefficients(2, v);
                break;
            }
        }
        if (yf_.is_zero()) throw ReducibleCubic("no conic with the required contact");
        // C = Xf g1 + T g2, used when Q is a flex
        const auto mons2 = TernaryForm::monomials(2);
        const auto mons3 = TernaryForm::monomials(3);
        linalg::RatMatrix sys(mons3.size(), linalg::RatVector(2 * mons2.size(), Rational(0)));
        for (std::size_t j = 0; j < mons2.size(); ++j) {
            TernaryForm m(2);
            m.set(mons2[j], 1);
            auto c1 = (xf_ * m).coefficients();
            auto c2 = (t_ * m).coefficients();
            for (std::size_t i = 0; i < mons3.size(); ++i) {
                sys[i][j] = c1[i];
                sys[i][mons2.size() + j] = c2[i];
            }
        }
        auto sol = linalg::solve(sys, c_.coefficients());
        if (!sol) throw ReducibleCubic("cubic not in the ideal of its residual point");
        g1_ = TernaryForm::from_coefficients(2, {sol->begin(), sol->begin() + 6});
        g2_ = TernaryForm::from_coefficients(2, {sol->begin() + 6, sol->end()});
    }

    /* Find beta y^2 + gamma xy + delta y + alpha x^3 + eps x^2 + zeta x + eta = 0
     * as an identity of quartic forms modulo C, then rescale to Weierstrass.
     */
    void build_relation() {
        const TernaryForm& d = t_;
        const std::vector<TernaryForm> terms = {
            d * d * d * d,        // 1
            xf_ * d * d * d,      // x
            xf_ * xf_ * d * d,    // x^2
            xf_ * xf_ * xf_ * d,  // x^3
            yf_ * d * d,          // y
            xf_ * yf_ * d,        // xy
            yf_ * yf_,            // y^2
        };
        const auto mons4 = TernaryForm::monomials(4);
        const auto mons1 = TernaryForm::monomials(1);
        linalg::RatMatrix sys(mons4.size(), linalg::RatVector(terms.size() + mons1.size(), Rational(0)));
        for (std::size_t j = 0; j < terms.size(); ++j) {
            auto cf = terms[j].coefficients();
            for (std::size_t i = 0; i < mons4.size(); ++i) sys[i][j] = cf[i];
        }
        for (std::size_t j = 0; j < mons1.size(); ++j) {
            TernaryForm m(1);
            m.set(mons1[j], 1);
            auto cf = (c_ * m).coefficients();
            for (std::size_t i = 0; i < mons4.size(); ++i) sys[i][terms.size() + j] = -cf[i];
        }
        auto ns = linalg::nullspace(sys);
        if (ns.size() != 1) throw ReducibleCubic("function relation is not unique");
        if (ns.front()[6] == 0) throw ReducibleCubic("degenerate function relation");
        linalg::RatVector r = ns.front();
        const Rational scale = 1 / r[6];
        for (auto& c : r) c *= scale;
        const Rational &eta = r[0], &zeta = r[1], &eps = r[2], &alpha = r[3], &delta = r[4], &gamma = r[5],
                       &beta = r[6];
        if (alpha == 0 || beta == 0) throw ReducibleCubic("degenerate function relation");
        u_ = -alpha * beta;
        v_ = alpha * alpha * beta;
        const Rational k = rational_pow(alpha, 4) * rational_pow(beta, 3);
        try {
            e_.emplace(gamma * u_ * v_ / k, -eps * u_ * u_ / k, delta * v_ / k, -zeta * u_ / k, -eta / k);
        } catch (const SingularCurve&) {
            throw ReducibleCubic("the cubic is singular");
        }
    }

    TernaryForm c_;
    ProjPoint p_, q_;
    bool flex_ = false;
    TernaryForm t_, xf_, yf_, g1_, g2_;
    Rational u_, v_;
    std::optional<WeierstrassCurve> e_;
};

inline NagellMap nagell_cubic_to_weierstrass(const TernaryForm& cubic, const ProjPoint& base) {
    return NagellMap(cubic, base);
}

/// Y^2 Z + a1 XYZ + a3 Y Z^2 - (X^3 + a2 X^2 Z + a4 X Z^2 + a6 Z^3).
inline TernaryForm weierstrass_cubic_form(const WeierstrassCurve& e) {
    TernaryForm f(3);
    f.set({0, 2, 1}, 1);
    f.set({1, 1, 1}, e.a1());
    f.set({0, 1, 2}, e.a3());
    f.set({3, 0, 0}, -1);
    f.set({2, 0, 1}, -e.a2());
    f.set({1, 0, 2}, -e.a4());
    f.set({0, 0, 3}, -e.a6());
    return f;
}

}  // namespace hirank

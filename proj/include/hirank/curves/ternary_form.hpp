#pragma once

#include <array>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "hirank/arith/linalg.hpp"
#include "hirank/arith/rational.hpp"

namespace hirank {

using ProjPoint = std::array<Rational, 3>;

inline bool proportional(const ProjPoint& a, const ProjPoint& b) {
    return a[0] * b[1] == a[1] * b[0] && a[0] * b[2] == a[2] * b[0] && a[1] * b[2] == a[2] * b[1];
}

/// Scale so that the last nonzero coordinate is 1.
inline ProjPoint normalize(ProjPoint p) {
    for (int i = 2; i >= 0; --i) {
        if (p[static_cast<std::size_t>(i)] != 0) {
            Rational s = 1 / p[static_cast<std::size_t>(i)];
            for (auto& c : p) c *= s;
            return p;
        }
    }
    throw InvalidArgument("zero vector is not a projective point");
}

inline std::string to_string(const ProjPoint& p) {
    return "(" + to_string(p[0]) + ":" + to_string(p[1]) + ":" + to_string(p[2]) + ")";
}

/* Homogeneous polynomial in X, Y, Z with rational coefficients, keyed by
 * exponent triple.  Only what plane-cubic geometry needs.
 */
class TernaryForm {
public:
    using Exponent = std::array<int, 3>;

    TernaryForm() = default;
    explicit TernaryForm(int degree) : deg_(degree) {}

    /// All exponent triples of the given total degree, in a fixed order.
    static std::vector<Exponent> monomials(int degree) {
        std::vector<Exponent> out;
        for (int i = degree; i >= 0; --i)
            for (int j = degree - i; j >= 0; --j) out.push_back({i, j, degree - i - j});
        return out;
    }

    static TernaryForm from_coefficients(int degree, const std::vector<Rational>& c) {
        auto mons = monomials(degree);
        if (c.size() != mons.size()) throw InvalidArgument("coefficient count does not match degree");
        TernaryForm f(degree);
        for (std::size_t i = 0; i < mons.size(); ++i) f.set(mons[i], c[i]);
        return f;
    }

    static TernaryForm linear(const Rational& a, const Rational& b, const Rational& c) {
        return from_coefficients(1, {a, b, c});
    }

    [[nodiscard]] int degree() const { return deg_; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] const std::map<Exponent, Rational>& terms() const { return c_; }

    [[nodiscard]] Rational coeff(const Exponent& e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rational(0) : it->second;
    }
    void set(const Exponent& e, const Rational& v) {
        if (v == 0)
            c_.erase(e);
        else
            c_[e] = v;
    }

    [[nodiscard]] std::vector<Rational> coefficients() const {
        std::vector<Rational> out;
        for (const auto& e : monomials(deg_)) out.push_back(coeff(e));
        return out;
    }

    template <typename T>
    [[nodiscard]] T evaluate(const T& x, const T& y, const T& z) const {
        auto lift = [](const Rational& r) {
            if constexpr (std::is_same_v<T, Rational>)
                return r;
            else
                return T::constant(r);
        };
        std::array<std::vector<T>, 3> pw;
        const std::array<const T*, 3> base{&x, &y, &z};
        for (std::size_t v = 0; v < 3; ++v) {
            pw[v].push_back(lift(Rational(1)));
            for (int k = 1; k <= deg_; ++k) pw[v].push_back(pw[v].back() * *base[v]);
        }
        T acc = lift(Rational(0));
        for (const auto& [e, a] : c_) {
            T term = pw[0][static_cast<std::size_t>(e[0])] * pw[1][static_cast<std::size_t>(e[1])];
            term = term * pw[2][static_cast<std::size_t>(e[2])];
            acc = acc + term * a;
        }
        return acc;
    }

    [[nodiscard]] Rational operator()(const ProjPoint& p) const { return evaluate<Rational>(p[0], p[1], p[2]); }

    [[nodiscard]] TernaryForm partial(int var) const {
        TernaryForm d(deg_ - 1);
        for (const auto& [e, a] : c_) {
            if (e[static_cast<std::size_t>(var)] == 0) continue;
            Exponent f = e;
            f[static_cast<std::size_t>(var)] -= 1;
            d.set(f, d.coeff(f) + a * e[static_cast<std::size_t>(var)]);
        }
        return d;
    }

    [[nodiscard]] ProjPoint gradient(const ProjPoint& p) const { return {partial(0)(p), partial(1)(p), partial(2)(p)}; }

    friend TernaryForm operator+(const TernaryForm& a, const TernaryForm& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.deg_ != b.deg_) throw InvalidArgument("adding forms of different degree");
        TernaryForm r = a;
        for (const auto& [e, c] : b.c_) r.set(e, r.coeff(e) + c);
        return r;
    }
    friend TernaryForm operator*(const Rational& s, const TernaryForm& a) {
        TernaryForm r(a.deg_);
        if (s == 0) return r;
        for (const auto& [e, c] : a.c_) r.set(e, s * c);
        return r;
    }
    friend TernaryForm operator-(const TernaryForm& a, const TernaryForm& b) { return a + Rational(-1) * b; }
    friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) {
        TernaryForm r(a.deg_ + b.deg_);
        for (const auto& [ea, ca] : a.c_)
            for (const auto& [eb, cb] : b.c_) {
                Exponent e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
                r.set(e, r.coeff(e) + ca * cb);
            }
        return r;
    }
    friend bool operator==(const TernaryForm& a, const TernaryForm& b) {
        return a.c_ == b.c_ && (a.is_zero() || a.deg_ == b.deg_);
    }

private:
    int deg_ = 0;
    std::map<Exponent, Rational> c_;
};

inline std::string to_string(const TernaryForm& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const char* names = "XYZ";
    for (const auto& e : TernaryForm::monomials(f.degree())) {
        Rational a = f.coeff(e);
        if (a == 0) continue;
        os << (first ? "" : " + ") << to_string(a);
        for (std::size_t v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            os << "*" << names[v];
            if (e[v] > 1) os << "^" << e[v];
        }
        first = false;
    }
    return os.str();
}

/// Basis of linear forms vanishing at the given points.
inline std::vector<TernaryForm> forms_through(int degree, const std::vector<ProjPoint>& pts) {
    auto mons = TernaryForm::monomials(degree);
    linalg::RatMatrix m;
    for (const auto& p : pts) {
        linalg::RatVector row;
        for (const auto& e : mons) row.push_back(rational_pow(p[0], static_cast<unsigned>(e[0])) *
                                                 rational_pow(p[1], static_cast<unsigned>(e[1])) *
                                                 rational_pow(p[2], static_cast<unsigned>(e[2])));
        m.push_back(std::move(row));
    }
    if (m.empty()) m.push_back(linalg::RatVector(mons.size(), Rational(0)));
    std::vector<TernaryForm> out;
    for (auto& v : linalg::nullspace(m)) out.push_back(TernaryForm::from_coefficients(degree, v));
    return out;
}

/// Line through two distinct projective points.
inline TernaryForm line_through(const ProjPoint& a, const ProjPoint& b) {
    Rational l0 = a[1] * b[2] - a[2] * b[1];
    Rational l1 = a[2] * b[0] - a[0] * b[2];
    Rational l2 = a[0] * b[1] - a[1] * b[0];
    if (l0 == 0 && l1 == 0 && l2 == 0) throw InvalidArgument("points coincide");
    return TernaryForm::linear(l0, l1, l2);
}

/// Two points spanning the projective line l = 0.
inline std::array<ProjPoint, 2> points_on_line(const TernaryForm& l) {
    linalg::RatMatrix m{{l.coeff({1, 0, 0}), l.coeff({0, 1, 0}), l.coeff({0, 0, 1})}};
    auto ns = linalg::nullspace(m);
    if (ns.size() != 2) throw InvalidArgument("not a line");
    return {ProjPoint{ns[0][0], ns[0][1], ns[0][2]}, ProjPoint{ns[1][0], ns[1][1], ns[1][2]}};
}

}  // namespace hirank

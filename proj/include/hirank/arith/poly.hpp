#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hirank/arith/errors.hpp"
#include "hirank/arith/rational.hpp"

namespace hirank {

/* Dense univariate polynomial over a field K.  coeffs()[i] is the
 * coefficient of X^i; trailing zeros are always trimmed, so the zero
 * polynomial has an empty coefficient list and degree -1.
 */
template <typename K>
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<K> c) : c_(c) { trim(); }
    explicit Poly(std::vector<K> c) : c_(std::move(c)) { trim(); }
    static Poly constant(const K& a) { return Poly(std::vector<K>{a}); }
    static Poly monomial(const K& a, std::size_t deg) {
        std::vector<K> c(deg + 1, K(0));
        c[deg] = a;
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(K(1), 1); }

    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] const std::vector<K>& coeffs() const { return c_; }
    [[nodiscard]] K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
    [[nodiscard]] const K& lead() const { return c_.back(); }

    [[nodiscard]] K operator()(const K& x) const {
        K acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const K& a) {
        for (auto& x : c_) x *= a;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<K> c(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c));
    }
    friend Poly operator*(Poly a, const K& s) { return a *= s; }
    friend Poly operator*(const K& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    [[nodiscard]] Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<K> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(static_cast<long>(i));
        return Poly(std::move(d));
    }

    /// f(g(X)).
    [[nodiscard]] Poly compose(const Poly& g) const {
        Poly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + constant(*it);
        return acc;
    }

    [[nodiscard]] Poly pow(unsigned e) const {
        Poly r = constant(K(1));
        Poly b = *this;
        while (e) {
            if (e & 1u) r *= b;
            e >>= 1u;
            if (e) b = b * b;
        }
        return r;
    }

    [[nodiscard]] Poly monic() const {
        if (is_zero()) return {};
        Poly r = *this;
        K inv = K(1) / lead();
        return r *= inv;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<K> c_;
};

using PolyQ = Poly<Rational>;

/// Euclidean division f = q*g + r with deg r < deg g.
template <typename K>
std::pair<Poly<K>, Poly<K>> divrem(const Poly<K>& f, const Poly<K>& g) {
    if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (f.degree() < g.degree()) return {Poly<K>{}, f};
    std::vector<K> r = f.coeffs();
    std::vector<K> q(static_cast<std::size_t>(f.degree() - g.degree() + 1), K(0));
    const auto& gc = g.coeffs();
    K inv = K(1) / g.lead();
    for (int i = f.degree() - g.degree(); i >= 0; --i) {
        K t = r[static_cast<std::size_t>(i) + gc.size() - 1] * inv;
        q[static_cast<std::size_t>(i)] = t;
        if (t == 0) continue;
        for (std::size_t j = 0; j < gc.size(); ++j) r[static_cast<std::size_t>(i) + j] -= t * gc[j];
    }
    r.resize(gc.size() - 1);
    return {Poly<K>(std::move(q)), Poly<K>(std::move(r))};
}

/// Monic gcd; gcd(0, 0) is rejected.
template <typename K>
Poly<K> gcd(Poly<K> f, Poly<K> g) {
    if (f.is_zero() && g.is_zero()) throw InvalidArgument("gcd(0, 0) is undefined");
    while (!g.is_zero()) {
        auto r = divrem(f, g).second;
        f = std::move(g);
        g = r.monic();
    }
    return f.monic();
}

/// Exact square root in K[X] if f is a square; the root has positive-sign
/// leading coefficient as chosen by sqrt_lead.
inline std::optional<PolyQ> poly_sqrt(const PolyQ& f) {
    if (f.is_zero()) return PolyQ{};
    if (f.degree() % 2 != 0) return std::nullopt;
    auto lc = exact_sqrt(f.lead());
    if (!lc) return std::nullopt;
    const int n = f.degree() / 2;
    // top-down long "division": determine s_{n}, s_{n-1}, ..., s_0
    std::vector<Rational> s(static_cast<std::size_t>(n) + 1, Rational(0));
    s[static_cast<std::size_t>(n)] = *lc;
    for (int k = n - 1; k >= 0; --k) {
        // coefficient of X^{n+k} in s^2 must equal f's
        Rational acc(0);
        for (int i = k + 1; i <= n; ++i) {
            int j = n + k - i;
            if (j < k + 1 || j > n) continue;
            acc += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
        }
        s[static_cast<std::size_t>(k)] = (f.coeff(static_cast<std::size_t>(n + k)) - acc) / (2 * *lc);
    }
    PolyQ root(std::move(s));
    if (root * root != f) return std::nullopt;
    return root;
}

template <typename K>
std::string to_string(const Poly<K>& f, const std::string& var = "X") {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const K& a = f.coeffs()[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        K mag = a < 0 ? K(-a) : a;
        os << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (i == 0 || mag != 1) os << to_string(mag);
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

/// Space-separated coefficient list c0 c1 c2 ... ("0" for the zero polynomial).
inline std::string to_coeff_list(const PolyQ& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) os << (i ? " " : "") << to_string(f.coeffs()[i]);
    return os.str();
}

inline PolyQ parse_coeff_list(const std::string& text) {
    std::istringstream is(text);
    std::vector<Rational> c;
    std::string tok;
    while (is >> tok) c.push_back(parse_rational(tok));
    return PolyQ(std::move(c));
}

/// Product of (X - r) over the roots.
inline PolyQ from_roots(const std::vector<Rational>& roots) {
    PolyQ f = PolyQ::constant(Rational(1));
    for (const auto& r : roots) f *= PolyQ{Rational(-r), Rational(1)};
    return f;
}

}  // namespace hirank

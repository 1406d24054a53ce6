#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hirank/arith/modp.hpp"
#include "hirank/arith/poly.hpp"
#include "hirank/arith/poly_mod_p.hpp"
#include "hirank/curves/reduction.hpp"
#include "hirank/curves/weierstrass.hpp"

namespace hirank {

/* Z/n (cyclic = true, n >= 1) or Z/2 + Z/n (cyclic = false, n even).
 * Generators: one for cyclic groups (none when trivial), two otherwise,
 * with orders n and 2.
 */
struct TorsionGroup {
    bool cyclic = true;
    int n = 1;
    std::vector<Point> generators;

    [[nodiscard]] int order() const { return cyclic ? n : 2 * n; }
    [[nodiscard]] std::vector<int> invariants() const {
        if (cyclic) return n == 1 ? std::vector<int>{} : std::vector<int>{n};
        return {2, n};
    }
    [[nodiscard]] std::string label() const {
        if (cyclic) return n == 1 ? "trivial" : "Z/" + std::to_string(n) + "Z";
        return "Z/2Z x Z/" + std::to_string(n) + "Z";
    }
};

inline bool in_mazur_list(bool cyclic, int n) {
    if (cyclic) return (n >= 1 && n <= 10) || n == 12;
    return n == 2 || n == 4 || n == 6 || n == 8;
}

/// gcd of #E(F_p) over good odd primes below `bound` (at least `min_primes` of them).
inline Integer torsion_order_bound(const WeierstrassCurve& e, std::uint64_t bound = 1000, int min_primes = 20) {
    Integer g = 0;
    int used = 0;
    for (auto p : modp::primes_below(bound)) {
        if (p == 2) continue;
        try {
            auto em = reduce_mod_p(e, p);
            mpz_gcd_ui(g.get_mpz_t(), g.get_mpz_t(), count_points(em));
            ++used;
        } catch (const BadReduction&) {
        } catch (const DenominatorDivisibleByP&) {
        }
    }
    if (used < min_primes) throw InvalidArgument("too few primes of good reduction below " + std::to_string(bound));
    return g;
}

/* Division polynomials of y^2 = x^3 + A x + B, in the reduced form f_m
 * with psi_m = f_m for odd m and psi_m = 2y f_m for even m.  Returns
 * f_0..f_{max_m}.
 */
inline std::vector<PolyQ> reduced_division_polynomials(const Rational& a, const Rational& b, int max_m) {
    using R = Rational;
    std::vector<PolyQ> f(static_cast<std::size_t>(std::max(max_m, 4)) + 1);
    const PolyQ f4sq = [&] {
        PolyQ c{R(4) * b, R(4) * a, R(0), R(4)};  // (2y)^2
        return c * c;
    }();
    f[0] = PolyQ{};
    f[1] = PolyQ{R(1)};
    f[2] = PolyQ{R(1)};
    f[3] = PolyQ{-a * a, R(12) * b, R(6) * a, R(0), R(3)};
    f[4] = PolyQ{R(-2) * (R(8) * b * b + a * a * a), R(-8) * a * b, R(-10) * a * a, R(40) * b, R(10) * a, R(0), R(2)};
    for (int n = 5; n <= max_m; ++n) {
        auto at = [&](int i) -> const PolyQ& { return f[static_cast<std::size_t>(i)]; };
        const int m = n / 2;
        PolyQ v;
        if (n % 2 == 1) {
            if (m % 2 == 0)
                v = f4sq * at(m + 2) * at(m).pow(3) - at(m - 1) * at(m + 1).pow(3);
            else
                v = at(m + 2) * at(m).pow(3) - f4sq * at(m - 1) * at(m + 1).pow(3);
        } else {
            v = at(m) * (at(m + 2) * at(m - 1) * at(m - 1) - at(m - 2) * at(m + 1) * at(m + 1));
        }
        f[static_cast<std::size_t>(n)] = std::move(v);
    }
    f.resize(static_cast<std::size_t>(max_m) + 1);
    return f;
}

namespace detail {

inline std::vector<Integer> integer_coefficients(const PolyQ& f) {
    Integer den = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> out;
    for (const auto& c : f.coeffs()) {
        Rational s = c * den;
        out.push_back(s.get_num());
    }
    return out;
}

inline Integer eval_int(const std::vector<Integer>& c, const Integer& x) {
    Integer acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace detail

/* Integer roots of f != 0.  Work with the squarefree part, find its roots
 * modulo a prime where it stays squarefree, Hensel lift past twice the
 * Cauchy bound and keep the lifts that are exact roots.
 */
inline std::vector<Integer> integer_roots(const PolyQ& f_in) {
    if (f_in.is_zero()) throw InvalidArgument("zero polynomial has every root");
    std::vector<Integer> roots;
    PolyQ f = f_in;
    if (f.coeff(0) == 0) {
        roots.push_back(0);
        std::size_t k = 0;
        while (f.coeff(k) == 0) ++k;
        f = PolyQ(std::vector<Rational>(f.coeffs().begin() + static_cast<std::ptrdiff_t>(k), f.coeffs().end()));
    }
    if (f.degree() <= 0) return roots;
    auto c = detail::integer_coefficients(f);
    const PolyQ fq0(std::vector<Rational>(c.begin(), c.end()));
    // squarefree inputs (the usual case) avoid the costly gcd over Q
    bool squarefree_mod_some_p = false;
    for (std::uint64_t p = 3; p < 2000 && !squarefree_mod_some_p; p += 2) {
        if (!modp::is_prime(p) || mpz_divisible_ui_p(c.back().get_mpz_t(), p)) continue;
        PolyModP fp = PolyModP::reduce(fq0, p);
        squarefree_mod_some_p = gcd(fp, fp.derivative()).degree() == 0;
    }
    if (!squarefree_mod_some_p) {
        PolyQ g = gcd(f, f.derivative());
        if (g.degree() > 0) f = divrem(f, g).first;
        c = detail::integer_coefficients(f);
    }
    const Integer& lead = c.back();

    Integer cauchy = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) cauchy = std::max(cauchy, Integer(abs(c[i])));
    cauchy = cauchy / abs(lead) + 2;

    std::vector<Integer> dc;
    for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<unsigned long>(i));
    const PolyQ fq(std::vector<Rational>(c.begin(), c.end()));
    for (std::uint64_t p = 3;; p += 2) {
        if (!modp::is_prime(p)) continue;
        if (mpz_divisible_ui_p(lead.get_mpz_t(), p)) continue;
        PolyModP fp = PolyModP::reduce(fq, p);
        if (gcd(fp, fp.derivative()).degree() != 0) continue;
        std::vector<Integer> modroots;
        for (std::uint64_t x = 0; x < p; ++x)
            if (fp(x) == 0) modroots.emplace_back(static_cast<unsigned long>(x));
        const Integer pz(static_cast<unsigned long>(p));
        for (Integer x : modroots) {
            Integer mod = pz;
            while (mod <= 2 * cauchy) {
                mod *= mod;
                Integer fx = detail::eval_int(c, x) % mod;
                Integer dx = detail::eval_int(dc, x) % mod;
                Integer inv;
                if (mpz_invert(inv.get_mpz_t(), dx.get_mpz_t(), mod.get_mpz_t()) == 0) break;
                x = (x - fx * inv) % mod;
                if (x < 0) x += mod;
            }
            Integer r = x > mod / 2 ? Integer(x - mod) : x;
            if (detail::eval_int(c, r) == 0) roots.push_back(r);
        }
        break;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

/* Torsion points are found on y^2 = x^3 - 27 c4 x - 54 c6 of an integral
 * model, where Nagell-Lutz makes torsion x-coordinates integral, then
 * pulled back.
 */
inline TorsionGroup torsion_subgroup(const WeierstrassCurve& e) {
    const Integer bound = torsion_order_bound(e);
    TorsionGroup out;
    if (bound == 1) return out;

    const Isomorphism to_int = integral_model_scaling(e);
    const WeierstrassCurve ei = to_int.apply(e);
    const Isomorphism to_short = short_model_isomorphism(ei);
    const WeierstrassCurve es = to_short.apply(ei);
    auto back = [&](const Point& p) { return to_int.backward(to_short.backward(p)); };

    // exponents of Mazur groups are <= 12; only divisors of the bound matter
    std::vector<int> ms;
    for (int m = 2; m <= 12; ++m)
        if (mpz_divisible_ui_p(bound.get_mpz_t(), static_cast<unsigned long>(m))) ms.push_back(m);
    if (ms.empty()) return out;
    // a root of f_d is a root of f_m whenever d | m (m odd, or d even)
    std::vector<int> maximal;
    for (int m : ms) {
        bool dominated = false;
        for (int k : ms)
            if (k != m && k % m == 0 && (m % 2 == 1 || k % 2 == 0)) dominated = true;
        if (!dominated) maximal.push_back(m);
    }
    ms = maximal;
    auto divpolys = reduced_division_polynomials(es.a4(), es.a6(), *std::max_element(ms.begin(), ms.end()));

    std::vector<Integer> xs;
    auto collect = [&](const PolyQ& f) {
        if (f.degree() <= 0) return;
        for (auto& r : integer_roots(f)) xs.push_back(r);
    };
    if (mpz_even_p(bound.get_mpz_t())) collect(PolyQ{es.a6(), es.a4(), Rational(0), Rational(1)});
    for (int m : ms) collect(divpolys[static_cast<std::size_t>(m)]);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<std::pair<int, Point>> pts;  // (order, point on es)
    for (const auto& x : xs)
        for (const auto& p : es.lift_x(Rational(x))) {
            auto ord = es.order(p, 12);
            if (ord) pts.emplace_back(*ord, p);
        }
    const int count = static_cast<int>(pts.size()) + 1;
    const int two_torsion = 1 + static_cast<int>(std::count_if(pts.begin(), pts.end(), [](auto& q) { return q.first == 2; }));

    if (two_torsion == 4) {
        out.cyclic = false;
        out.n = count / 2;
        const Point* gen = nullptr;
        for (const auto& [o, p] : pts)
            if (o == out.n) {
                gen = &p;
                break;
            }
        if (gen == nullptr) throw InvalidArgument("torsion structure inconsistent");
        const Point half = es.mul(out.n / 2, *gen);
        for (const auto& [o, p] : pts)
            if (o == 2 && p != half) {
                out.generators = {back(*gen), back(p)};
                break;
            }
    } else {
        out.n = count;
        for (const auto& [o, p] : pts)
            if (o == count) {
                out.generators = {back(p)};
                break;
            }
        if (count > 1 && out.generators.empty()) throw InvalidArgument("torsion structure inconsistent");
    }
    if (!in_mazur_list(out.cyclic, out.n)) throw InvalidArgument("computed torsion " + out.label() + " outside Mazur's list");
    return out;
}

/// Every element of the group, identity first.
inline std::vector<Point> torsion_points(const WeierstrassCurve& e, const TorsionGroup& t) {
    std::vector<Point> out;
    const int second = t.cyclic ? 1 : 2;
    for (int b = 0; b < second; ++b)
        for (int a = 0; a < t.n; ++a) {
            Point p = t.generators.empty() ? Point::infinity() : e.mul(a, t.generators[0]);
            if (b == 1) p = e.add(p, t.generators[1]);
            out.push_back(p);
        }
    return out;
}

}  // namespace hirank

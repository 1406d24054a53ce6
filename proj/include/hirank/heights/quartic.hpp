#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <vector>

#include "hirank/arith/modp.hpp"
#include "hirank/arith/poly.hpp"
#include "hirank/parallel.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(DegenerateSquareQuartic);

/// Q(x) = q0 + q1 x + q2 x^2 + q3 x^3 + q4 x^4.
struct Quartic {
    std::array<Rational, 5> q;

    [[nodiscard]] PolyQ poly() const { return PolyQ(std::vector<Rational>(q.begin(), q.end())); }
    [[nodiscard]] Rational operator()(const Rational& x) const { return poly()(x); }
};

inline Quartic parse_quartic(const std::string& line) {
    std::istringstream is(line);
    Quartic out;
    std::string tok;
    std::size_t i = 0;
    while (is >> tok) {
        if (i == 5) throw ParseError("quartic line needs exactly 5 coefficients");
        out.q[i++] = parse_rational(tok);
    }
    if (i != 5) throw ParseError("quartic line needs exactly 5 coefficients");
    return out;
}

struct QuarticPoint {
    Rational x, y;
};

namespace quartic_detail {

// integer binary form S(m, n) = L^2 * n^4 Q(m / n), a square iff Q(m / n) is
struct IntForm {
    std::array<Integer, 5> c;  // coefficient of m^i n^(4-i)

    [[nodiscard]] Integer operator()(const Integer& m, const Integer& n) const {
        Integer r = 0, mp = 1;
        std::array<Integer, 5> np;
        np[0] = 1;
        for (std::size_t i = 1; i < 5; ++i) np[i] = np[i - 1] * n;
        for (std::size_t i = 0; i < 5; ++i) {
            r += c[i] * mp * np[4 - i];
            mp *= m;
        }
        return r;
    }
};

inline IntForm integer_form(const Quartic& q) {
    Integer l = 1;
    for (const auto& a : q.q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
    IntForm f;
    for (std::size_t i = 0; i < 5; ++i) {
        Rational scaled = q.q[i] * l;
        f.c[i] = scaled.get_num() * l;
    }
    return f;
}

// mask[m * p + n]: S(m, n) mod p is 0 or a nonzero square
struct SieveMask {
    std::uint64_t p;
    std::vector<std::uint8_t> ok;
    double density;
};

inline SieveMask build_mask(const IntForm& f, std::uint64_t p) {
    std::vector<std::uint8_t> sq(p, 0);
    for (std::uint64_t y = 0; y < p; ++y) sq[y * y % p] = 1;
    std::array<std::uint64_t, 5> c{};
    for (std::size_t i = 0; i < 5; ++i) {
        Integer r = f.c[i] % static_cast<unsigned long>(p);
        if (r < 0) r += static_cast<unsigned long>(p);
        c[i] = r.get_ui();
    }
    SieveMask mask{p, std::vector<std::uint8_t>(p * p, 0), 0};
    std::size_t good = 0;
    for (std::uint64_t m = 0; m < p; ++m)
        for (std::uint64_t n = 0; n < p; ++n) {
            std::uint64_t v = 0, mp = 1;
            std::array<std::uint64_t, 5> np{1, n, n * n % p, n * n % p * n % p, n * n % p * n % p * n % p};
            for (std::size_t i = 0; i < 5; ++i) {
                v = (v + c[i] * mp % p * np[4 - i]) % p;
                mp = mp * m % p;
            }
            if (sq[v]) {
                mask.ok[m * p + n] = 1;
                ++good;
            }
        }
    mask.density = static_cast<double>(good) / static_cast<double>(p * p);
    return mask;
}

}  // namespace quartic_detail

inline constexpr std::size_t kQuarticSievePrimes = 16;

/* Sieve primes: the 16 sparsest masks among the first 40 odd primes, ties to
 * the smaller prime, returned in increasing p.
 */
inline std::vector<quartic_detail::SieveMask> quartic_sieve_masks(const Quartic& q) {
    const auto f = quartic_detail::integer_form(q);
    std::vector<quartic_detail::SieveMask> masks;
    for (auto p : modp::primes_below(200)) {
        if (p == 2) continue;
        masks.push_back(quartic_detail::build_mask(f, p));
        if (masks.size() == 40) break;
    }
    std::stable_sort(masks.begin(), masks.end(), [](const auto& a, const auto& b) { return a.density < b.density; });
    masks.resize(kQuarticSievePrimes);
    std::sort(masks.begin(), masks.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
    return masks;
}

/* All (x, y) with y^2 = Q(x), x = m/n in lowest terms, |m|, n <= H.  Both
 * signs of y are listed; output sorted by x then y.
 */
inline std::vector<QuarticPoint> quartic_search(const Quartic& q, long h, unsigned threads = 0) {
    if (h < 1) throw InvalidArgument("height bound must be at least 1");
    if (q.q[4] == 0 && q.q[3] == 0) throw InvalidArgument("quartic needs q4 != 0 or q3 != 0");
    if (poly_sqrt(q.poly())) throw DegenerateSquareQuartic("Q is a perfect square; every x gives a point");
    const auto f = quartic_detail::integer_form(q);
    const auto masks = quartic_sieve_masks(q);
    Integer l = 1;
    for (const auto& a : q.q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());

    std::vector<std::vector<QuarticPoint>> strips(static_cast<std::size_t>(h));
    parallel_for(static_cast<std::size_t>(h), threads, [&](std::size_t k) {
        const long n = static_cast<long>(k) + 1;
        auto& out = strips[k];
        for (long m = -h; m <= h; ++m) {
            if (std::gcd(m, n) != 1) continue;
            bool pass = true;
            for (const auto& mk : masks) {
                const auto p = static_cast<long>(mk.p);
                const auto mr = static_cast<std::size_t>(((m % p) + p) % p), nr = static_cast<std::size_t>(n % p);
                if (!mk.ok[mr * mk.p + nr]) {
                    pass = false;
                    break;
                }
            }
            if (!pass) continue;
            Integer s = f(Integer(m), Integer(n));
            if (s < 0) continue;
            auto r = exact_sqrt(s);
            if (!r) continue;
            // y = r / (L n^2)
            Rational y = make_rational(*r, l * Integer(n) * Integer(n));
            Rational x = make_rational(m, n);
            out.push_back({x, y});
            if (y != 0) out.push_back({x, -y});
        }
    });
    std::vector<QuarticPoint> all;
    for (auto& s : strips) all.insert(all.end(), s.begin(), s.end());
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    return all;
}

}  // namespace hirank

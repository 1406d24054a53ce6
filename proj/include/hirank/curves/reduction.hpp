#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "hirank/arith/modp.hpp"
#include "hirank/arith/poly_mod_p.hpp"
#include "hirank/curves/weierstrass.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(BadReduction);

/// Discriminant of (a1, a2, a3, a4, a6) computed mod p.
inline std::uint64_t discriminant_mod_p(const std::array<std::uint64_t, 5>& a, std::uint64_t p) {
    using namespace modp;
    auto [a1, a2, a3, a4, a6] = a;
    std::uint64_t b2 = add(mul(a1, a1, p), mul(4 % p, a2, p), p);
    std::uint64_t b4 = add(mul(2 % p, a4, p), mul(a1, a3, p), p);
    std::uint64_t b6 = add(mul(a3, a3, p), mul(4 % p, a6, p), p);
    std::uint64_t b8 = sub(add(add(mul(mul(a1, a1, p), a6, p), mul(mul(4 % p, a2, p), a6, p), p),
                               mul(mul(a2, a3, p), a3, p), p),
                           add(mul(mul(a1, a3, p), a4, p), mul(a4, a4, p), p), p);
    std::uint64_t t1 = mul(mul(b2, b2, p), b8, p);
    std::uint64_t t2 = mul(8 % p, mul(mul(b4, b4, p), b4, p), p);
    std::uint64_t t3 = mul(27 % p, mul(b6, b6, p), p);
    std::uint64_t t4 = mul(9 % p, mul(mul(b2, b4, p), b6, p), p);
    return sub(t4, add(add(t1, t2, p), t3, p), p);
}

/// An elliptic curve over F_p with good reduction.
class CurveModP {
public:
    CurveModP(std::uint64_t p, std::array<std::uint64_t, 5> a) : p_(p), a_(a) {
        if (!modp::is_prime(p)) throw InvalidArgument("modulus is not prime");
        for (auto& x : a_) x %= p_;
        if (discriminant_mod_p(a_, p_) == 0) throw BadReduction("discriminant vanishes mod " + std::to_string(p));
    }
    [[nodiscard]] std::uint64_t p() const { return p_; }
    [[nodiscard]] const std::array<std::uint64_t, 5>& coefficients() const { return a_; }

private:
    std::uint64_t p_;
    std::array<std::uint64_t, 5> a_;
};

inline CurveModP reduce_mod_p(const WeierstrassCurve& e, std::uint64_t p) {
    if (!modp::is_prime(p)) throw InvalidArgument("p is not prime");
    std::array<std::uint64_t, 5> a{};
    for (std::size_t i = 0; i < 5; ++i) {
        auto r = reduce_mod(e.coefficients()[i], p);
        if (!r) throw DenominatorDivisibleByP("coefficient a" + std::to_string(i < 4 ? (i < 3 ? i + 1 : 4) : 6) +
                                              " has p = " + std::to_string(p) + " in its denominator");
        a[i] = *r;
    }
    return {p, a};
}

/* Quadratic character tables chi[a] in {-1, 0, 1}, one per prime, built on
 * first use.  Readers share a lock; only a miss takes the exclusive lock.
 */
class SquareTableCache {
public:
    static SquareTableCache& instance() {
        static SquareTableCache cache;
        return cache;
    }

    std::shared_ptr<const std::vector<std::int8_t>> get(std::uint64_t p) {
        {
            std::shared_lock lock(mu_);
            auto it = tables_.find(p);
            if (it != tables_.end()) return it->second;
        }
        auto table = std::make_shared<std::vector<std::int8_t>>(p, std::int8_t{-1});
        (*table)[0] = 0;
        for (std::uint64_t y = 1; y <= p / 2; ++y) (*table)[y * y % p] = 1;
        if (p == 2) (*table)[1] = 1;
        std::unique_lock lock(mu_);
        auto [it, inserted] = tables_.emplace(p, std::move(table));
        return it->second;
    }

private:
    std::shared_mutex mu_;
    std::map<std::uint64_t, std::shared_ptr<const std::vector<std::int8_t>>> tables_;
};

/* #E(F_p) including infinity for coefficients already reduced mod p with
 * nonzero discriminant; the caller guarantees both.  For odd p, completing
 * the square turns the count into p + 1 + sum_x chi(4x^3 + b2 x^2 + 2 b4 x + b6);
 * the cubic is stepped through x = 0..p-1 by finite differences.
 */
inline std::uint64_t count_points_unchecked(std::uint64_t p, const std::array<std::uint64_t, 5>& a,
                                            const std::vector<std::int8_t>& chi) {
    auto [a1, a2, a3, a4, a6] = a;
    if (p == 2) {
        std::uint64_t n = 1;
        for (std::uint64_t x = 0; x < 2; ++x)
            for (std::uint64_t y = 0; y < 2; ++y) {
                std::uint64_t lhs = (y * y + a1 * x * y + a3 * y) % 2;
                std::uint64_t rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
                if (lhs == rhs) ++n;
            }
        return n;
    }
    using namespace modp;
    std::uint64_t b2 = add(mul(a1, a1, p), mul(4, a2, p), p);
    std::uint64_t b4 = add(mul(2, a4, p), mul(a1, a3, p), p);
    std::uint64_t b6 = add(mul(a3, a3, p), mul(4, a6, p), p);
    auto f = [&](std::uint64_t x) {
        return add(mul(add(mul(add(mul(4 % p, x, p), b2, p), x, p), mul(2, b4, p), p), x, p), b6, p);
    };
    // forward differences of a cubic with leading coefficient 4: third difference is 24
    std::uint64_t v = f(0);
    std::uint64_t d1 = sub(f(1), v, p);
    std::uint64_t d2 = sub(sub(f(2), f(1), p), d1, p);
    const std::uint64_t d3 = 24 % p;
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        sum += chi[v];
        v += d1;
        if (v >= p) v -= p;
        d1 += d2;
        if (d1 >= p) d1 -= p;
        d2 += d3;
        if (d2 >= p) d2 -= p;
    }
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 + sum);
}

inline std::uint64_t count_points(const CurveModP& em, const std::vector<std::int8_t>& chi) {
    return count_points_unchecked(em.p(), em.coefficients(), chi);
}

inline std::uint64_t count_points(const CurveModP& em) {
    auto chi = SquareTableCache::instance().get(em.p());
    return count_points(em, *chi);
}

}  // namespace hirank

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hirank/arith/errors.hpp"
#include "hirank/arith/modp.hpp"
#include "hirank/arith/poly.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(DenominatorDivisibleByP);

class PolyModP {
public:
    PolyModP(std::uint64_t p, std::vector<std::uint64_t> c) : p_(p), c_(std::move(c)) {
        if (!modp::is_prime(p)) throw InvalidArgument("modulus is not prime");
        for (auto& a : c_) a %= p_;
        trim();
    }

    /// Reduction of a rational polynomial; throws if p divides a denominator.
    static PolyModP reduce(const PolyQ& f, std::uint64_t p) {
        std::vector<std::uint64_t> c;
        c.reserve(f.coeffs().size());
        for (const auto& a : f.coeffs()) {
            auto r = reduce_mod(a, p);
            if (!r) throw DenominatorDivisibleByP("p = " + std::to_string(p));
            c.push_back(*r);
        }
        return PolyModP(p, std::move(c));
    }

    [[nodiscard]] std::uint64_t modulus() const { return p_; }
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] const std::vector<std::uint64_t>& coeffs() const { return c_; }

    [[nodiscard]] std::uint64_t operator()(std::uint64_t x) const {
        std::uint64_t acc = 0;
        x %= p_;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = modp::add(modp::mul(acc, x, p_), *it, p_);
        return acc;
    }

    friend PolyModP operator+(const PolyModP& a, const PolyModP& b) {
        a.check(b);
        std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = modp::add(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0, a.p_);
        return PolyModP(a.p_, std::move(c));
    }
    friend PolyModP operator-(const PolyModP& a, const PolyModP& b) {
        a.check(b);
        std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = modp::sub(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0, a.p_);
        return PolyModP(a.p_, std::move(c));
    }
    friend PolyModP operator*(const PolyModP& a, const PolyModP& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return PolyModP(a.p_, {});
        std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = modp::add(c[i + j], modp::mul(a.c_[i], b.c_[j], a.p_), a.p_);
        return PolyModP(a.p_, std::move(c));
    }
    friend bool operator==(const PolyModP& a, const PolyModP& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    friend std::pair<PolyModP, PolyModP> divrem(const PolyModP& f, const PolyModP& g) {
        f.check(g);
        if (g.is_zero()) throw DivisionByZero("polynomial division by zero mod p");
        const auto p = f.p_;
        if (f.degree() < g.degree()) return {PolyModP(p, {}), f};
        std::vector<std::uint64_t> r = f.c_;
        std::vector<std::uint64_t> q(static_cast<std::size_t>(f.degree() - g.degree() + 1), 0);
        std::uint64_t inv = modp::inv(g.c_.back(), p);
        for (int i = f.degree() - g.degree(); i >= 0; --i) {
            auto iu = static_cast<std::size_t>(i);
            std::uint64_t t = modp::mul(r[iu + g.c_.size() - 1], inv, p);
            q[iu] = t;
            for (std::size_t j = 0; j < g.c_.size(); ++j) r[iu + j] = modp::sub(r[iu + j], modp::mul(t, g.c_[j], p), p);
        }
        r.resize(g.c_.size() - 1);
        return {PolyModP(p, std::move(q)), PolyModP(p, std::move(r))};
    }

    [[nodiscard]] PolyModP monic() const {
        if (is_zero()) return *this;
        std::uint64_t inv = modp::inv(c_.back(), p_);
        std::vector<std::uint64_t> c = c_;
        for (auto& a : c) a = modp::mul(a, inv, p_);
        return PolyModP(p_, std::move(c));
    }

    [[nodiscard]] PolyModP derivative() const {
        if (c_.size() <= 1) return PolyModP(p_, {});
        std::vector<std::uint64_t> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = modp::mul(c_[i], i % p_, p_);
        return PolyModP(p_, std::move(d));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check(const PolyModP& o) const {
        if (o.p_ != p_) throw InvalidArgument("mixed moduli");
    }
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;
};

inline PolyModP gcd(PolyModP f, PolyModP g) {
    while (!g.is_zero()) {
        auto r = divrem(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

}  // namespace hirank

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hirank/arith/modp.hpp"
#include "hirank/arith/poly_mod_p.hpp"
#include "hirank/curves/reduction.hpp"
#include "hirank/families/family.hpp"
#include "hirank/parallel.hpp"

namespace hirank {

/// Fixed-point weights carry 12 fractional bits.
inline constexpr int kWeightShift = 12;
inline constexpr double kWeightScale = 1 << kWeightShift;

/// round(log(n / p) * 2^12); 0 for the bad-fiber sentinel n = 0.
inline std::int16_t quantize_weight(std::uint64_t n, std::uint64_t p) {
    if (n == 0) return 0;
    double w = std::round(std::log(static_cast<double>(n) / static_cast<double>(p)) * kWeightScale);
    return static_cast<std::int16_t>(w);  // |log(N_p/p)| < 1.1 for every p, far inside int16
}

inline double dequantize(std::int64_t fixed) { return static_cast<double>(fixed) / kWeightScale; }

/// Point counts of every fiber mod p.  counts[t] = 0 marks a bad fiber.
struct NpTable {
    std::uint64_t p = 0;
    std::vector<std::uint32_t> counts;
    std::vector<std::int16_t> weights;
};

struct NpTableSet {
    std::uint64_t family_hash = 0;
    std::uint64_t prime_bound = 0;
    std::vector<NpTable> tables;
    std::vector<std::uint64_t> skipped;  // primes dividing a coefficient denominator
};

/// FNV-1a over the family's coefficient lines; sections do not affect N_p.
inline std::uint64_t family_hash(const CurveFamily& fam) {
    std::uint64_t h = 14695981039346656037ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
    for (std::size_t i = 0; i < 5; ++i) feed(std::string(names[i]) + ": " + to_coeff_list(fam.coefficients()[i]) + "\n");
    return h;
}

inline NpTable build_np_table(const std::array<PolyModP, 5>& a, std::uint64_t p) {
    NpTable tab{p, std::vector<std::uint32_t>(p, 0), std::vector<std::int16_t>(p, 0)};
    auto chi = SquareTableCache::instance().get(p);
    for (std::uint64_t t = 0; t < p; ++t) {
        std::array<std::uint64_t, 5> c{a[0](t), a[1](t), a[2](t), a[3](t), a[4](t)};
        if (discriminant_mod_p(c, p) == 0) continue;
        auto n = count_points_unchecked(p, c, *chi);
        tab.counts[t] = static_cast<std::uint32_t>(n);
        tab.weights[t] = quantize_weight(n, p);
    }
    return tab;
}

/// Tables for all primes p < x, in increasing p; O(sum p^2) work.
inline NpTableSet build_np_tables(const CurveFamily& fam, std::uint64_t x, unsigned threads = 0) {
    if (x < 3) throw InvalidArgument("prime bound must be at least 3");
    NpTableSet set{family_hash(fam), x, {}, {}};
    auto primes = modp::primes_below(x);
    std::vector<std::optional<NpTable>> slots(primes.size());
    // largest primes first so the longest jobs start early
    parallel_for(primes.size(), threads, [&](std::size_t k) {
        std::size_t i = primes.size() - 1 - k;
        std::uint64_t p = primes[i];
        try {
            std::array<PolyModP, 5> a{PolyModP::reduce(fam.a1(), p), PolyModP::reduce(fam.a2(), p),
                                      PolyModP::reduce(fam.a3(), p), PolyModP::reduce(fam.a4(), p),
                                      PolyModP::reduce(fam.a6(), p)};
            slots[i] = build_np_table(a, p);
        } catch (const DenominatorDivisibleByP&) {
        }
    });
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (slots[i])
            set.tables.push_back(std::move(*slots[i]));
        else
            set.skipped.push_back(primes[i]);
    }
    return set;
}

/// Residue of n / d mod p, or nullopt when p | d.
inline std::optional<std::uint64_t> grid_residue(const Integer& n, const Integer& d, std::uint64_t p) {
    return reduce_mod(make_rational(n, d), p);
}

/// Fixed-point sum of weights at t; tables whose prime divides den(t) are skipped.
inline std::int64_t mestre_score_fixed(const NpTableSet& set, const Rational& t) {
    std::int64_t s = 0;
    for (const auto& tab : set.tables)
        if (auto r = reduce_mod(t, tab.p)) s += tab.weights[*r];
    return s;
}

/// sum_p log(N_p(t)/p), each term within 2^-13 of the exact value.
inline double mestre_score(const NpTableSet& set, const Rational& t) {
    if (set.tables.empty()) throw InvalidArgument("no tables");
    return dequantize(mestre_score_fixed(set, t));
}

}  // namespace hirank

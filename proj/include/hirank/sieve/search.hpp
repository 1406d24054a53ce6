#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hirank/sieve/tables.hpp"

namespace hirank {

struct SieveConfig {
    std::int64_t t0 = 0, t1 = 0;  // numerators n in [t0, t1]; t = n / denominator
    std::int64_t denominator = 1;
    std::size_t top_k = 10;
    std::size_t block_size = std::size_t{1} << 20;
    unsigned threads = 0;
};

struct Candidate {
    Rational t;
    std::int64_t fixed = 0;  // exact fixed-point total
    double score = 0;

    friend bool operator==(const Candidate& a, const Candidate& b) { return a.t == b.t && a.fixed == b.fixed; }
};

/// Higher score first, then smaller t.
inline bool better(const Candidate& a, const Candidate& b) {
    if (a.fixed != b.fixed) return a.fixed > b.fixed;
    return a.t < b.t;
}

/* Fixed-point totals for n in [n0, n0 + len): one stride pass per table and
 * residue class.  Bitwise equal to mestre_score_fixed at each n / d.  For
 * p | d the term is present only where p^e | n (e = v_p(d)), so the pattern
 * has period p^(e+1) instead of p.
 */
inline std::vector<std::int32_t> sieve_block(const NpTableSet& set, std::int64_t n0, std::size_t len, std::int64_t d) {
    std::vector<std::int32_t> acc(len, 0);
    const Integer den(static_cast<long>(d));
    auto stride_add = [&](std::size_t j, std::size_t period, std::int32_t w) {
        if (w != 0)
            for (std::size_t i = j; i < len; i += period) acc[i] += w;
    };
    for (const auto& tab : set.tables) {
        const std::uint64_t p = tab.p;
        if (d % static_cast<std::int64_t>(p) != 0) {
            std::uint64_t r = *grid_residue(Integer(static_cast<long>(n0)), den, p);
            const std::uint64_t step = *grid_residue(Integer(1), den, p);  // d^{-1} mod p
            for (std::size_t j = 0; j < std::min<std::size_t>(p, len); ++j) {
                stride_add(j, p, tab.weights[r]);
                r += step;
                if (r >= p) r -= p;
            }
            continue;
        }
        std::size_t period = p;
        for (std::int64_t q = d; q % static_cast<std::int64_t>(p) == 0; q /= static_cast<std::int64_t>(p)) period *= p;
        for (std::size_t j = 0; j < std::min(period, len); ++j)
            if (auto r = grid_residue(Integer(static_cast<long>(n0 + static_cast<std::int64_t>(j))), den, p))
                stride_add(j, period, tab.weights[*r]);
    }
    return acc;
}

inline void keep_top(std::vector<Candidate>& top, std::size_t k) {
    std::sort(top.begin(), top.end(), better);
    if (top.size() > k) top.resize(k);
}

/// The top_k grid points by Mestre score; deterministic for any thread count.
inline std::vector<Candidate> sieve_search(const NpTableSet& set, const SieveConfig& cfg) {
    if (cfg.t0 > cfg.t1) throw InvalidArgument("empty range: T0 > T1");
    if (cfg.top_k < 1) throw InvalidArgument("top_k must be at least 1");
    if (cfg.denominator < 1) throw InvalidArgument("denominator must be positive");
    if (cfg.block_size < 1) throw InvalidArgument("block size must be positive");
    const auto total = static_cast<std::uint64_t>(cfg.t1 - cfg.t0) + 1;
    const std::size_t nblocks = (total + cfg.block_size - 1) / cfg.block_size;
    std::vector<std::vector<Candidate>> per_block(nblocks);
    parallel_for(nblocks, cfg.threads, [&](std::size_t b) {
        const std::int64_t n0 = cfg.t0 + static_cast<std::int64_t>(b * cfg.block_size);
        const std::size_t len = std::min<std::uint64_t>(cfg.block_size, total - b * cfg.block_size);
        auto acc = sieve_block(set, n0, len, cfg.denominator);
        // indices of the k best in this block, ties to smaller n
        std::vector<std::size_t> idx(len);
        for (std::size_t i = 0; i < len; ++i) idx[i] = i;
        const std::size_t k = std::min(cfg.top_k, len);
        auto cmp = [&](std::size_t a, std::size_t c) { return acc[a] != acc[c] ? acc[a] > acc[c] : a < c; };
        std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), cmp);
        auto& out = per_block[b];
        for (std::size_t i = 0; i < k; ++i) {
            const std::int64_t n = n0 + static_cast<std::int64_t>(idx[i]);
            out.push_back({make_rational(Integer(static_cast<long>(n)), Integer(static_cast<long>(cfg.denominator))),
                           acc[idx[i]], dequantize(acc[idx[i]])});
        }
    });
    std::vector<Candidate> top;
    for (auto& v : per_block) top.insert(top.end(), v.begin(), v.end());
    keep_top(top, cfg.top_k);
    return top;
}

/// Reference scorer: mestre_score_fixed at every grid point.
inline std::vector<Candidate> naive_search(const NpTableSet& set, const SieveConfig& cfg) {
    std::vector<Candidate> all;
    for (std::int64_t n = cfg.t0; n <= cfg.t1; ++n) {
        Rational t = make_rational(Integer(static_cast<long>(n)), Integer(static_cast<long>(cfg.denominator)));
        auto f = mestre_score_fixed(set, t);
        all.push_back({t, f, dequantize(f)});
    }
    keep_top(all, cfg.top_k);
    return all;
}

}  // namespace hirank

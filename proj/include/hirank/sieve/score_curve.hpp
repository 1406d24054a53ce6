#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hirank/arith/modp.hpp"
#include "hirank/curves/reduction.hpp"
#include "hirank/curves/weierstrass.hpp"

namespace hirank {

struct CurveScore {
    double score = 0;  // sum over good p < x of log(N_p / p)
    std::size_t primes_used = 0;
    std::vector<std::uint64_t> skipped;  // bad reduction or p | denominator
};

/// Mestre score of a single curve over Q, in double precision.
inline CurveScore score_curve(const WeierstrassCurve& e, std::uint64_t x) {
    if (x < 3) throw InvalidArgument("prime bound must be at least 3");
    CurveScore out;
    for (auto p : modp::primes_below(x)) {
        std::array<std::uint64_t, 5> a{};
        bool ok = true;
        for (std::size_t i = 0; i < 5 && ok; ++i) {
            auto r = reduce_mod(e.coefficients()[i], p);
            if (r)
                a[i] = *r;
            else
                ok = false;
        }
        if (!ok || discriminant_mod_p(a, p) == 0) {
            out.skipped.push_back(p);
            continue;
        }
        auto n = count_points_unchecked(p, a, *SquareTableCache::instance().get(p));
        out.score += std::log(static_cast<double>(n) / static_cast<double>(p));
        ++out.primes_used;
    }
    return out;
}

}  // namespace hirank

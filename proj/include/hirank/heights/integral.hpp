#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "hirank/curves/torsion.hpp"
#include "hirank/heights/gram.hpp"

namespace hirank {

struct SpanBound {
    long box = 0;                      // |n_i| <= box
    std::optional<double> height_cap;  // keep n with n^T G n <= cap
};

struct IntegralPoint {
    Point point;                 // the member of {P, -P} with the larger y
    std::vector<long> coeffs;    // P = sum coeffs_i gens_i + torsion[torsion_index]
    std::size_t torsion_index = 0;
    double hhat = 0;             // n^T G n
};

/* Integral-x points among sum n_i g_i + T, |n_i| <= box, T torsion, visited
 * in increasing order of the height form n^T G n (ties lexicographic).
 * Pairs (x, +-y) are reported once.
 */
inline std::vector<IntegralPoint> integral_points_in_span(const WeierstrassCurve& e, const std::vector<Point>& gens,
                                                          const SpanBound& bound,
                                                          std::optional<std::vector<Point>> torsion = std::nullopt) {
    if (bound.box < 0) throw InvalidArgument("box must be nonnegative");
    for (const auto& g : gens)
        if (!e.contains(g)) throw InvalidArgument("generator " + to_string(g) + " is not on the curve");
    const std::vector<Point> tors = torsion ? *torsion : torsion_points(e, torsion_subgroup(e));
    const std::size_t r = gens.size();
    const auto gram = height_gram(e, gens);

    std::vector<std::pair<double, std::vector<long>>> vecs;
    std::vector<long> n(r, -bound.box);
    for (;;) {
        double q = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) q += static_cast<double>(n[i] * n[j]) * gram.matrix[i][j];
        if (!bound.height_cap || q <= *bound.height_cap) vecs.emplace_back(q, n);
        std::size_t k = 0;
        while (k < r && ++n[k] > bound.box) n[k++] = -bound.box;
        if (k == r) break;
    }
    std::stable_sort(vecs.begin(), vecs.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    });

    // multiples[i][m + box] = m g_i
    std::vector<std::vector<Point>> multiples(r);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Point> pos{Point::infinity()};
        for (long m = 1; m <= bound.box; ++m) pos.push_back(e.add(pos.back(), gens[i]));
        for (long m = -bound.box; m <= bound.box; ++m)
            multiples[i].push_back(m >= 0 ? pos[static_cast<std::size_t>(m)] : e.negate(pos[static_cast<std::size_t>(-m)]));
    }

    std::vector<IntegralPoint> out;
    std::map<Rational, bool> seen;
    for (const auto& [q, coeffs] : vecs) {
        Point s = Point::infinity();
        for (std::size_t i = 0; i < r; ++i) s = e.add(s, multiples[i][static_cast<std::size_t>(coeffs[i] + bound.box)]);
        for (std::size_t t = 0; t < tors.size(); ++t) {
            Point p = e.add(s, tors[t]);
            if (p.is_infinity() || !is_integral(p.x()) || seen.count(p.x())) continue;
            seen[p.x()] = true;
            Point m = e.negate(p);
            out.push_back({m.y() > p.y() ? m : p, coeffs, t, q});
        }
    }
    return out;
}

}  // namespace hirank

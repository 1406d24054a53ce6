#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "hirank/lattices/lattice.hpp"
#include "hirank/parallel.hpp"

namespace hirank {

struct ShortVector {
    IntVector coords;
    Integer norm;
};

namespace lattice_detail {

/* Quadratic form in Fincke-Pohst shape:
 *   x^T G x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2.
 * Long double is ample for the ranks and entry sizes handled here; every
 * candidate is re-checked exactly, and the pruning bound carries slack.
 */
struct PohstForm {
    std::size_t n = 0;
    std::vector<std::vector<long double>> q;
};

inline PohstForm pohst_form(const IntLattice& l) {
    require_positive_definite(l);
    const std::size_t n = l.rank();
    PohstForm f{n, std::vector<std::vector<long double>>(n, std::vector<long double>(n, 0))};
    auto& q = f.q;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) q[i][j] = static_cast<long double>(l(i, j).get_d());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = k; j < n; ++j) q[k][j] -= q[k][i] * q[i][j];
    }
    return f;
}

inline long double slack(long double b) { return b * 1e-9L + 1e-9L; }

/* Visit every integer x with sum q_ii (x_i - t_i + sum_{j>i} q_ij (x_j - t_j))^2
 * <= bound(), levels n-1 .. 0.  `bound` is re-read at every node so callers
 * may shrink it.  The top coordinate may be pinned to `top`.
 */
template <typename Bound, typename Visit>
void pohst_enumerate(const PohstForm& f, const std::vector<long double>& t, Bound bound, Visit visit,
                     std::optional<long> top = std::nullopt) {
    const std::size_t n = f.n;
    std::vector<long> x(n, 0);
    std::function<void(std::size_t, long double)> rec = [&](std::size_t lvl, long double used) {
        long double c = t[lvl];
        for (std::size_t j = lvl + 1; j < n; ++j) c -= f.q[lvl][j] * (static_cast<long double>(x[j]) - t[j]);
        const long double room = bound() - used;
        if (room < -slack(bound())) return;
        const long double r = std::sqrt(std::max<long double>(room + slack(bound()), 0) / f.q[lvl][lvl]);
        long lo = static_cast<long>(std::ceil(c - r)), hi = static_cast<long>(std::floor(c + r));
        if (lvl + 1 == n && top) {
            if (*top < lo || *top > hi) return;
            lo = hi = *top;
        }
        for (long v = lo; v <= hi; ++v) {
            const long double d = static_cast<long double>(v) - c;
            const long double u = used + f.q[lvl][lvl] * d * d;
            if (u > bound() + slack(bound())) continue;
            x[lvl] = v;
            if (lvl == 0)
                visit(x);
            else
                rec(lvl - 1, u);
        }
        x[lvl] = 0;
    };
    if (n > 0) rec(n - 1, 0);
}

inline bool sign_canonical(const IntVector& v) {
    for (const auto& c : v)
        if (c != 0) return c > 0;
    return false;
}

}  // namespace lattice_detail

/* All v with 0 < v.v <= bound, one of each pair +-v (first nonzero
 * coordinate positive), sorted by norm then coordinates.  The range of the
 * last coordinate is split across threads.
 */
inline std::vector<ShortVector> short_vectors(const IntLattice& l, const Integer& bound, unsigned threads = 0) {
    using namespace lattice_detail;
    const auto f = pohst_form(l);
    const std::size_t n = l.rank();
    if (n == 0 || bound <= 0) return {};
    const long double b = static_cast<long double>(bound.get_d());
    const std::vector<long double> t(n, 0);
    const long top = static_cast<long>(std::floor(std::sqrt((b + slack(b)) / f.q[n - 1][n - 1])));
    std::vector<std::vector<ShortVector>> parts(static_cast<std::size_t>(2 * top + 1));
    parallel_for(parts.size(), threads, [&](std::size_t k) {
        pohst_enumerate(
            f, t, [&] { return b; },
            [&](const std::vector<long>& x) {
                IntVector v(x.begin(), x.end());
                if (!sign_canonical(v)) return;
                Integer nv = l.norm(v);
                if (nv > 0 && nv <= bound) parts[k].push_back({std::move(v), std::move(nv)});
            },
            static_cast<long>(k) - top);
    });
    std::vector<ShortVector> out;
    for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.norm != b.norm ? a.norm < b.norm : a.coords < b.coords;
    });
    return out;
}

/// Minimal norm over the coset c + 2L and a representative attaining it.
inline ShortVector coset_minimum(const IntLattice& l, const lattice_detail::PohstForm& f, const IntVector& c) {
    using namespace lattice_detail;
    const std::size_t n = l.rank();
    // |c + 2x|^2 = 4 |x - t|^2 with t = -c / 2
    std::vector<long double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = -static_cast<long double>(c[i].get_d()) / 2;
    ShortVector best{c, l.norm(c)};
    long double b = static_cast<long double>(best.norm.get_d()) / 4;
    pohst_enumerate(
        f, t, [&] { return b; },
        [&](const std::vector<long>& x) {
            IntVector v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = c[i] + 2 * Integer(x[i]);
            Integer nv = l.norm(v);
            if (nv < best.norm || (nv == best.norm && v < best.coords)) {
                best = {std::move(v), nv};
                b = static_cast<long double>(best.norm.get_d()) / 4;
            }
        });
    return best;
}

}  // namespace hirank

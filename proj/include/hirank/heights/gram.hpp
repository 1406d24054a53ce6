#pragma once

#include <algorithm>
#include <vector>

#include "hirank/arith/interval.hpp"
#include "hirank/heights/canonical.hpp"
#include "hirank/parallel.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(InconclusiveTolerance);

inline constexpr double kDefaultRankTol = 1e-5;

/// Height pairing matrix with a per-entry error bound.
struct HeightGram {
    std::vector<Point> points;
    std::vector<std::vector<double>> matrix;
    std::vector<std::vector<double>> error;

    [[nodiscard]] double max_error() const {
        double m = 0;
        for (const auto& row : error)
            for (double v : row) m = std::max(m, v);
        return m;
    }
};

/// Gram matrix of the height pairing; entries computed in parallel.
inline HeightGram height_gram(const WeierstrassCurve& e, const std::vector<Point>& pts, double eps = kDefaultHeightEps,
                              unsigned threads = 0) {
    for (const auto& p : pts)
        if (!e.contains(p)) throw InvalidArgument("point " + to_string(p) + " is not on the curve");
    const std::size_t n = pts.size();
    HeightGram g{pts, std::vector<std::vector<double>>(n, std::vector<double>(n, 0)),
                 std::vector<std::vector<double>>(n, std::vector<double>(n, 0))};
    std::vector<HeightValue> diag(n);
    parallel_for(n, threads, [&](std::size_t i) { diag[i] = canonical_height_bounds(e, pts[i], eps); });
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<HeightValue> off(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t k) {
        off[k] = canonical_height_bounds(e, e.add(pts[pairs[k].first], pts[pairs[k].second]), eps);
    });
    for (std::size_t i = 0; i < n; ++i) {
        g.matrix[i][i] = diag[i].value;
        g.error[i][i] = diag[i].error;
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [i, j] = pairs[k];
        double v = (off[k].value - diag[i].value - diag[j].value) / 2;
        double err = (off[k].error + diag[i].error + diag[j].error) / 2 * (1 + 1e-12) + std::abs(v) * 0x1p-50;
        g.matrix[i][j] = g.matrix[j][i] = v;
        g.error[i][j] = g.error[j][i] = err;
    }
    return g;
}

struct RankCertificate {
    std::size_t rank = 0;                 // certified lower bound
    std::vector<std::size_t> independent; // indices into the input, ascending
    double regulator = 1;                 // Gram determinant of the independent subset
};

/* Symmetric LDL^T with diagonal pivoting on interval entries.  A pivot is
 * accepted when its interval lies above tol; elimination stops when every
 * remaining diagonal lies below tol; anything straddling tol is reported.
 */
inline RankCertificate gram_rank(const HeightGram& g, double tol = kDefaultRankTol) {
    const std::size_t n = g.points.size();
    const mpfr_prec_t prec = 128;
    std::vector<std::vector<Interval>> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i].emplace_back(g.matrix[i][j] - g.error[i][j], g.matrix[i][j] + g.error[i][j], prec);
    std::vector<std::size_t> remaining(n);
    for (std::size_t i = 0; i < n; ++i) remaining[i] = i;
    RankCertificate cert;
    Interval det(Rational(1), prec);
    while (!remaining.empty()) {
        std::size_t best = remaining.front();
        for (auto i : remaining)
            if (m[i][i].lower() > m[best][best].lower()) best = i;
        if (!(m[best][best].lower() > tol)) {
            for (auto i : remaining)
                if (m[i][i].upper() >= tol)
                    throw InconclusiveTolerance("pivot for point " + std::to_string(i) + " lies in [" +
                                                std::to_string(m[i][i].lower()) + ", " + std::to_string(m[i][i].upper()) +
                                                "], which contains tol = " + std::to_string(tol));
            break;
        }
        remaining.erase(std::find(remaining.begin(), remaining.end(), best));
        const Interval piv = m[best][best];
        det = det * piv;
        for (auto i : remaining) {
            const Interval f = m[i][best] / piv;
            for (auto j : remaining) m[i][j] = m[i][j] - f * m[best][j];
        }
        cert.independent.push_back(best);
        ++cert.rank;
    }
    std::sort(cert.independent.begin(), cert.independent.end());
    cert.regulator = det.mid();
    return cert;
}

inline RankCertificate gram_rank(const WeierstrassCurve& e, const std::vector<Point>& pts, double eps = kDefaultHeightEps,
                                 double tol = kDefaultRankTol, unsigned threads = 0) {
    return gram_rank(height_gram(e, pts, eps, threads), tol);
}

}  // namespace hirank

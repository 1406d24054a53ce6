#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hirank/arith/errors.hpp"
#include "hirank/arith/rational.hpp"

// Exact dense linear algebra over Q and Z.
namespace hirank::linalg {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

inline std::size_t cols(const auto& m) { return m.empty() ? 0 : m.front().size(); }

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    const std::size_t nr = m.size(), nc = cols(m);
    std::size_t row = 0;
    for (std::size_t c = 0; c < nc && row < nr; ++c) {
        std::size_t sel = row;
        while (sel < nr && m[sel][c] == 0) ++sel;
        if (sel == nr) continue;
        std::swap(m[row], m[sel]);
        Rational inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < nr; ++r) {
            if (r == row || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t j = c; j < nc; ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

/// Basis of {x : m x = 0}.
inline RatMatrix nullspace(RatMatrix m) {
    const std::size_t nc = cols(m);
    auto piv = rref(m);
    std::vector<bool> is_piv(nc, false);
    for (auto c : piv) is_piv[c] = true;
    RatMatrix basis;
    for (std::size_t free = 0; free < nc; ++free) {
        if (is_piv[free]) continue;
        RatVector v(nc, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some solution of a x = b, or nullopt when inconsistent.
inline std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
    RatMatrix aug = a;
    const std::size_t n = cols(a);
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == n) return std::nullopt;
    RatVector x(n, Rational(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][n];
    return x;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
    const std::size_t n = a.size();
    RatMatrix aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        aug[i].resize(2 * n, Rational(0));
        aug[i][n + i] = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    RatMatrix inv(n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

/// Fraction-free Bareiss determinant.
inline Integer det(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t sel = k + 1;
            while (sel < n && m[sel][k] == 0) ++sel;
            if (sel == n) return 0;
            std::swap(m[k], m[sel]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline Rational det(const RatMatrix& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Integer den = 1;
    for (const auto& row : a)
        for (const auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IntMatrix m(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational s = a[i][j] * den;
            m[i][j] = s.get_num();
        }
    return make_rational(det(std::move(m)), integer_pow(den, n));
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = cols(b);
    IntMatrix c(n, IntVector(m, Integer(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

inline IntMatrix transpose(const IntMatrix& a) {
    IntMatrix t(cols(a), IntVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

/* Integer row echelon form by unimodular row operations.  `companion`, if
 * given, receives the same row operations (so starting from the identity
 * it accumulates the transform).  Returns the number of nonzero rows,
 * which come first.
 */
inline std::size_t row_echelon(IntMatrix& m, IntMatrix* companion = nullptr) {
    const std::size_t nr = m.size(), nc = cols(m);
    std::size_t row = 0;
    auto combine = [&](std::size_t a, std::size_t b, const Integer& u, const Integer& v, const Integer& s,
                       const Integer& t) {
        // (row_a, row_b) <- (u row_a + v row_b, s row_a + t row_b), u t - v s = +-1
        auto apply = [&](IntMatrix& mm) {
            for (std::size_t j = 0; j < mm[a].size(); ++j) {
                Integer x = mm[a][j], y = mm[b][j];
                mm[a][j] = u * x + v * y;
                mm[b][j] = s * x + t * y;
            }
        };
        apply(m);
        if (companion) apply(*companion);
    };
    for (std::size_t c = 0; c < nc && row < nr; ++c) {
        for (std::size_t r = row + 1; r < nr; ++r) {
            if (m[r][c] == 0) continue;
            if (m[row][c] == 0) {
                std::swap(m[row], m[r]);
                if (companion) std::swap((*companion)[row], (*companion)[r]);
                continue;
            }
            Integer g, u, v;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), m[row][c].get_mpz_t(), m[r][c].get_mpz_t());
            Integer s = -m[r][c] / g, t = m[row][c] / g;
            combine(row, r, u, v, s, t);
        }
        if (m[row][c] == 0) continue;
        if (m[row][c] < 0) {
            for (auto& x : m[row]) x = -x;
            if (companion)
                for (auto& x : (*companion)[row]) x = -x;
        }
        // reduce entries above the pivot to keep numbers small
        for (std::size_t r = 0; r < row; ++r) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m[r][c].get_mpz_t(), m[row][c].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t j = 0; j < nc; ++j) m[r][j] -= q * m[row][j];
            if (companion)
                for (std::size_t j = 0; j < (*companion)[r].size(); ++j) (*companion)[r][j] -= q * (*companion)[row][j];
        }
        ++row;
    }
    return row;
}

/// Z-basis (Hermite form rows) of the lattice spanned by the rows of m.
inline IntMatrix row_basis(IntMatrix m) {
    auto r = row_echelon(m);
    m.resize(r);
    return m;
}

/// Z-basis of {x in Z^n : a x = 0} for a k x n integer matrix a.
inline IntMatrix integer_kernel(const IntMatrix& a, std::size_t n) {
    IntMatrix t(n, IntVector(a.size(), Integer(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) t[j][i] = a[i][j];
    IntMatrix u(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto r = a.empty() ? 0 : row_echelon(t, &u);
    return IntMatrix(u.begin() + static_cast<std::ptrdiff_t>(r), u.end());
}

/// Elementary divisors (nonzero diagonal of the Smith form), ascending.
inline std::vector<Integer> elementary_divisors(IntMatrix m) {
    const std::size_t nr = m.size(), nc = cols(m);
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < nr && t < nc) {
        // find a nonzero pivot of minimal absolute value in the remaining block
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j)
                if (m[i][j] != 0 && (!found || abs(m[i][j]) < abs(m[pi][pj]))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        std::swap(m[t], m[pi]);
        for (auto& row : m) std::swap(row[t], row[pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (m[i][t] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t j = t; j < nc; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (m[t][j] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t i = t; i < nr; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (auto& row : m) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility: pivot must divide the rest of the block
                for (std::size_t i = t + 1; i < nr && clean; ++i)
                    for (std::size_t j = t + 1; j < nc; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            for (std::size_t c = t; c < nc; ++c) m[t][c] += m[i][c];
                            clean = false;
                            break;
                        }
            }
        }
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    return diag;
}

}  // namespace hirank::linalg

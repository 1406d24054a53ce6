#pragma once

#include <array>
#include <bitset>
#include <vector>

#include "hirank/lattices/lattice.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(NonIntegralGlue);
HIRANK_DOMAIN_ERROR(OddGlue);

namespace lattice_detail {

inline IntLattice cartan(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    IntMatrix g(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = 2;
    for (auto [i, j] : edges) g[i][j] = g[j][i] = -1;
    return IntLattice(std::move(g));
}

inline std::vector<std::pair<std::size_t, std::size_t>> chain(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return e;
}

}  // namespace lattice_detail

inline IntLattice a_n(std::size_t n) {
    if (n < 1) throw InvalidArgument("A_n needs n >= 1");
    return lattice_detail::cartan(n, lattice_detail::chain(n));
}

/// Simple roots e_i - e_{i+1} (i < n) and e_{n-1} + e_n.
inline IntLattice d_n(std::size_t n) {
    if (n < 4) throw InvalidArgument("D_n needs n >= 4");
    auto e = lattice_detail::chain(n - 1);
    e.emplace_back(n - 3, n - 1);
    return lattice_detail::cartan(n, e);
}

/// Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 on node 4.
inline IntLattice e_n(std::size_t n) {
    if (n < 6 || n > 8) throw InvalidArgument("E_n needs 6 <= n <= 8");
    std::vector<std::pair<std::size_t, std::size_t>> e{{0, 2}, {1, 3}, {2, 3}};
    for (std::size_t i = 3; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return lattice_detail::cartan(n, e);
}

inline IntLattice hyperbolic_plane() { return IntLattice(IntMatrix{{Integer(0), Integer(1)}, {Integer(1), Integer(0)}}); }

inline IntLattice diagonal_lattice(const std::vector<long>& d) {
    IntMatrix g(d.size(), IntVector(d.size(), Integer(0)));
    for (std::size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
    return IntLattice(std::move(g));
}

/* Lattice generated by R and rational glue vectors (coordinates in R's
 * basis).  The result is expressed in a Hermite basis of that span.
 */
struct GluedLattice {
    IntLattice lattice;
    linalg::RatMatrix basis;  // rows in R coordinates
};

inline GluedLattice build_glued_lattice_with_basis(const IntLattice& r, const std::vector<linalg::RatVector>& glue) {
    const std::size_t n = r.rank();
    Integer den = 1;
    for (const auto& g : glue) {
        if (g.size() != n) throw InvalidArgument("glue vector length differs from rank of R");
        for (const auto& c : g) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    for (const auto& g : glue) {
        Rational self = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) self += g[i] * r(i, j) * g[j];
        if (!is_integral(self)) throw NonIntegralGlue("glue vector has self-pairing " + to_string(self));
    }
    IntMatrix gens;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector row(n, Integer(0));
        row[i] = den;
        gens.push_back(std::move(row));
    }
    for (const auto& g : glue) {
        IntVector row(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational scaled = g[i] * den;
            row[i] = scaled.get_num();
        }
        gens.push_back(std::move(row));
    }
    const IntMatrix b = linalg::row_basis(gens);
    const Integer den2 = den * den;
    IntMatrix gram(b.size(), IntVector(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i; j < b.size(); ++j) {
            const Integer v = r.dot(b[i], b[j]);
            if (v % den2 != 0) throw NonIntegralGlue("glued lattice has a non-integral pairing");
            gram[i][j] = gram[j][i] = v / den2;
        }
    for (std::size_t i = 0; i < b.size(); ++i)
        if (gram[i][i] % 2 != 0) throw OddGlue("glued lattice is not even");
    GluedLattice out{IntLattice(std::move(gram)), {}};
    for (const auto& row : b) {
        linalg::RatVector v;
        for (const auto& c : row) v.push_back(make_rational(c, den));
        out.basis.push_back(std::move(v));
    }
    return out;
}

inline IntLattice build_glued_lattice(const IntLattice& r, const std::vector<linalg::RatVector>& glue) {
    return build_glued_lattice_with_basis(r, glue).lattice;
}

/// Coordinates of (1/2, ..., 1/2) in the simple-root basis of D_n.
inline linalg::RatVector d_n_half_spin_glue(std::size_t n) {
    // rows of emb are the simple roots in R^n
    linalg::RatMatrix emb_t(n, linalg::RatVector(n, Rational(0)));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        emb_t[i][i] = 1;
        emb_t[i + 1][i] = -1;
    }
    emb_t[n - 2][n - 1] = 1;
    emb_t[n - 1][n - 1] = 1;
    auto c = linalg::solve(emb_t, linalg::RatVector(n, make_rational(1, 2)));
    if (!c) throw InvalidArgument("D_n embedding is singular");
    return *c;
}

/// D_n^+ = D_n plus the half-spin glue; even unimodular for n divisible by 8.
inline IntLattice d_n_plus(std::size_t n) { return build_glued_lattice(d_n(n), {d_n_half_spin_glue(n)}); }

/// Extended binary Golay code: cyclic code of length 23 with generator
/// x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1, plus an overall parity bit.
inline std::vector<std::bitset<24>> golay_generators() {
    const std::array<int, 7> g{0, 2, 4, 5, 6, 10, 11};
    std::vector<std::bitset<24>> rows;
    for (int s = 0; s < 12; ++s) {
        std::bitset<24> r;
        for (int e : g) r.set(static_cast<std::size_t>(e + s));
        if (r.count() % 2) r.set(23);
        rows.push_back(r);
    }
    return rows;
}

inline IntLattice niemeier_e8_cubed() { return direct_sum({e_n(8), e_n(8), e_n(8)}); }

inline IntLattice niemeier_d16_e8() { return direct_sum({d_n_plus(16), e_n(8)}); }

/// A1^24 glued by the Golay code: coordinates c/2 for codewords c.
inline IntLattice niemeier_a1_24() {
    std::vector<linalg::RatVector> glue;
    for (const auto& c : golay_generators()) {
        linalg::RatVector v(24, Rational(0));
        for (std::size_t i = 0; i < 24; ++i)
            if (c.test(i)) v[i] = make_rational(1, 2);
        glue.push_back(std::move(v));
    }
    return build_glued_lattice(diagonal_lattice(std::vector<long>(24, 2)), glue);
}

}  // namespace hirank

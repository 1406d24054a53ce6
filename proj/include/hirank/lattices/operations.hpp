#pragma once

#include <algorithm>
#include <vector>

#include "hirank/arith/modp.hpp"
#include "hirank/lattices/enumeration.hpp"
#include "hirank/lattices/roots.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(DependentS);
HIRANK_DOMAIN_ERROR(BadNeighborVector);
HIRANK_DOMAIN_ERROR(RankTooLarge);

struct Complement {
    IntLattice lattice;
    IntMatrix basis;  // rows in the coordinates of L
};

/// Primitive sublattice {v in L : v.s = 0 for s in S}.
inline Complement orthogonal_complement_with_basis(const IntLattice& l, const IntMatrix& s) {
    for (const auto& v : s)
        if (v.size() != l.rank()) throw InvalidArgument("vector length differs from rank");
    linalg::RatMatrix sq;
    for (const auto& v : s) sq.emplace_back(v.begin(), v.end());
    if (linalg::rank(sq) != s.size()) throw DependentS("vectors of S are linearly dependent");
    IntMatrix a;
    for (const auto& v : s) a.push_back(l.pairings(v));
    IntMatrix k = s.empty() ? IntMatrix{} : linalg::integer_kernel(a, l.rank());
    if (s.empty())
        for (std::size_t i = 0; i < l.rank(); ++i) {
            IntVector e(l.rank(), Integer(0));
            e[i] = 1;
            k.push_back(std::move(e));
        }
    IntLattice sub = l.sublattice(k);
    return {std::move(sub), std::move(k)};
}

inline IntLattice orthogonal_complement(const IntLattice& l, const IntMatrix& s) {
    return orthogonal_complement_with_basis(l, s).lattice;
}

/* N_ess: the complement of span(f, s) with the pairing negated.  Requires
 * f.f = 0, s.f = 1, s.s = -2 and NS of signature (1, n - 1).
 */
inline Complement essential_lattice_with_basis(const IntLattice& ns, const IntVector& f, const IntVector& s) {
    if (f.size() != ns.rank() || s.size() != ns.rank()) throw PreconditionFailed("vector length differs from rank");
    if (ns.norm(f) != 0) throw PreconditionFailed("fiber class must have f.f = 0, got " + to_string(ns.norm(f)));
    if (ns.dot(s, f) != 1) throw PreconditionFailed("zero section must have s.f = 1, got " + to_string(ns.dot(s, f)));
    if (ns.norm(s) != -2) throw PreconditionFailed("zero section must have s.s = -2, got " + to_string(ns.norm(s)));
    const auto sig = signature(ns.gram());
    if (sig.positive != 1 || sig.zero != 0)
        throw PreconditionFailed("NS must be nondegenerate of signature (1, n - 1)");
    auto c = orthogonal_complement_with_basis(ns, {f, s});
    c.lattice = c.lattice.scaled(-1);
    return c;
}

inline IntLattice essential_lattice(const IntLattice& ns, const IntVector& f, const IntVector& s) {
    return essential_lattice_with_basis(ns, f, s).lattice;
}

struct Neighbor {
    IntLattice lattice;
    IntMatrix basis_times_p;  // rows: p times the new basis, in L coordinates
};

/// L' = {x in L : x.v = 0 mod p} + Z v/p.
inline Neighbor p_neighbor_with_basis(const IntLattice& l, const IntVector& v, unsigned long p) {
    if (!modp::is_prime(p)) throw InvalidArgument("neighbor step needs a prime p");
    if (v.size() != l.rank()) throw BadNeighborVector("vector length differs from rank");
    if (!lattice_invariants(l).even) throw InvalidArgument("neighbors are defined here for even lattices");
    const Integer pz(p);
    if (std::all_of(v.begin(), v.end(), [&](const Integer& c) { return c % pz == 0; }))
        throw BadNeighborVector("v lies in pL");
    if (l.norm(v) % (2 * pz * pz) != 0) throw BadNeighborVector("v.v must be divisible by 2p^2");
    const IntVector w = l.pairings(v);
    if (std::all_of(w.begin(), w.end(), [&](const Integer& c) { return c % pz == 0; }))
        throw BadNeighborVector("v pairs to 0 mod p with all of L");
    // L0 = projection of {(x, t) : w.x + p t = 0}
    IntMatrix row{w};
    row[0].push_back(pz);
    IntMatrix gens;
    for (auto k : linalg::integer_kernel(row, l.rank() + 1)) {
        k.pop_back();
        for (auto& c : k) c *= pz;
        gens.push_back(std::move(k));
    }
    gens.push_back(v);
    Neighbor out{IntLattice(), linalg::row_basis(gens)};
    const auto& b = out.basis_times_p;
    const Integer p2 = pz * pz;
    IntMatrix g(b.size(), IntVector(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i; j < b.size(); ++j) {
            const Integer d = l.dot(b[i], b[j]);
            if (d % p2 != 0) throw BadNeighborVector("neighbor is not integral");
            g[i][j] = g[j][i] = d / p2;
        }
    out.lattice = IntLattice(std::move(g));
    return out;
}

inline IntLattice p_neighbor(const IntLattice& l, const IntVector& v, unsigned long p) {
    return p_neighbor_with_basis(l, v, p).lattice;
}

struct CosetClass {
    IntVector coset;  // 0/1 representative of c + 2L
    ShortVector minimum;
    unsigned residue = 0;  // norm mod 4, constant on the coset
};

inline constexpr std::size_t kHalfHoleRankGuard = 12;

/// Minimal norms of all 2^n - 1 nonzero cosets of 2L, in binary order.
inline std::vector<CosetClass> classify_cosets(const IntLattice& l, std::size_t rank_guard = kHalfHoleRankGuard,
                                               unsigned threads = 0, bool only_residue_two = false) {
    const std::size_t n = l.rank();
    if (n > rank_guard)
        throw RankTooLarge("rank " + std::to_string(n) + " exceeds the coset guard " + std::to_string(rank_guard));
    if (n >= 63) throw RankTooLarge("rank too large to index cosets");
    const auto f = lattice_detail::pohst_form(l);
    const std::size_t count = (std::size_t{1} << n) - 1;
    std::vector<std::optional<CosetClass>> slots(count);
    parallel_for(count, threads, [&](std::size_t k) {
        const std::size_t mask = k + 1;
        IntVector c(n, Integer(0));
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) c[i] = 1;
        Integer r = l.norm(c) % 4;
        if (r < 0) r += 4;
        const auto residue = static_cast<unsigned>(r.get_ui());
        if (only_residue_two && residue != 2) return;
        slots[k] = CosetClass{c, coset_minimum(l, f, c), residue};
    });
    std::vector<CosetClass> out;
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    return out;
}

/* Cosets c + 2L with norms = 2 mod 4 and no representative of norm below
 * min_norm; these correspond to half-lattice holes of norm at least
 * min_norm / 4.
 */
inline std::vector<CosetClass> half_hole_cosets(const IntLattice& l, const Integer& min_norm,
                                                std::size_t rank_guard = kHalfHoleRankGuard, unsigned threads = 0) {
    std::vector<CosetClass> out;
    for (auto& c : classify_cosets(l, rank_guard, threads, true))
        if (c.minimum.norm >= min_norm) out.push_back(std::move(c));
    return out;
}

}  // namespace hirank

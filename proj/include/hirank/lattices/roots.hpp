#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hirank/lattices/enumeration.hpp"

namespace hirank {

/// One irreducible root system: type letter, rank, number of roots.
struct RootComponent {
    char type = 'A';
    std::size_t rank = 0;
    std::size_t root_count = 0;
    IntMatrix basis;  // Z-basis of the component's root lattice

    [[nodiscard]] std::string label() const { return std::string(1, type) + std::to_string(rank); }
};

struct RootDecomposition {
    std::vector<RootComponent> components;
    std::size_t root_count = 0;  // counting both signs
    IntMatrix root_basis;        // Z-basis of the full root lattice R

    [[nodiscard]] std::size_t rank() const { return root_basis.size(); }
    [[nodiscard]] std::string label() const {
        if (components.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < components.size();) {
            std::size_t j = i;
            while (j < components.size() && components[j].label() == components[i].label()) ++j;
            s += (s.empty() ? "" : " + ") + components[i].label();
            if (j - i > 1) s += "^" + std::to_string(j - i);
            i = j;
        }
        return s;
    }
};

inline std::size_t ade_root_count(char type, std::size_t n) {
    switch (type) {
        case 'A': return n * (n + 1);
        case 'D': return 2 * n * (n - 1);
        case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    }
    throw InvalidArgument("unknown root system type");
}

inline Integer ade_discriminant(char type, std::size_t n) {
    switch (type) {
        case 'A': return Integer(static_cast<unsigned long>(n + 1));
        case 'D': return 4;
        case 'E': return Integer(static_cast<unsigned long>(9 - n));
    }
    throw InvalidArgument("unknown root system type");
}

namespace lattice_detail {

// (rank, count) determines the type; the discriminant is a second check
inline char classify_component(std::size_t rank, std::size_t count, const Integer& disc) {
    std::vector<char> hits;
    if (count == ade_root_count('A', rank)) hits.push_back('A');
    if (rank >= 4 && count == ade_root_count('D', rank)) hits.push_back('D');
    if (rank >= 6 && rank <= 8 && count == ade_root_count('E', rank)) hits.push_back('E');
    for (char t : hits)
        if (ade_discriminant(t, rank) == disc) return t;
    throw InvalidArgument("root component of rank " + std::to_string(rank) + " with " + std::to_string(count) +
                          " roots and discriminant " + to_string(disc) + " is not ADE");
}

}  // namespace lattice_detail

/* Roots are the norm-2 vectors.  Two roots lie in the same irreducible
 * component iff they are joined by a chain of non-orthogonal roots.
 */
inline RootDecomposition root_decomposition(const IntLattice& l, unsigned threads = 0) {
    const auto roots = short_vectors(l, Integer(2), threads);
    std::vector<IntVector> pos;
    for (const auto& r : roots)
        if (r.norm == 2) pos.push_back(r.coords);
    const std::size_t m = pos.size();
    std::vector<IntVector> paired(m);
    for (std::size_t i = 0; i < m; ++i) paired[i] = l.pairings(pos[i]);

    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (find(i) == find(j)) continue;
            Integer d = 0;
            for (std::size_t k = 0; k < l.rank(); ++k) d += paired[i][k] * pos[j][k];
            if (d != 0) parent[find(i)] = find(j);
        }
    std::map<std::size_t, IntMatrix> groups;
    for (std::size_t i = 0; i < m; ++i) groups[find(i)].push_back(pos[i]);

    RootDecomposition out;
    out.root_count = 2 * m;
    IntMatrix all;
    for (auto& [root, vecs] : groups) {
        RootComponent c;
        c.basis = linalg::row_basis(vecs);
        c.rank = c.basis.size();
        c.root_count = 2 * vecs.size();
        const Integer disc = linalg::det(l.sublattice(c.basis).gram());
        c.type = lattice_detail::classify_component(c.rank, c.root_count, disc);
        all.insert(all.end(), vecs.begin(), vecs.end());
        out.components.push_back(std::move(c));
    }
    std::sort(out.components.begin(), out.components.end(), [](const auto& a, const auto& b) {
        if (a.type != b.type) return a.type < b.type;
        if (a.rank != b.rank) return a.rank > b.rank;
        return a.basis < b.basis;
    });
    if (!all.empty()) out.root_basis = linalg::row_basis(all);
    return out;
}

struct MWData {
    std::size_t mw_rank = 0;
    std::vector<Integer> torsion;  // invariant factors > 1, ascending
    RootDecomposition roots;

    [[nodiscard]] std::string torsion_label() const {
        if (torsion.empty()) return "trivial";
        std::string s;
        for (const auto& d : torsion) s += (s.empty() ? "" : " x ") + ("Z/" + to_string(d) + "Z");
        return s;
    }
};

/// N_ess / R = Z^(rank N - rank R) plus the torsion of the saturation quotient.
inline MWData mw_group(const IntLattice& n_ess, unsigned threads = 0) {
    MWData out;
    out.roots = root_decomposition(n_ess, threads);
    out.mw_rank = n_ess.rank() - out.roots.rank();
    if (!out.roots.root_basis.empty())
        for (const auto& d : linalg::elementary_divisors(out.roots.root_basis))
            if (d > 1) out.torsion.push_back(d);
    return out;
}

}  // namespace hirank

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "hirank/fixtures.hpp"
#include "hirank/lattices/k3_tables.hpp"
#include "hirank/lattices/operations.hpp"
#include "hirank/lattices/standard.hpp"

using namespace hirank;

namespace {

IntVector unit(std::size_t n, std::size_t i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    return e;
}

// all nonzero x in the box |x_i| <= r with x.x <= bound, up to sign
std::set<IntVector> box_short_vectors(const IntLattice& l, long r, long bound) {
    std::set<IntVector> out;
    const std::size_t n = l.rank();
    IntVector x(n, Integer(-r));
    for (;;) {
        Integer nv = l.norm(x);
        if (nv > 0 && nv <= bound) {
            IntVector y = x;
            bool neg = false;
            for (const auto& c : y)
                if (c != 0) {
                    neg = c < 0;
                    break;
                }
            if (neg)
                for (auto& c : y) c = -c;
            out.insert(y);
        }
        std::size_t k = 0;
        while (k < n && ++x[k] > r) x[k++] = -r;
        if (k == n) break;
    }
    return out;
}

// random unimodular change of basis U L U^T
IntLattice random_congruent(const IntLattice& l, std::mt19937_64& rng) {
    const std::size_t n = l.rank();
    IntMatrix u(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<long> mult(-2, 2);
    for (int s = 0; s < 4 * static_cast<int>(n); ++s) {
        auto i = pick(rng), j = pick(rng);
        if (i == j) continue;
        long m = mult(rng);
        for (std::size_t k = 0; k < n; ++k) u[i][k] += m * u[j][k];
    }
    return l.sublattice(u);
}

}  // namespace

TEST(Invariants, Examples) {
    auto h = lattice_invariants(hyperbolic_plane());
    EXPECT_EQ(h.discriminant, -1);
    EXPECT_TRUE(h.even);
    EXPECT_EQ(h.signature, (Signature{1, 1, 0}));
    auto e8 = lattice_invariants(e_n(8));
    EXPECT_EQ(e8.discriminant, 1);
    EXPECT_TRUE(e8.even);
    EXPECT_EQ(e8.signature, (Signature{8, 0, 0}));
    auto d = lattice_invariants(diagonal_lattice({2, -2}));
    EXPECT_EQ(d.discriminant, -4);
    EXPECT_EQ(d.signature, (Signature{1, 1, 0}));
    EXPECT_FALSE(lattice_invariants(diagonal_lattice({1, 2})).even);
    EXPECT_EQ(signature(IntMatrix{{Integer(0), Integer(0)}, {Integer(0), Integer(0)}}), (Signature{0, 0, 2}));
}

TEST(Invariants, DiscriminantsOfStandardGrams) {
    for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(linalg::det(a_n(n).gram()), Integer(static_cast<long>(n + 1)));
    for (std::size_t n = 4; n <= 10; ++n) EXPECT_EQ(linalg::det(d_n(n).gram()), 4);
    EXPECT_EQ(linalg::det(e_n(6).gram()), 3);
    EXPECT_EQ(linalg::det(e_n(7).gram()), 2);
}

TEST(Invariants, SignatureIsCongruenceInvariant) {
    std::mt19937_64 rng(41);
    const std::vector<IntLattice> ls{fixtures::inose_ns(), direct_sum({hyperbolic_plane(), a_n(3).scaled(-1)}),
                                     diagonal_lattice({2, -6, 4, 0}), e_n(7)};
    for (const auto& l : ls) {
        const auto s = signature(l.gram());
        for (int k = 0; k < 5; ++k) EXPECT_EQ(signature(random_congruent(l, rng).gram()), s);
    }
    EXPECT_EQ(signature(fixtures::inose_ns().gram()), (Signature{1, 17, 0}));
    EXPECT_EQ(signature(diagonal_lattice({2, -6, 4, 0}).gram()), (Signature{2, 1, 1}));
}

TEST(ShortVectors, Examples) {
    EXPECT_EQ(short_vectors(e_n(8), Integer(2)).size(), 120u);
    EXPECT_EQ(short_vectors(diagonal_lattice({2, 2}), Integer(2)).size(), 2u);
    EXPECT_EQ(short_vectors(a_n(2), Integer(2)).size(), 3u);
    EXPECT_THROW(short_vectors(hyperbolic_plane(), Integer(2)), NotPositiveDefinite);
}

TEST(ShortVectors, E8ThetaSeries) {
    // theta series of E8: 1 + 240 q + 2160 q^2 + 6720 q^3 + ...
    std::map<Integer, std::size_t> counts;
    for (const auto& v : short_vectors(e_n(8), Integer(6))) counts[v.norm] += 2;
    EXPECT_EQ(counts[2], 240u);
    EXPECT_EQ(counts[4], 2160u);
    EXPECT_EQ(counts[6], 6720u);
}

TEST(ShortVectors, MatchesBoxEnumeration) {
    std::mt19937_64 rng(42);
    for (const auto& base : {a_n(3), d_n(4), diagonal_lattice({2, 4, 6})}) {
        for (int k = 0; k < 3; ++k) {
            auto l = random_congruent(base, rng);
            // reduced bases only exist up to a box; use a generous one
            std::set<IntVector> got;
            for (const auto& v : short_vectors(l, Integer(6))) got.insert(v.coords);
            long r = 0;
            for (const auto& v : got)
                for (const auto& c : v) r = std::max(r, Integer(abs(c)).get_si());
            auto box = box_short_vectors(l, std::max(r, 3L) + 1, 6);
            EXPECT_EQ(got, box);
        }
    }
}

TEST(ShortVectors, ThreadCountDoesNotChangeOutput) {
    auto a = short_vectors(e_n(8), Integer(4), 1);
    auto b = short_vectors(e_n(8), Integer(4), 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].coords, b[i].coords);
}

TEST(RootDecomposition, ClosedFormCounts) {
    for (std::size_t n = 1; n <= 4; ++n) {
        auto r = root_decomposition(a_n(n));
        ASSERT_EQ(r.components.size(), 1u);
        EXPECT_EQ(r.components[0].label(), "A" + std::to_string(n));
        EXPECT_EQ(r.root_count, n * (n + 1));
    }
    for (std::size_t n = 4; n <= 6; ++n) {
        auto r = root_decomposition(d_n(n));
        EXPECT_EQ(r.label(), "D" + std::to_string(n));
        EXPECT_EQ(r.root_count, 2 * n * (n - 1));
    }
    EXPECT_EQ(root_decomposition(e_n(6)).root_count, 72u);
    EXPECT_EQ(root_decomposition(e_n(7)).root_count, 126u);
    EXPECT_EQ(root_decomposition(e_n(8)).root_count, 240u);
    EXPECT_EQ(root_decomposition(e_n(8)).label(), "E8");
}

TEST(RootDecomposition, Examples) {
    auto r = root_decomposition(diagonal_lattice({2, 2, 4}));
    EXPECT_EQ(r.label(), "A1^2");
    EXPECT_EQ(r.rank(), 2u);
    auto d16 = root_decomposition(d_n(16));
    EXPECT_EQ(d16.label(), "D16");
    EXPECT_EQ(d16.root_count, 480u);
    EXPECT_TRUE(root_decomposition(diagonal_lattice({4, 6})).components.empty());
    auto mixed = root_decomposition(direct_sum({e_n(6), a_n(2), d_n(4), a_n(2)}));
    EXPECT_EQ(mixed.label(), "A2^2 + D4 + E6");
    EXPECT_EQ(mixed.root_count, 72u + 6 + 24 + 6);
}

TEST(RootDecomposition, BasisIndependent) {
    std::mt19937_64 rng(43);
    auto l = random_congruent(direct_sum({e_n(7), a_n(1)}), rng);
    auto r = root_decomposition(l);
    EXPECT_EQ(r.label(), "A1 + E7");
    EXPECT_EQ(r.root_count, 128u);
}

TEST(Essential, InoseConfiguration) {
    auto ns = fixtures::inose_ns();
    auto ness = essential_lattice(ns, fixtures::inose_fiber(), fixtures::inose_zero_section());
    auto inv = lattice_invariants(ness);
    EXPECT_EQ(inv.rank, 16u);
    EXPECT_EQ(inv.discriminant, 1);
    EXPECT_TRUE(inv.even);
    EXPECT_EQ(inv.signature, (Signature{16, 0, 0}));
    auto mw = mw_group(ness);
    EXPECT_EQ(mw.roots.label(), "E8^2");
    EXPECT_EQ(mw.mw_rank, 0u);
    EXPECT_TRUE(mw.torsion.empty());
}

TEST(Essential, Preconditions) {
    auto h = hyperbolic_plane();
    EXPECT_EQ(essential_lattice(h, {1, 0}, {-1, 1}).rank(), 0u);
    auto ns = direct_sum({hyperbolic_plane(), a_n(1).scaled(-1)});
    EXPECT_THROW(essential_lattice(ns, {0, 0, 1}, {-1, 1, 0}), PreconditionFailed);  // f.f = -2
    EXPECT_THROW(essential_lattice(ns, {1, 0, 0}, {0, 1, 0}), PreconditionFailed);   // s.s = 0
    EXPECT_THROW(essential_lattice(ns, {1, 0, 0}, {-1, 2, 0}), PreconditionFailed);  // s.f = 2
    EXPECT_THROW(essential_lattice(direct_sum({h, a_n(1)}), {1, 0, 0}, {-1, 1, 0}), PreconditionFailed);
    auto ness = essential_lattice(ns, {1, 0, 0}, {-1, 1, 0});
    EXPECT_EQ(ness.gram(), a_n(1).gram());
}

TEST(MWGroup, Examples) {
    auto d16 = mw_group(fixtures::inose_d16_model());
    EXPECT_EQ(d16.roots.label(), "D16");
    EXPECT_EQ(d16.mw_rank, 0u);
    EXPECT_EQ(d16.torsion, (std::vector<Integer>{2}));
    auto d4 = mw_group(diagonal_lattice({4}));
    EXPECT_EQ(d4.mw_rank, 1u);
    EXPECT_TRUE(d4.torsion.empty());
    auto e8 = mw_group(direct_sum({e_n(8), e_n(8)}));
    EXPECT_EQ(e8.mw_rank, 0u);
    EXPECT_TRUE(e8.torsion.empty());
}

TEST(MWGroup, TorsionSquaredDividesDiscriminantRatio) {
    for (const auto& l : {fixtures::inose_d16_model(), niemeier_a1_24(), d_n_plus(8),
                          direct_sum({d_n(4), diagonal_lattice({4})})}) {
        auto mw = mw_group(l);
        Integer t = 1;
        for (const auto& d : mw.torsion) t *= d;
        const Integer dr = linalg::det(l.sublattice(mw.roots.root_basis).gram());
        const Integer dn = linalg::det(l.gram());
        // with mw_rank 0, R has finite index |torsion| in N
        if (mw.mw_rank == 0)
            EXPECT_EQ(dr, dn * t * t);
        else
            EXPECT_EQ((dr / dn) % (t * t), 0);
    }
}

TEST(Complement, Examples) {
    auto e8 = e_n(8);
    auto roots = short_vectors(e8, Integer(2));
    auto c1 = orthogonal_complement(e8, {roots[0].coords});
    EXPECT_EQ(root_decomposition(c1).label(), "E7");
    EXPECT_EQ(root_decomposition(c1).root_count, 126u);
    // a second root orthogonal to the first
    IntVector second;
    for (const auto& r : roots)
        if (e8.dot(r.coords, roots[0].coords) == 0) {
            second = r.coords;
            break;
        }
    auto c2 = orthogonal_complement(e8, {roots[0].coords, second});
    EXPECT_EQ(root_decomposition(c2).label(), "D6");
    EXPECT_EQ(root_decomposition(c2).root_count, 60u);
    IntMatrix all;
    for (std::size_t i = 0; i < 8; ++i) all.push_back(unit(8, i));
    EXPECT_EQ(orthogonal_complement(e8, all).rank(), 0u);
    EXPECT_THROW(orthogonal_complement(e8, {roots[0].coords, roots[0].coords}), DependentS);
}

TEST(Complement, DiscriminantIndexRelation) {
    auto check = [](const IntLattice& l, const IntMatrix& s) {
        auto c = orthogonal_complement_with_basis(l, s);
        IntMatrix both = s;
        both.insert(both.end(), c.basis.begin(), c.basis.end());
        const Integer index = abs(linalg::det(both));
        const Integer ds = linalg::det(l.sublattice(s).gram());
        const Integer dc = c.basis.empty() ? Integer(1) : linalg::det(c.lattice.gram());
        EXPECT_EQ(ds * dc, linalg::det(l.gram()) * index * index);
    };
    auto e8 = e_n(8);
    auto roots = short_vectors(e8, Integer(4));
    check(e8, {roots[0].coords});
    check(e8, {roots[0].coords, roots[5].coords});
    check(e8, {roots.back().coords});
    check(direct_sum({d_n(5), a_n(2)}), {unit(7, 0), unit(7, 6)});
    check(fixtures::inose_ns(), {fixtures::inose_fiber(), fixtures::inose_zero_section()});
}

TEST(Glue, Examples) {
    auto d16p = lattice_invariants(d_n_plus(16));
    EXPECT_EQ(d16p.rank, 16u);
    EXPECT_EQ(d16p.discriminant, 1);
    EXPECT_TRUE(d16p.even);
    EXPECT_EQ(build_glued_lattice(e_n(8), {}), e_n(8));
    EXPECT_THROW(build_glued_lattice(a_n(1), {{make_rational(1, 2)}}), NonIntegralGlue);
    EXPECT_THROW(build_glued_lattice(diagonal_lattice({2, 2}), {{make_rational(1, 2), make_rational(1, 2)}}), OddGlue);
}

TEST(Glue, DiscriminantDropsBySquareOfGlueOrder) {
    // D8 glued by the half-spin vector: 4 / 2^2 = 1 (this is E8)
    auto d8p = d_n_plus(8);
    EXPECT_EQ(linalg::det(d8p.gram()), 1);
    EXPECT_EQ(root_decomposition(d8p).label(), "E8");
    // A1^24 glued by the 12-dimensional Golay code: 2^24 / (2^12)^2 = 1
    EXPECT_EQ(linalg::det(niemeier_a1_24().gram()), 1);
}

TEST(Golay, WeightEnumerator) {
    auto gens = golay_generators();
    std::map<std::size_t, std::size_t> w;
    for (unsigned m = 0; m < 4096; ++m) {
        std::bitset<24> c;
        for (std::size_t i = 0; i < 12; ++i)
            if (m >> i & 1) c ^= gens[i];
        w[c.count()]++;
    }
    EXPECT_EQ(w, (std::map<std::size_t, std::size_t>{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}}));
}

TEST(Niemeier, Fixtures) {
    struct Case {
        IntLattice l;
        std::string label;
        std::size_t roots;
    };
    for (const auto& c : {Case{niemeier_e8_cubed(), "E8^3", 720}, Case{niemeier_d16_e8(), "D16 + E8", 720},
                          Case{niemeier_a1_24(), "A1^24", 48}}) {
        auto inv = lattice_invariants(c.l);
        EXPECT_EQ(inv.rank, 24u);
        EXPECT_EQ(inv.discriminant, 1);
        EXPECT_TRUE(inv.even);
        auto r = root_decomposition(c.l);
        EXPECT_EQ(r.label(), c.label);
        EXPECT_EQ(r.root_count, c.roots);
    }
}

TEST(Neighbor, E8SquaredToD16) {
    auto l = direct_sum({e_n(8), e_n(8)});
    auto n = p_neighbor(l, fixtures::e8_squared_neighbor_vector(), 2);
    auto inv = lattice_invariants(n);
    EXPECT_EQ(inv.rank, 16u);
    EXPECT_EQ(inv.discriminant, 1);
    EXPECT_TRUE(inv.even);
    EXPECT_EQ(root_decomposition(n).label(), "D16");
}

TEST(Neighbor, Errors) {
    auto l = direct_sum({e_n(8), e_n(8)});
    IntVector v = fixtures::e8_squared_neighbor_vector();
    for (auto& c : v) c *= 2;
    EXPECT_THROW(p_neighbor(l, v, 2), BadNeighborVector);
    EXPECT_THROW(p_neighbor(l, unit(16, 0), 2), BadNeighborVector);  // norm 2
    EXPECT_THROW(p_neighbor(l, fixtures::e8_squared_neighbor_vector(), 4), InvalidArgument);
}

TEST(Neighbor, PreservesInvariantsAndReverses) {
    std::mt19937_64 rng(44);
    const std::vector<std::pair<IntLattice, unsigned long>> cases{
        {direct_sum({e_n(8), e_n(8)}), 2}, {fixtures::inose_d16_model(), 2}, {direct_sum({e_n(8), e_n(8)}), 3},
        {direct_sum({d_n(4), a_n(2)}), 3}};
    for (const auto& [l, p] : cases) {
        // random small vectors with v.v = 0 mod 2p^2 and v not in pL
        std::uniform_int_distribution<long> coef(-2, 2);
        int tried = 0;
        for (int attempt = 0; attempt < 2000 && tried < 3; ++attempt) {
            IntVector v(l.rank());
            for (auto& c : v) c = coef(rng);
            const Integer nv = l.norm(v);
            if (nv == 0 || nv % static_cast<long>(2 * p * p) != 0) continue;
            ShortVector sv{v, nv};
            Neighbor nb;
            try {
                nb = p_neighbor_with_basis(l, sv.coords, p);
            } catch (const BadNeighborVector&) {
                continue;
            }
            auto a = lattice_invariants(l), b = lattice_invariants(nb.lattice);
            EXPECT_EQ(a.rank, b.rank);
            EXPECT_EQ(abs(a.discriminant), abs(b.discriminant));
            EXPECT_TRUE(b.even);
            // reverse: u in L with u.v != 0 mod p; p u lies in L', and the
            // p-neighbor of L' at p u recovers L
            const IntVector w = l.pairings(sv.coords);
            std::size_t i = 0;
            while (w[i] % static_cast<long>(p) == 0) ++i;
            IntVector pu = unit(l.rank(), i);
            for (auto& c : pu) c *= static_cast<long>(p * p);  // p * (p u) in L coordinates
            linalg::RatMatrix bt(l.rank(), linalg::RatVector(l.rank()));
            for (std::size_t r = 0; r < l.rank(); ++r)
                for (std::size_t c = 0; c < l.rank(); ++c) bt[c][r] = nb.basis_times_p[r][c];
            auto sol = linalg::solve(bt, linalg::RatVector(pu.begin(), pu.end()));
            ASSERT_TRUE(sol);
            IntVector back;
            for (const auto& c : *sol) {
                ASSERT_TRUE(is_integral(c));
                back.push_back(c.get_num());
            }
            auto rev = p_neighbor(nb.lattice, back, p);
            auto c = lattice_invariants(rev);
            EXPECT_EQ(c.rank, a.rank);
            EXPECT_EQ(c.discriminant, a.discriminant);
            EXPECT_EQ(root_decomposition(rev).label(), root_decomposition(l).label());
            ++tried;
        }
        EXPECT_GT(tried, 0);
    }
}

TEST(HalfHoles, Diag22) {
    auto l = diagonal_lattice({2, 2});
    auto hs = half_hole_cosets(l, Integer(2));
    ASSERT_EQ(hs.size(), 2u);
    EXPECT_EQ(hs[0].coset, (IntVector{1, 0}));
    EXPECT_EQ(hs[1].coset, (IntVector{0, 1}));
    EXPECT_EQ(hs[0].minimum.norm, 2);
    EXPECT_TRUE(half_hole_cosets(l, Integer(10)).empty());
}

TEST(HalfHoles, E8MatchesBruteForce) {
    auto e8 = e_n(8);
    // every coset of 2 E8 has a representative of norm <= 8
    std::map<unsigned, Integer> brute;
    for (const auto& v : short_vectors(e8, Integer(8))) {
        unsigned mask = 0;
        for (std::size_t i = 0; i < 8; ++i)
            if (v.coords[i] % 2 != 0) mask |= 1u << i;
        if (mask == 0) continue;
        auto it = brute.find(mask);
        if (it == brute.end() || v.norm < it->second) brute[mask] = v.norm;
    }
    auto all = classify_cosets(e8);
    ASSERT_EQ(all.size(), 255u);
    std::map<Integer, int> hist;
    for (const auto& c : all) {
        unsigned mask = 0;
        for (std::size_t i = 0; i < 8; ++i)
            if (c.coset[i] == 1) mask |= 1u << i;
        EXPECT_EQ(c.minimum.norm, brute.at(mask));
        EXPECT_EQ(e8.norm(c.minimum.coords), c.minimum.norm);
        hist[c.minimum.norm]++;
    }
    // 120 root cosets, 135 norm-4 cosets
    EXPECT_EQ(hist, (std::map<Integer, int>{{2, 120}, {4, 135}}));
    auto hs = half_hole_cosets(e8, Integer(4));
    EXPECT_TRUE(hs.empty());
    EXPECT_EQ(half_hole_cosets(e8, Integer(2)).size(), 120u);
}

TEST(HalfHoles, RankGuard) {
    auto l = diagonal_lattice(std::vector<long>(13, 6));
    EXPECT_THROW(half_hole_cosets(l, Integer(2)), RankTooLarge);
    auto hs = half_hole_cosets(l, Integer(6), 13);
    // c of weight w has norm 6w = 2 mod 4 iff w odd; min norm 6w >= 6
    std::size_t odd = 0;
    for (unsigned m = 1; m < (1u << 13); ++m) odd += __builtin_popcount(m) % 2;
    EXPECT_EQ(hs.size(), odd);
}

TEST(K3Tables, EveryRow) {
    struct Row {
        const char* label;
        const char* fibers;
        int bound;
    };
    const std::vector<Row> rows{{"{0}", "1^24", 18},         {"Z/2Z", "2^8 1^8", 10},
                                {"Z/3Z", "3^6 1^6", 6},      {"Z/4Z", "4^4 2^2 1^4", 4},
                                {"Z/5Z", "5^4 1^4", 2},      {"Z/6Z", "6^2 3^2 2^2 1^2", 2},
                                {"Z/7Z", "7^3 1^3", 0},      {"Z/8Z", "8^2 4 2 1^2", 0},
                                {"Z/2Z x Z/2Z", "2^12", 6},  {"(Z/2Z)+(Z/4Z)", "4^4 2^4", 2},
                                {"Z/2 ⊕ Z/6", "6^3 2^3", 0}};
    for (const auto& r : rows) {
        auto e = k3_fiber_entry(r.label);
        ASSERT_TRUE(e) << r.label;
        EXPECT_EQ(e->fibers, r.fibers);
        EXPECT_EQ(e->rank_bound, r.bound);
    }
    EXPECT_EQ(k3_fiber_table().size(), rows.size());
    EXPECT_EQ(k3_fiber_entry("Z/4Z")->formula, "(a1, a2, a1 a2, 0, 0)");
}

TEST(K3Tables, FiberEulerNumbersAndBound) {
    // I_n has Euler number n, the total is 24, and the bound is (#fibers) - 6
    for (const auto& e : k3_fiber_table()) {
        std::istringstream is(e.fibers);
        std::string tok;
        int euler = 0, count = 0;
        while (is >> tok) {
            auto caret = tok.find('^');
            int n = std::stoi(tok.substr(0, caret));
            int m = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
            euler += n * m;
            count += m;
        }
        EXPECT_EQ(euler, 24) << e.fibers;
        EXPECT_EQ(e.rank_bound, count - 6) << e.fibers;
    }
}

TEST(K3Tables, QueriesAndErrors) {
    for (const char* l : {"Z/9Z", "Z/10Z", "Z/12Z", "Z/2Z x Z/8Z"}) EXPECT_FALSE(k3_fiber_entry(l)) << l;
    EXPECT_THROW(k3_fiber_entry("Z/11Z"), UnknownTorsionLabel);
    EXPECT_THROW(k3_fiber_entry("Z/2Z x Z/3Z"), UnknownTorsionLabel);
    EXPECT_THROW(k3_fiber_entry("banana"), UnknownTorsionLabel);
    EXPECT_EQ(k3_genus_rank_bound(2), 18);
    EXPECT_EQ(k3_genus_rank_bound(1), 8);
    EXPECT_THROW(k3_genus_rank_bound(0), InvalidArgument);
    EXPECT_FALSE(is_class_number_one_discriminant(-20));
    EXPECT_TRUE(is_class_number_one_discriminant(-163));
    int count = 0;
    for (long d = -200; d < 0; ++d) count += is_class_number_one_discriminant(d);
    EXPECT_EQ(count, 13);
}

TEST(LatticeFile, RoundTripAndErrors) {
    auto e8 = e_n(8);
    EXPECT_EQ(parse_lattice(format_lattice(e8)), e8);
    EXPECT_EQ(parse_lattice("2\n0 1\n1 0\n"), hyperbolic_plane());
    EXPECT_THROW(parse_lattice("2\n0 1\n1\n"), ParseError);
    EXPECT_THROW(parse_lattice("2\n0 1\n2 0\n"), InvalidArgument);
    EXPECT_THROW(parse_lattice("x"), ParseError);
    EXPECT_THROW(parse_lattice("1\n2\n3"), ParseError);
}

#include <gtest/gtest.h>

#include <random>

#include "hirank/arith/linalg.hpp"
#include "hirank/arith/modp.hpp"
#include "hirank/arith/poly.hpp"
#include "hirank/arith/poly_mod_p.hpp"
#include "hirank/arith/rational.hpp"
#include "hirank/arith/series.hpp"

using namespace hirank;

namespace {

Rational small_rational(std::mt19937_64& rng, long span = 9) {
    std::uniform_int_distribution<long> num(-span, span), den(1, span);
    return make_rational(num(rng), den(rng));
}

PolyQ random_poly(std::mt19937_64& rng, int max_deg = 8) {
    std::uniform_int_distribution<int> deg(-1, max_deg);
    int d = deg(rng);
    std::vector<Rational> c;
    for (int i = 0; i <= d; ++i) c.push_back(small_rational(rng));
    return PolyQ(c);
}

// (1 + h)^{1/3} = sum_k binom(1/3, k) h^k, truncated at u^n.
std::vector<Rational> binomial_cube_root(const std::vector<Rational>& h, std::size_t n) {
    auto mul = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> c(n + 1, Rational(0));
        for (std::size_t i = 0; i <= n && i < a.size(); ++i)
            for (std::size_t j = 0; i + j <= n && j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    };
    std::vector<Rational> out(n + 1, Rational(0));
    std::vector<Rational> hk(n + 1, Rational(0));
    hk[0] = 1;
    Rational binom = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t i = 0; i <= n; ++i) out[i] += binom * hk[i];
        binom = binom * (Rational(1, 3) - static_cast<long>(k)) / static_cast<long>(k + 1);
        hk = mul(hk, h);
    }
    return out;
}

}  // namespace

TEST(Rational, NormalizationIsStructural) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (int i = 0; i < 500; ++i) {
        long p = d(rng), q = d(rng), k = d(rng);
        if (q == 0 || k == 0) continue;
        Rational a = make_rational(Integer(p) * k, Integer(q) * k);
        Rational b = make_rational(p, q);
        EXPECT_EQ(a, b);
        EXPECT_GT(a.get_den(), 0);
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
        EXPECT_EQ(g, 1);
    }
    EXPECT_THROW(make_rational(1, 0), DivisionByZero);
}

TEST(Rational, ParseAndFormat) {
    EXPECT_EQ(parse_rational("-6/4"), make_rational(-3, 2));
    EXPECT_EQ(parse_rational("17"), Rational(17));
    EXPECT_EQ(to_string(make_rational(10, -4)), "-5/2");
}

TEST(Rational, ParseRejectsGarbage) {
    EXPECT_THROW(parse_rational("1/"), ParseError);
    EXPECT_THROW(parse_rational("abc"), ParseError);
    EXPECT_THROW(parse_rational("1/0"), DivisionByZero);
}

TEST(Poly, DifferenceOfSquares) {
    PolyQ a{1, 1}, b{-1, 1};
    EXPECT_EQ(a * b, (PolyQ{-1, 0, 1}));
}

TEST(Poly, DivremExamples) {
    auto [q1, r1] = divrem(PolyQ{0, 0, 0, 1}, PolyQ{0, 0, 1});
    EXPECT_EQ(q1, (PolyQ{0, 1}));
    EXPECT_TRUE(r1.is_zero());
    auto [q2, r2] = divrem(PolyQ{5, 2, 0, 1}, PolyQ{-1, 1});
    EXPECT_EQ(q2, (PolyQ{3, 1, 1}));
    EXPECT_EQ(r2, (PolyQ{8}));
    EXPECT_THROW(divrem(PolyQ{1}, PolyQ{}), DivisionByZero);
}

TEST(Poly, GcdExamples) {
    EXPECT_EQ(gcd(PolyQ{-1, 0, 1}, PolyQ{-1, 1}), (PolyQ{-1, 1}));
    EXPECT_EQ(gcd(PolyQ{4, 2}, PolyQ{}), (PolyQ{2, 1}));
    EXPECT_EQ(gcd(PolyQ{1, 0, 1}, PolyQ{0, 1, 1}), (PolyQ{1}));
    EXPECT_THROW(gcd(PolyQ{}, PolyQ{}), InvalidArgument);
}

TEST(Poly, RingAxiomsRandomized) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 1000; ++t) {
        PolyQ a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a + b, b + a);
        if (!b.is_zero()) {
            auto [q, r] = divrem(a, b);
            ASSERT_EQ(q * b + r, a);
            ASSERT_LT(r.degree(), b.degree());
        }
    }
}

TEST(Poly, SquareRoot) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        PolyQ a = random_poly(rng, 5);
        if (a.is_zero()) continue;
        auto s = poly_sqrt(a * a);
        ASSERT_TRUE(s.has_value());
        EXPECT_EQ(*s * *s, a * a);
    }
    EXPECT_FALSE(poly_sqrt(PolyQ{1, 0, 2}).has_value());
    EXPECT_FALSE(poly_sqrt(PolyQ{1, 1}).has_value());
}

TEST(Poly, CoefficientListRoundTrip) {
    PolyQ f{make_rational(1, 2), 0, -3};
    EXPECT_EQ(parse_coeff_list(to_coeff_list(f)), f);
    EXPECT_EQ(to_string(f), "-3*X^2 + 1/2");
}

TEST(PolyModP, ReductionAndGcd) {
    auto f = PolyModP::reduce(PolyQ{make_rational(1, 2), 1}, 7);  // X + 4
    EXPECT_EQ(f.coeffs(), (std::vector<std::uint64_t>{4, 1}));
    EXPECT_THROW(PolyModP::reduce(PolyQ{make_rational(1, 7)}, 7), DenominatorDivisibleByP);
    PolyModP a(5, {4, 0, 1}), b(5, {1, 1});  // X^2 - 1, X + 1
    EXPECT_EQ(gcd(a, b), b);
    EXPECT_THROW(PolyModP(6, {1}), InvalidArgument);
}

TEST(ModP, PrimesAndInverses) {
    auto ps = modp::primes_below(100);
    EXPECT_EQ(ps.size(), 25u);
    for (auto p : ps) {
        EXPECT_TRUE(modp::is_prime(p));
        for (std::uint64_t a = 1; a < p; ++a) ASSERT_EQ(modp::mul(a, modp::inv(a, p), p), 1u);
    }
    EXPECT_TRUE(modp::is_prime(1000003));
    EXPECT_FALSE(modp::is_prime(1000001));
}

TEST(Series, ExactCube) {
    PolyQ lin{-3, 1};
    auto pp = series_cube_root(lin.pow(12));
    EXPECT_EQ(pp.R, lin.pow(4));
    EXPECT_EQ(pp.c, 0);
}

TEST(Series, EvenProductHasZeroResidue) {
    PolyQ f{1};
    for (long x = 1; x <= 6; ++x) f *= PolyQ{Rational(-x * x), 0, 1};
    EXPECT_EQ(series_cube_root(f).c, 0);
}

TEST(Series, MatchesBinomialOracle) {
    std::vector<Rational> roots;
    for (long i = 1; i <= 12; ++i) roots.emplace_back(i);
    PolyQ f = from_roots(roots);
    // f = X^12 (1 + h(u)), u = 1/X
    std::vector<Rational> h(13, Rational(0));
    for (std::size_t i = 1; i <= 12; ++i) h[i] = f.coeff(12 - i);
    auto s = binomial_cube_root(h, 8);
    auto pp = series_cube_root(f, 4);
    for (std::size_t j = 0; j <= 8; ++j) EXPECT_EQ(pp.expansion[j], s[j]) << j;
    EXPECT_EQ(pp.c, s[5]);
    for (std::size_t j = 0; j <= 4; ++j) EXPECT_EQ(pp.R.coeff(4 - j), s[j]);
}

TEST(Series, CubingReproducesInput) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> roots;
        for (int i = 0; i < 12; ++i) roots.push_back(small_rational(rng));
        PolyQ f = from_roots(roots);
        auto pp = series_cube_root(f, 12);
        // (sum s_j u^j)^3 = 1 + h(u) up to the computed order
        PowerSeries s(pp.expansion.size());
        s.c = pp.expansion;
        PowerSeries cube = s * s * s;
        for (std::size_t i = 0; i < cube.c.size() && i <= 12; ++i) ASSERT_EQ(cube.c[i], f.coeff(12 - i));
    }
}

TEST(Series, TranslationEquivariance) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> roots;
        for (int i = 0; i < 12; ++i) roots.push_back(small_rational(rng));
        Rational xi = small_rational(rng);
        PolyQ f = from_roots(roots);
        PolyQ g = f.compose(PolyQ{-xi, 1});
        EXPECT_EQ(series_cube_root(f).c, series_cube_root(g).c);
    }
}

TEST(Series, Preconditions) {
    EXPECT_THROW(series_cube_root(PolyQ{1, 0, 1}), InvalidArgument);
    EXPECT_THROW(series_cube_root(PolyQ{1, 0, 0, 2}), InvalidArgument);
    EXPECT_THROW(series_cube_root(PolyQ{1, 0, 0, 1}, 0), InvalidArgument);
}

TEST(Linalg, DeterminantAndInverse) {
    linalg::IntMatrix m{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    EXPECT_EQ(linalg::det(m), 4);
    linalg::RatMatrix q{{1, 2}, {3, 4}};
    auto inv = linalg::inverse(q);
    ASSERT_TRUE(inv);
    EXPECT_EQ((*inv)[0][0], -2);
    EXPECT_EQ((*inv)[1][0], make_rational(3, 2));
    EXPECT_EQ(linalg::det(q), -2);
}

TEST(Linalg, IntegerKernelAndSmith) {
    linalg::IntMatrix a{{1, 2, 3}};
    auto k = linalg::integer_kernel(a, 3);
    ASSERT_EQ(k.size(), 2u);
    for (auto& v : k) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], 0);
    // kernel is saturated: the 2x2 minors have gcd 1
    Integer g = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Integer m = k[0][i] * k[1][j] - k[0][j] * k[1][i];
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
        }
    EXPECT_EQ(g, 1);
    EXPECT_EQ(linalg::elementary_divisors({{2, 0}, {0, 3}}), (std::vector<Integer>{1, 6}));
    EXPECT_EQ(linalg::elementary_divisors({{2, 4}, {6, 8}}), (std::vector<Integer>{2, 4}));
}

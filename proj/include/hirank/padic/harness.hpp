#pragma once

#include <array>
#include <random>
#include <vector>

#include "hirank/families/constructions.hpp"
#include "hirank/padic/padic.hpp"

namespace hirank {

/* t -> 3^10 F(base + t dir) for integer base and dir.  The cube-root series
 * behind F has only powers of 3 in its denominators, and 3^10 clears them for
 * integer input; integrality is checked on every evaluation.
 */
inline BlackBoxSystem mestre_slice_system(const std::array<Integer, 12>& base, const std::array<Integer, 12>& dir) {
    const Integer scale = integer_pow(Integer(3), 10);
    BlackBoxSystem s;
    s.arity = 1;
    s.equations = 1;
    s.eval_exact = [=](const std::vector<Rational>& t) {
        std::array<Rational, 12> x;
        for (std::size_t i = 0; i < 12; ++i) x[i] = base[i] + t[0] * dir[i];
        Rational v = mestre_quintic(x) * scale;
        return std::vector<Rational>{v};
    };
    s.eval = [f = s.eval_exact](const std::vector<Integer>& t) {
        const Rational v = f({Rational(t[0])})[0];
        if (!is_integral(v)) throw InvalidArgument("slice value is not integral; scale too small");
        return std::vector<Integer>{v.get_num()};
    };
    return s;
}

struct MestreSlice {
    BlackBoxSystem system;
    std::array<Integer, 12> base, dir;
    Rational planted_t;     // F(base + t dir) = 0 at this t
    Integer start;          // planted_t mod p
};

/* A slice through an antipodal point (x_i + x_{6+i} = 0, where F vanishes)
 * reached at t = num/den, with a simple root mod p there.  Seeds whose root
 * is not simple mod p are skipped.
 */
inline MestreSlice mestre_slice_harness(const Integer& p, long num = 3, long den = 7, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> c(-9, 9);
    const Rational t = make_rational(num, den);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::array<Integer, 12> a, e, base, dir;
        for (std::size_t i = 0; i < 6; ++i) {
            a[i] = c(rng);
            a[6 + i] = -a[i];
        }
        for (auto& v : e) v = c(rng);
        for (std::size_t i = 0; i < 12; ++i) {
            dir[i] = den * e[i];
            base[i] = a[i] - num * e[i];
        }
        MestreSlice out{mestre_slice_system(base, dir), base, dir, t, 0};
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), Integer(den).get_mpz_t(), p.get_mpz_t()) == 0) throw InvalidArgument("den = 0 mod p");
        out.start = padic_detail::mod(Integer(num) * inv, p);
        try {
            start_lift(out.system, p, {out.start});
            return out;
        } catch (const SingularJacobian&) {
        }
    }
    throw InvalidArgument("no slice with a simple root mod p found");
}

struct PlantedSystem {
    BlackBoxSystem system;
    std::vector<SparsePoly> polys;
    std::vector<Rational> solution;
    std::vector<Integer> start;  // solution mod p
};

/* n quadratics in n variables with integer coefficients vanishing at the
 * given rational point: D (Q(x) - Q(s)) for random integer Q.
 */
inline PlantedSystem planted_quadratic_system(const std::vector<Rational>& s, const Integer& p, std::uint64_t seed = 1) {
    const std::size_t n = s.size();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> c(-5, 5);
    std::vector<Integer> start;
    for (const auto& v : s) {
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), v.get_den_mpz_t(), p.get_mpz_t()) == 0)
            throw InvalidArgument("planted solution has a denominator divisible by p");
        start.push_back(padic_detail::mod(v.get_num() * inv, p));
    }
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<SparsePoly> polys;
        for (std::size_t k = 0; k < n; ++k) {
            SparsePoly q;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    std::vector<unsigned> e(n, 0);
                    e[i]++;
                    e[j]++;
                    q.terms[e] = c(rng);
                }
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<unsigned> e(n, 0);
                e[i] = 1;
                q.terms[e] = c(rng);
            }
            const Rational at = q(s);
            const Integer d = at.get_den();
            SparsePoly f;
            for (const auto& [e, v] : q.terms) f.terms[e] = v * d;
            Rational shifted = at * d;
            f.terms[std::vector<unsigned>(n, 0)] -= shifted.get_num();
            polys.push_back(std::move(f));
        }
        PlantedSystem out{polynomial_system(polys, n), polys, s, start};
        try {
            start_lift(out.system, p, start);
            return out;
        } catch (const SingularJacobian&) {
        }
    }
    throw InvalidArgument("no planted system with invertible Jacobian found");
}

}  // namespace hirank

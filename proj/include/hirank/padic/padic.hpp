#pragma once

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hirank/arith/rational.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(NotARoot);
HIRANK_DOMAIN_ERROR(SingularJacobian);
HIRANK_DOMAIN_ERROR(NoReconstruction);
HIRANK_DOMAIN_ERROR(NoConvergence);

/// Residues mod p^k.
struct PadicVector {
    Integer p;
    unsigned long k = 0;
    std::vector<Integer> values;

    [[nodiscard]] Integer modulus() const { return integer_pow(p, k); }
};

/* A black-box map Z^arity -> Z^equations that is polynomial with integer
 * coefficients, so it can also be evaluated on rationals for verification.
 */
struct BlackBoxSystem {
    std::size_t arity = 0;
    std::size_t equations = 0;
    std::function<std::vector<Integer>(const std::vector<Integer>&)> eval;
    std::function<std::vector<Rational>(const std::vector<Rational>&)> eval_exact;
};

/// Sparse multivariate polynomial: exponent vector -> coefficient.
struct SparsePoly {
    std::map<std::vector<unsigned>, Integer> terms;

    template <typename R>
    [[nodiscard]] R operator()(const std::vector<R>& x) const {
        R s = 0;
        for (const auto& [e, c] : terms) {
            R t = R(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned j = 0; j < e[i]; ++j) t *= x[i];
            s += t;
        }
        return s;
    }
};

inline BlackBoxSystem polynomial_system(std::vector<SparsePoly> polys, std::size_t arity) {
    for (const auto& f : polys)
        for (const auto& [e, c] : f.terms)
            if (e.size() != arity) throw InvalidArgument("exponent vector length differs from arity");
    auto shared = std::make_shared<const std::vector<SparsePoly>>(std::move(polys));
    BlackBoxSystem s;
    s.arity = arity;
    s.equations = shared->size();
    s.eval = [shared](const std::vector<Integer>& x) {
        std::vector<Integer> out;
        for (const auto& f : *shared) out.push_back(f(x));
        return out;
    };
    s.eval_exact = [shared](const std::vector<Rational>& x) {
        std::vector<Rational> out;
        for (const auto& f : *shared) out.push_back(f(x));
        return out;
    };
    return s;
}

/* Polynomial file: one polynomial per line, terms "coeff:e1,e2,...,en"
 * separated by whitespace.  Rational coefficients are cleared by the line's
 * common denominator, which leaves the zero set unchanged.
 */
inline std::pair<std::vector<SparsePoly>, std::size_t> read_polynomial_system(std::istream& in) {
    std::vector<SparsePoly> polys;
    std::size_t arity = 0;
    bool have_arity = false;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::pair<Rational, std::vector<unsigned>>> raw;
        while (ls >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos) throw ParseError("term '" + tok + "' must look like coeff:e1,...,en");
            Rational c = parse_rational(tok.substr(0, colon));
            std::vector<unsigned> e;
            std::stringstream es(tok.substr(colon + 1));
            std::string part;
            while (std::getline(es, part, ',')) {
                if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError("bad exponent in '" + tok + "'");
                e.push_back(static_cast<unsigned>(std::stoul(part)));
            }
            if (e.empty()) throw ParseError("term '" + tok + "' has no exponents");
            if (!have_arity) {
                arity = e.size();
                have_arity = true;
            } else if (e.size() != arity) {
                throw ParseError("term '" + tok + "' has " + std::to_string(e.size()) + " exponents, expected " +
                                 std::to_string(arity));
            }
            raw.emplace_back(c, std::move(e));
        }
        if (raw.empty()) continue;
        Integer den = 1;
        for (const auto& [c, e] : raw) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        SparsePoly f;
        for (const auto& [c, e] : raw) {
            Rational scaled = c * den;
            f.terms[e] += scaled.get_num();
        }
        std::erase_if(f.terms, [](const auto& kv) { return kv.second == 0; });
        polys.push_back(std::move(f));
    }
    if (polys.empty()) throw ParseError("polynomial file has no polynomials");
    return {std::move(polys), arity};
}

namespace padic_detail {

inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::optional<Integer> inverse_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return r;
}

// solve J d = b mod p^k; pivots must be units (J invertible mod p)
inline std::optional<std::vector<Integer>> solve_mod(std::vector<std::vector<Integer>> j, std::vector<Integer> b,
                                                     const Integer& p, const Integer& m) {
    const std::size_t n = j.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n && piv == n; ++r)
            if (mod(j[r][c], p) != 0) piv = r;
        if (piv == n) return std::nullopt;
        std::swap(j[c], j[piv]);
        std::swap(b[c], b[piv]);
        const Integer inv = *inverse_mod(j[c][c], m);
        for (auto& v : j[c]) v = mod(v * inv, m);
        b[c] = mod(b[c] * inv, m);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || j[r][c] == 0) continue;
            const Integer f = j[r][c];
            for (std::size_t k = 0; k < n; ++k) j[r][k] = mod(j[r][k] - f * j[c][k], m);
            b[r] = mod(b[r] - f * b[c], m);
        }
    }
    return b;
}

/* Jacobian by forward differences with step h = p^e: column i is
 * (F(x + h e_i) - F(x)) / h, exact in Z, and equal to dF/dx_i mod h.
 */
inline std::vector<std::vector<Integer>> difference_jacobian(const BlackBoxSystem& f, const std::vector<Integer>& x,
                                                             const std::vector<Integer>& fx, const Integer& h) {
    std::vector<std::vector<Integer>> jac(f.equations, std::vector<Integer>(f.arity));
    for (std::size_t i = 0; i < f.arity; ++i) {
        auto xs = x;
        xs[i] += h;
        const auto fs = f.eval(xs);
        for (std::size_t r = 0; r < f.equations; ++r) jac[r][i] = (fs[r] - fx[r]) / h;
    }
    return jac;
}

}  // namespace padic_detail

/* One Newton step from precision c to 2c: with h = p^c the difference
 * Jacobian is exact mod p^c, and F(x) = 0 mod p^c, so the correction is
 * right mod p^(2c).
 */
inline PadicVector newton_step(const BlackBoxSystem& f, const PadicVector& x) {
    using namespace padic_detail;
    const Integer& p = x.p;
    const unsigned long k = 2 * x.k;
    const Integer m = integer_pow(p, k);
    const Integer h = integer_pow(p, x.k);
    const auto fx = f.eval(x.values);
    const auto jac = difference_jacobian(f, x.values, fx, h);
    std::vector<Integer> rhs;
    for (const auto& v : fx) rhs.push_back(mod(v, m));
    auto d = solve_mod(jac, rhs, p, m);
    if (!d) throw SingularJacobian("finite-difference Jacobian is singular mod p");
    PadicVector out{p, k, {}};
    for (std::size_t i = 0; i < f.arity; ++i) out.values.push_back(mod(x.values[i] - (*d)[i], m));
    return out;
}

inline PadicVector start_lift(const BlackBoxSystem& f, const Integer& p, const std::vector<Integer>& x0) {
    using namespace padic_detail;
    if (f.arity != f.equations) throw InvalidArgument("Newton lifting needs a square system");
    if (x0.size() != f.arity) throw InvalidArgument("starting point has the wrong length");
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw InvalidArgument("p must be prime");
    PadicVector x{p, 1, {}};
    for (const auto& v : x0) x.values.push_back(mod(v, p));
    for (const auto& v : f.eval(x.values))
        if (mod(v, p) != 0) throw NotARoot("F(x0) is not 0 mod p");
    const auto fx = f.eval(x.values);
    const auto jac = difference_jacobian(f, x.values, fx, p);
    std::vector<std::vector<Integer>> jm = jac;
    if (!solve_mod(jm, std::vector<Integer>(f.arity, Integer(0)), p, p))
        throw SingularJacobian("Jacobian at x0 is singular mod p");
    return x;
}

/// Lift a simple root mod p to precision p^(2^m) >= p^target_k.
inline PadicVector hensel_newton(const BlackBoxSystem& f, const Integer& p, const std::vector<Integer>& x0,
                                 unsigned long target_k) {
    PadicVector x = start_lift(f, p, x0);
    while (x.k < target_k) x = newton_step(f, x);
    return x;
}

/* n/d = a mod m with |n|, d <= floor(sqrt(m / 2)), by the half-extended
 * Euclidean algorithm (2-dimensional lattice reduction).
 */
inline Rational rational_reconstruct(const Integer& a_in, const Integer& m) {
    if (m < 2) throw InvalidArgument("modulus must be at least 2");
    const Integer a = padic_detail::mod(a_in, m);
    Integer bound;
    {
        Integer half = m / 2;
        mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    }
    Integer r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 > bound) {
        const Integer q = r0 / r1;
        Integer t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    Integer n = r1, d = s1;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (d == 0 || d > bound) throw NoReconstruction("no fraction with numerator and denominator <= " + to_string(bound));
    Integer g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (g != 1) throw NoReconstruction("candidate fraction is not in lowest terms");
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    if (g != 1) throw NoReconstruction("denominator is not invertible mod m");
    return make_rational(n, d);
}

struct Recognized {
    std::vector<Rational> values;
    unsigned long precision = 0;  // k of the lift that reconstructed
};

/* Double the precision until every coordinate reconstructs and the rational
 * vector is an exact zero of F.  Nothing unverified is returned.
 */
inline Recognized lift_and_recognize(const BlackBoxSystem& f, const Integer& p, const std::vector<Integer>& x0,
                                     unsigned long max_k) {
    PadicVector x = start_lift(f, p, x0);
    for (;;) {
        const Integer m = x.modulus();
        std::vector<Rational> cand;
        try {
            for (const auto& v : x.values) cand.push_back(rational_reconstruct(v, m));
        } catch (const NoReconstruction&) {
            cand.clear();
        }
        if (!cand.empty()) {
            const auto vals = f.eval_exact(cand);
            if (std::all_of(vals.begin(), vals.end(), [](const Rational& v) { return v == 0; })) return {cand, x.k};
        }
        if (x.k >= max_k) throw NoConvergence("no verified rational root up to precision p^" + std::to_string(x.k));
        x = newton_step(f, x);
    }
}

}  // namespace hirank

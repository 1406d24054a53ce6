#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hirank/arith/errors.hpp"

namespace hirank {

using Integer = mpz_class;
/* mpq_class keeps numerator/denominator reduced with a positive
 * denominator after every arithmetic operation; the only way to break the
 * invariant is raw construction from two integers, which make_rational
 * handles.
 */
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

/// Parses `n` or `n/d` (optional sign, base 10).
inline Rational parse_rational(std::string_view text) {
    auto valid_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto to_int = [](std::string_view s) {
        if (!s.empty() && s[0] == '+') s.remove_prefix(1);
        return Integer(std::string(s), 10);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_int(text)) throw ParseError("not a rational: '" + std::string(text) + "'");
        return Rational(to_int(text));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("not a rational: '" + std::string(text) + "'");
    return make_rational(to_int(num), to_int(den));
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }
inline std::string to_string(const Integer& z) { return z.get_str(10); }

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

/// Natural log of |z| for arbitrarily large z (z != 0).
inline double log_abs(const Integer& z) {
    if (z == 0) return -HUGE_VAL;
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

inline std::optional<Integer> exact_sqrt(const Integer& z) {
    if (z < 0) return std::nullopt;
    if (mpz_perfect_square_p(z.get_mpz_t()) == 0) return std::nullopt;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    return r;
}

/// Nonnegative rational square root if q is a square in Q.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    auto n = exact_sqrt(q.get_num());
    if (!n) return std::nullopt;
    auto d = exact_sqrt(q.get_den());
    if (!d) return std::nullopt;
    return make_rational(*n, *d);
}

inline Rational rational_pow(const Rational& q, unsigned e) {
    Rational r(1);
    Rational b = q;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return r;
}

inline Integer integer_pow(const Integer& z, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), z.get_mpz_t(), e);
    return r;
}

/// Residue of q in [0, m) for gcd(den(q), m) = 1; nullopt otherwise.
inline std::optional<std::uint64_t> reduce_mod(const Rational& q, std::uint64_t m) {
    Integer mod(static_cast<unsigned long>(m));
    Integer den = q.get_den() % mod;
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0) {
        if (m == 1) return 0;
        return std::nullopt;
    }
    Integer r = (q.get_num() % mod) * inv % mod;
    if (r < 0) r += mod;
    return static_cast<std::uint64_t>(r.get_ui());
}

}  // namespace hirank

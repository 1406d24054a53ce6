#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "hirank/arith/linalg.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(NotPositiveDefinite);
HIRANK_DOMAIN_ERROR(PreconditionFailed);

using linalg::IntMatrix;
using linalg::IntVector;

/// Integral lattice given by a symmetric Gram matrix in some basis.
class IntLattice {
public:
    IntLattice() = default;
    explicit IntLattice(IntMatrix gram) : gram_(std::move(gram)) {
        for (std::size_t i = 0; i < gram_.size(); ++i) {
            if (gram_[i].size() != gram_.size()) throw InvalidArgument("Gram matrix must be square");
            for (std::size_t j = 0; j < i; ++j)
                if (gram_[i][j] != gram_[j][i]) throw InvalidArgument("Gram matrix must be symmetric");
        }
    }

    [[nodiscard]] std::size_t rank() const { return gram_.size(); }
    [[nodiscard]] const IntMatrix& gram() const { return gram_; }
    [[nodiscard]] const Integer& operator()(std::size_t i, std::size_t j) const { return gram_[i][j]; }

    [[nodiscard]] Integer dot(const IntVector& x, const IntVector& y) const {
        Integer s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0) continue;
            Integer t = 0;
            for (std::size_t j = 0; j < rank(); ++j) t += gram_[i][j] * y[j];
            s += x[i] * t;
        }
        return s;
    }
    [[nodiscard]] Integer norm(const IntVector& x) const { return dot(x, x); }

    /// G x, the pairings of x with the basis.
    [[nodiscard]] IntVector pairings(const IntVector& x) const {
        IntVector out(rank(), Integer(0));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) out[i] += gram_[i][j] * x[j];
        return out;
    }

    /// Sublattice with the given rows as basis.
    [[nodiscard]] IntLattice sublattice(const IntMatrix& basis) const {
        IntMatrix g(basis.size(), IntVector(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i; j < basis.size(); ++j) g[i][j] = g[j][i] = dot(basis[i], basis[j]);
        return IntLattice(std::move(g));
    }

    [[nodiscard]] IntLattice scaled(const Integer& c) const {
        IntMatrix g = gram_;
        for (auto& row : g)
            for (auto& v : row) v *= c;
        return IntLattice(std::move(g));
    }

    friend bool operator==(const IntLattice& a, const IntLattice& b) { return a.gram_ == b.gram_; }

private:
    IntMatrix gram_;
};

inline IntLattice direct_sum(const std::vector<IntLattice>& parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.rank();
    IntMatrix g(n, IntVector(n, Integer(0)));
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rank(); ++i)
            for (std::size_t j = 0; j < p.rank(); ++j) g[off + i][off + j] = p(i, j);
        off += p.rank();
    }
    return IntLattice(std::move(g));
}

struct Signature {
    std::size_t positive = 0, negative = 0, zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/* Sylvester inertia by symmetric elimination over Q.  A zero diagonal with a
 * nonzero off-diagonal entry a_ij is fixed by the congruence e_i -> e_i + e_j,
 * which puts 2 a_ij on the diagonal.
 */
inline Signature signature(const IntMatrix& gram) {
    const std::size_t n = gram.size();
    linalg::RatMatrix a(n, linalg::RatVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = gram[i][j];
    Signature s;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n && piv == n; ++i)
            if (!done[i] && a[i][i] != 0) piv = i;
        if (piv == n) {
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;  // remaining block is zero
            for (std::size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
            for (std::size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
            piv = pi;
        }
        done[piv] = true;
        const Rational d = a[piv][piv];
        (d > 0 ? s.positive : s.negative)++;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][piv] == 0) continue;
            const Rational f = a[i][piv] / d;
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[piv][j];
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i]) a[piv][i] = a[i][piv] = 0;
    }
    s.zero = n - s.positive - s.negative;
    return s;
}

struct LatticeInvariants {
    std::size_t rank = 0;
    Integer discriminant;
    bool even = true;
    Signature signature;
};

inline LatticeInvariants lattice_invariants(const IntLattice& l) {
    LatticeInvariants inv{l.rank(), l.rank() == 0 ? Integer(1) : linalg::det(l.gram()), true, signature(l.gram())};
    for (std::size_t i = 0; i < l.rank(); ++i)
        if (l(i, i) % 2 != 0) inv.even = false;
    return inv;
}

inline bool is_positive_definite(const IntLattice& l) { return signature(l.gram()).positive == l.rank(); }

inline void require_positive_definite(const IntLattice& l) {
    if (!is_positive_definite(l)) throw NotPositiveDefinite("lattice is not positive definite");
}

/// Lattice file: rank n on the first line, then n rows of n integers.
inline IntLattice read_lattice(std::istream& in) {
    long n = -1;
    if (!(in >> n) || n < 0) throw ParseError("lattice file must start with the rank");
    IntMatrix g(static_cast<std::size_t>(n), IntVector(static_cast<std::size_t>(n)));
    for (auto& row : g)
        for (auto& v : row) {
            std::string tok;
            if (!(in >> tok)) throw ParseError("lattice file has fewer than n*n Gram entries");
            if (v.set_str(tok, 10) != 0) throw ParseError("bad Gram entry '" + tok + "'");
        }
    std::string extra;
    if (in >> extra) throw ParseError("trailing data after Gram matrix");
    return IntLattice(std::move(g));
}

inline IntLattice parse_lattice(const std::string& text) {
    std::istringstream is(text);
    return read_lattice(is);
}

inline std::string format_lattice(const IntLattice& l) {
    std::ostringstream os;
    os << l.rank() << '\n';
    for (const auto& row : l.gram()) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << '\n';
    }
    return os.str();
}

}  // namespace hirank

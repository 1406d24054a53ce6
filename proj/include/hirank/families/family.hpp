#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "hirank/arith/poly.hpp"
#include "hirank/curves/weierstrass.hpp"
#include "hirank/families/ratfunc.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(DegenerateFiber);
HIRANK_DOMAIN_ERROR(SectionPole);
HIRANK_DOMAIN_ERROR(DegenerateFamily);

struct Section {
    RatFunc x, y;
};

/// Weierstrass discriminant over any commutative ring with integer scaling.
template <typename R>
R weierstrass_discriminant(const R& a1, const R& a2, const R& a3, const R& a4, const R& a6) {
    const Rational k2(2), k4(4), k8(8), k9(9), k27(27);
    R b2 = a1 * a1 + a2 * k4;
    R b4 = a4 * k2 + a1 * a3;
    R b6 = a3 * a3 + a6 * k4;
    R b8 = a1 * a1 * a6 + a2 * a6 * k4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return b2 * b4 * b6 * k9 - b2 * b2 * b8 - b4 * b4 * b4 * k8 - b6 * b6 * k27;
}

/* y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q(T) with polynomial
 * coefficients and marked sections.  Sections are not validated at
 * construction; verify_sections reports on them.
 */
class CurveFamily {
public:
    CurveFamily(std::array<PolyQ, 5> a, std::vector<Section> sections = {})
        : a_(std::move(a)), sections_(std::move(sections)) {
        disc_ = weierstrass_discriminant(a_[0], a_[1], a_[2], a_[3], a_[4]);
        if (disc_.is_zero()) throw DegenerateFamily("discriminant vanishes identically");
    }

    [[nodiscard]] const std::array<PolyQ, 5>& coefficients() const { return a_; }
    [[nodiscard]] const PolyQ& a1() const { return a_[0]; }
    [[nodiscard]] const PolyQ& a2() const { return a_[1]; }
    [[nodiscard]] const PolyQ& a3() const { return a_[2]; }
    [[nodiscard]] const PolyQ& a4() const { return a_[3]; }
    [[nodiscard]] const PolyQ& a6() const { return a_[4]; }
    [[nodiscard]] const std::vector<Section>& sections() const { return sections_; }
    [[nodiscard]] const PolyQ& discriminant() const { return disc_; }

    void add_section(Section s) { sections_.push_back(std::move(s)); }

    /// max over i of ceil(deg a_i / i).
    [[nodiscard]] int arithmetic_genus() const {
        static constexpr int weight[5] = {1, 2, 3, 4, 6};
        int d = 0;
        for (std::size_t i = 0; i < 5; ++i) {
            if (a_[i].is_zero()) continue;
            d = std::max(d, (a_[i].degree() + weight[i] - 1) / weight[i]);
        }
        return d;
    }

    /// Left minus right side of the equation at (x, y), in Q(T).
    [[nodiscard]] RatFunc equation(const RatFunc& x, const RatFunc& y) const {
        RatFunc a1(a_[0]), a2(a_[1]), a3(a_[2]), a4(a_[3]), a6(a_[4]);
        return y * y + a1 * x * y + a3 * y - (((x + a2) * x + a4) * x + a6);
    }

    [[nodiscard]] WeierstrassCurve fiber(const Rational& t) const {
        if (disc_(t) == 0) throw DegenerateFiber("discriminant vanishes at T = " + to_string(t));
        return {a_[0](t), a_[1](t), a_[2](t), a_[3](t), a_[4](t)};
    }

private:
    std::array<PolyQ, 5> a_;
    std::vector<Section> sections_;
    PolyQ disc_;
};

struct Specialization {
    WeierstrassCurve curve;
    std::vector<Point> points;
};

inline Specialization specialize(const CurveFamily& fam, const Rational& t) {
    WeierstrassCurve e = fam.fiber(t);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < fam.sections().size(); ++i) {
        const auto& s = fam.sections()[i];
        auto x = s.x(t), y = s.y(t);
        if (!x || !y) throw SectionPole("section " + std::to_string(i) + " has a pole at T = " + to_string(t));
        pts.push_back(e.point(*x, *y));
    }
    return {e, pts};
}

struct SectionCheck {
    std::size_t index;
    bool passed;
    std::string residual;  // "0" when passed
};

inline std::vector<SectionCheck> verify_sections(const CurveFamily& fam) {
    std::vector<SectionCheck> out;
    for (std::size_t i = 0; i < fam.sections().size(); ++i) {
        const auto& s = fam.sections()[i];
        RatFunc r = fam.equation(s.x, s.y);
        out.push_back({i, r.is_zero(), to_string(r)});
    }
    return out;
}

/// Group law on the generic fiber; nullopt is the point at infinity.
inline std::optional<Section> section_add(const CurveFamily& fam, const std::optional<Section>& p,
                                          const std::optional<Section>& q) {
    if (!p) return q;
    if (!q) return p;
    const RatFunc a1(fam.a1()), a2(fam.a2()), a3(fam.a3()), a4(fam.a4()), a6(fam.a6());
    const RatFunc two(PolyQ{Rational(2)}), three(PolyQ{Rational(3)});
    RatFunc lambda, nu;
    if (p->x == q->x) {
        const RatFunc den = two * p->y + a1 * p->x + a3;
        if (p->y != q->y || den.is_zero()) return std::nullopt;
        lambda = (three * p->x * p->x + two * a2 * p->x + a4 - a1 * p->y) / den;
        nu = ((-p->x) * p->x * p->x + a4 * p->x + two * a6 - a3 * p->y) / den;
    } else {
        const RatFunc dx = q->x - p->x;
        lambda = (q->y - p->y) / dx;
        nu = (p->y * q->x - q->y * p->x) / dx;
    }
    RatFunc x = lambda * lambda + a1 * lambda - a2 - p->x - q->x;
    RatFunc y = -((lambda + a1) * x) - nu - a3;
    return Section{x, y};
}

/* Exact order of a section over Q(T), if at most cap.  Torsion injects into
 * every smooth fiber, so the order n of P(t) at one good t is the only
 * candidate; nP = O is then confirmed symbolically.  Non-torsion multiples are
 * never formed over Q(T), where their degrees grow quadratically.
 */
inline std::optional<int> section_order(const CurveFamily& fam, const Section& s, int cap = 12) {
    for (long k = 2;; ++k) {
        const Rational t(k);
        if (fam.discriminant()(t) == 0) continue;
        const auto x = s.x(t), y = s.y(t);
        if (!x || !y) continue;
        const WeierstrassCurve e = fam.fiber(t);
        const auto n = e.order(e.point(*x, *y), cap);
        if (!n) return std::nullopt;
        std::optional<Section> acc = s;
        for (int i = 1; i < *n; ++i) {
            if (!acc) throw DegenerateFamily("section is torsion of order below its specialization");
            acc = section_add(fam, acc, s);
        }
        if (acc) throw DegenerateFamily("specialized order " + std::to_string(*n) + " is not the generic order");
        return n;
    }
}

/* Y with (X, Y) on the family, from the quadratic
 * Y^2 + (a1 X + a3) Y - (X^3 + a2 X^2 + a4 X + a6) = 0; nullopt when the
 * discriminant is not a square in Q(T).  Takes the + root.
 */
inline std::optional<RatFunc> recover_y(const CurveFamily& fam, const RatFunc& x) {
    RatFunc b = RatFunc(fam.a1()) * x + RatFunc(fam.a3());
    RatFunc c = ((x + RatFunc(fam.a2())) * x + RatFunc(fam.a4())) * x + RatFunc(fam.a6());
    RatFunc disc = b * b + RatFunc(PolyQ{Rational(4)}) * c;
    auto s = ratfunc_sqrt(disc);
    if (!s) return std::nullopt;
    return (*s - b) / RatFunc(PolyQ{Rational(2)});
}

/* Family text format:
 *   a1: c0 c1 c2 ...      (five lines, a1 a2 a3 a4 a6)
 *   section: Xnum|Xden|Ynum|Yden
 * Polynomials are coefficient lists in increasing degree; '#' starts a comment.
 */
inline CurveFamily parse_family(const std::string& text) {
    std::array<PolyQ, 5> a;
    std::array<bool, 5> seen{};
    std::vector<Section> sections;
    std::istringstream is(text);
    std::string line;
    const std::array<std::string, 5> names{"a1", "a2", "a3", "a4", "a6"};
    while (std::getline(is, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParseError("expected 'key: value' in '" + line + "'");
            continue;
        }
        std::string key = line.substr(0, colon);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        std::string value = line.substr(colon + 1);
        if (key == "section") {
            std::vector<std::string> parts;
            std::string part;
            std::istringstream ps(value);
            while (std::getline(ps, part, '|')) parts.push_back(part);
            if (parts.size() != 4) throw ParseError("section needs Xnum|Xden|Ynum|Yden");
            sections.push_back({RatFunc(parse_coeff_list(parts[0]), parse_coeff_list(parts[1])),
                                RatFunc(parse_coeff_list(parts[2]), parse_coeff_list(parts[3]))});
            continue;
        }
        bool known = false;
        for (std::size_t i = 0; i < 5; ++i)
            if (key == names[i]) {
                a[i] = parse_coeff_list(value);
                seen[i] = known = true;
            }
        if (!known) throw ParseError("unknown key '" + key + "'");
    }
    for (std::size_t i = 0; i < 5; ++i)
        if (!seen[i]) throw ParseError("missing coefficient " + names[i]);
    return {a, sections};
}

inline std::string format_family(const CurveFamily& fam) {
    std::ostringstream os;
    const std::array<std::string, 5> names{"a1", "a2", "a3", "a4", "a6"};
    for (std::size_t i = 0; i < 5; ++i) os << names[i] << ": " << to_coeff_list(fam.coefficients()[i]) << "\n";
    for (const auto& s : fam.sections())
        os << "section: " << to_coeff_list(s.x.num()) << "|" << to_coeff_list(s.x.den()) << "|" << to_coeff_list(s.y.num())
           << "|" << to_coeff_list(s.y.den()) << "\n";
    return os.str();
}

}  // namespace hirank

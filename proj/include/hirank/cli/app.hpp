#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "hirank/curves/cubic.hpp"
#include "hirank/curves/torsion.hpp"
#include "hirank/families/constructions.hpp"
#include "hirank/families/family.hpp"
#include "hirank/fixtures.hpp"
#include "hirank/heights/gram.hpp"
#include "hirank/heights/integral.hpp"
#include "hirank/heights/quartic.hpp"
#include "hirank/lattices/k3_tables.hpp"
#include "hirank/lattices/operations.hpp"
#include "hirank/lattices/roots.hpp"
#include "hirank/padic/harness.hpp"
#include "hirank/padic/padic.hpp"
#include "hirank/parallel.hpp"
#include "hirank/sieve/cache.hpp"
#include "hirank/sieve/score_curve.hpp"
#include "hirank/sieve/search.hpp"

namespace hirank::cli {

using json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Bad invocation that CLI11 cannot see: missing input, malformed flag value.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything a subcommand may read.  Filled by the parser, checked by validate().
struct RunConfig {
    std::string subcommand;
    std::vector<std::string> inputs;  // positional: files or values
    std::string curve, fixture, points, quartic, vector, start, specialize, fiber, zero_section, cache;
    std::uint64_t prime_bound = 1000;
    std::string range = "0:1000";
    std::int64_t t0 = 0, t1 = 1000;
    std::int64_t denominator = 1;
    std::size_t top_k = 10;
    double eps = kDefaultHeightEps;
    double tol = kDefaultRankTol;
    long box = 3;
    std::optional<double> height_cap;
    long height = 100;
    long min_norm = 10;
    unsigned long prime = 2;
    unsigned long max_precision = 256;
    std::optional<std::string> at;  // neron-pencil member parameter
    bool certify = false;
    std::optional<unsigned long> slice_prime;
    std::string output;
    unsigned threads = 0;
    bool json = false;
};

namespace detail {

inline std::string str(const Rational& q) { return to_string(q); }
inline std::string str(const Integer& z) { return to_string(z); }

inline json point_json(const Point& p) {
    if (p.is_infinity()) return "O";
    return json::array({str(p.x()), str(p.y())});
}

inline json curve_json(const WeierstrassCurve& e) {
    json a = json::array();
    for (const auto& c : e.coefficients()) a.push_back(str(c));
    return a;
}

inline json proj_json(const ProjPoint& p) { return json::array({str(p[0]), str(p[1]), str(p[2])}); }

inline json gram_json(const IntLattice& l) {
    json g = json::array();
    for (const auto& row : l.gram()) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v.get_si());
        g.push_back(r);
    }
    return g;
}

inline json int_vector_json(const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_si());
    return a;
}

inline bool is_scalar_array(const json& j) {
    return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
}

inline std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// "key: value" lines; nested objects and lists indent by two
inline void render_text(const json& j, std::ostream& os, const std::string& pad = "") {
    for (const auto& [key, v] : j.items()) {
        if (v.is_primitive()) {
            os << pad << key << ": " << scalar_text(v) << '\n';
        } else if (is_scalar_array(v)) {
            os << pad << key << ":";
            for (const auto& x : v) os << ' ' << scalar_text(x);
            os << '\n';
        } else if (v.is_object()) {
            os << pad << key << ":\n";
            render_text(v, os, pad + "  ");
        } else {
            os << pad << key << ":\n";
            for (const auto& item : v) {
                if (item.is_object()) {
                    std::ostringstream sub;
                    render_text(item, sub, pad + "    ");
                    std::string s = sub.str();
                    s.replace(pad.size() + 2, 2, "- ");
                    os << s;
                } else if (is_scalar_array(item)) {
                    os << pad << "  ";
                    for (std::size_t i = 0; i < item.size(); ++i) os << (i ? " " : "") << scalar_text(item[i]);
                    os << '\n';
                } else {
                    os << pad << "  " << item.dump() << '\n';
                }
            }
        }
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// first line that is neither blank nor a '#' comment
inline std::string first_data_line(const std::string& text, const std::string& what) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
    }
    throw ParseError(what + " file is empty");
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline IntVector parse_int_vector(const std::string& s, const std::string& flag) {
    IntVector v;
    for (const auto& tok : split_list(s)) {
        Integer z;
        if (z.set_str(tok, 10) != 0) throw UsageError(flag + ": bad integer '" + tok + "'");
        v.push_back(z);
    }
    if (v.empty()) throw UsageError(flag + " is empty");
    return v;
}

inline std::vector<Rational> parse_rationals(const std::vector<std::string>& toks) {
    std::vector<Rational> out;
    for (const auto& t : toks) out.push_back(parse_rational(t));
    return out;
}

inline const std::map<std::string, std::string>& curve_fixtures() {
    static const std::map<std::string, std::string> m{
        {"rank28", "rank-28 record curve"},
        {"z4-special", "Z/4Z family at T = 18745/6321"},
        {"37a", "y^2 + y = x^3 - x"},
    };
    return m;
}

inline WeierstrassCurve load_curve(const RunConfig& c) {
    if (!c.curve.empty()) return parse_curve(c.curve);
    if (c.fixture == "rank28") return fixtures::rank28_curve();
    if (c.fixture == "z4-special") return specialize(fixtures::z4_family(), fixtures::z4_special_t()).curve;
    if (c.fixture == "37a") return WeierstrassCurve(0, 0, 1, -1, 0);
    if (!c.fixture.empty()) throw UsageError("unknown curve fixture '" + c.fixture + "'");
    if (c.inputs.empty()) throw UsageError("give a curve file, --curve \"a1 a2 a3 a4 a6\", or --fixture");
    return parse_curve(first_data_line(read_file(c.inputs[0]), "curve"));
}

inline std::vector<Point> load_points(const RunConfig& c) {
    if (c.points.empty()) throw UsageError("--points file is required");
    std::istringstream is(read_file(c.points));
    std::vector<Point> out;
    std::string line;
    while (std::getline(is, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_point(line));
    }
    return out;
}

inline CurveFamily load_family(const RunConfig& c) {
    if (c.fixture == "z4") return fixtures::z4_family();
    if (c.fixture == "shioda") return fixtures::shioda_family();
    if (!c.fixture.empty()) throw UsageError("unknown family fixture '" + c.fixture + "'");
    if (c.inputs.empty()) throw UsageError("give a family file or --fixture z4|shioda");
    return parse_family(read_file(c.inputs[0]));
}

inline std::optional<IntLattice> named_lattice(const std::string& name) {
    static const std::regex root("([ade])([0-9]+)");
    std::smatch m;
    if (std::regex_match(name, m, root)) {
        const auto n = static_cast<std::size_t>(std::stoul(m[2].str()));
        switch (m[1].str()[0]) {
            case 'a': if (n >= 1) return a_n(n); break;
            case 'd': if (n >= 4) return d_n(n); break;
            case 'e': if (n >= 6 && n <= 8) return e_n(n); break;
        }
        return std::nullopt;
    }
    if (name == "d16+") return d_n_plus(16);
    if (name == "e8x2") return direct_sum({e_n(8), e_n(8)});
    if (name == "hyperbolic") return hyperbolic_plane();
    if (name == "inose-ns") return fixtures::inose_ns();
    if (name == "inose-d16") return fixtures::inose_d16_model();
    if (name == "niemeier-e8x3") return niemeier_e8_cubed();
    if (name == "niemeier-d16e8") return niemeier_d16_e8();
    if (name == "niemeier-a1x24") return niemeier_a1_24();
    return std::nullopt;
}

inline IntLattice load_lattice(const RunConfig& c) {
    if (!c.fixture.empty()) {
        if (auto l = named_lattice(c.fixture)) return *l;
        throw UsageError("unknown lattice fixture '" + c.fixture + "'");
    }
    if (c.inputs.empty()) throw UsageError("give a lattice file or --fixture");
    return parse_lattice(read_file(c.inputs[0]));
}

inline Quartic load_quartic(const RunConfig& c) {
    if (!c.quartic.empty()) return parse_quartic(c.quartic);
    if (c.inputs.empty()) throw UsageError("give a quartic file or --quartic \"c0 c1 c2 c3 c4\"");
    return parse_quartic(first_data_line(read_file(c.inputs[0]), "quartic"));
}

inline json torsion_json(const TorsionGroup& t) {
    json g = json::array();
    for (const auto& p : t.generators) g.push_back(point_json(p));
    json inv = json::array();
    for (int n : t.invariants()) inv.push_back(n);
    return json{{"label", t.label()},
                {"order", t.order()},
                {"invariants", inv},
                {"generators", g},
                {"in_mazur_list", in_mazur_list(t.cyclic, t.n)}};
}

inline json roots_json(const RootDecomposition& r) {
    json comps = json::array();
    for (const auto& c : r.components) comps.push_back({{"type", c.label()}, {"rank", c.rank}, {"roots", c.root_count}});
    return json{{"root_system", r.label()}, {"root_count", r.root_count}, {"root_rank", r.rank()}, {"components", comps}};
}

inline json lattice_json(const IntLattice& l, unsigned threads) {
    const auto inv = lattice_invariants(l);
    json j{{"rank", inv.rank},
           {"discriminant", str(inv.discriminant)},
           {"even", inv.even},
           {"signature", json::array({inv.signature.positive, inv.signature.negative, inv.signature.zero})},
           {"positive_definite", is_positive_definite(l)}};
    if (is_positive_definite(l)) {
        const json extra = roots_json(root_decomposition(l, threads));
        for (const auto& [k, v] : extra.items()) j[k] = v;
    }
    return j;
}

// ---------------------------------------------------------------------------
// subcommands; each returns its report, or writes JSON-lines for searches

inline json cmd_curve_info(const RunConfig& c) {
    const auto e = load_curve(c);
    const auto& iv = e.invariants();
    const auto integral = integral_model_scaling(e).apply(e);
    const auto shortm = short_model_isomorphism(integral).apply(integral);
    return json{{"curve", format_curve(e)},
                {"b2", str(iv.b2)},
                {"b4", str(iv.b4)},
                {"b6", str(iv.b6)},
                {"b8", str(iv.b8)},
                {"c4", str(iv.c4)},
                {"c6", str(iv.c6)},
                {"discriminant", str(iv.disc)},
                {"j", str(e.j_invariant())},
                {"integral_model", format_curve(integral)},
                {"short_model", format_curve(shortm)}};
}

inline json cmd_torsion(const RunConfig& c) {
    const auto e = load_curve(c);
    json j{{"curve", format_curve(e)}};
    const json extra = torsion_json(torsion_subgroup(e));
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

inline json cmd_score_curve(const RunConfig& c) {
    const auto e = load_curve(c);
    const auto s = score_curve(e, c.prime_bound);
    json skipped = json::array();
    for (auto p : s.skipped) skipped.push_back(p);
    return json{{"curve", format_curve(e)},
                {"prime_bound", c.prime_bound},
                {"score", s.score},
                {"primes_used", s.primes_used},
                {"skipped", skipped}};
}

inline void cmd_sieve_search(const RunConfig& c, std::ostream& out) {
    const auto fam = load_family(c);
    const unsigned threads = resolve_threads(c.threads);
    const NpTableSet set = c.cache.empty() ? build_np_tables(fam, c.prime_bound, threads)
                                           : load_or_build_tables(fam, c.prime_bound, c.cache, threads);
    SieveConfig cfg;
    cfg.t0 = c.t0;
    cfg.t1 = c.t1;
    cfg.denominator = c.denominator;
    cfg.top_k = c.top_k;
    cfg.threads = threads;
    for (const auto& cand : sieve_search(set, cfg))
        out << json{{"t", str(cand.t)}, {"fixed", cand.fixed}, {"score", cand.score}}.dump() << '\n';
}

inline json cmd_verify_family(const RunConfig& c) {
    const auto fam = load_family(c);
    json sections = json::array();
    bool all = true;
    for (const auto& r : verify_sections(fam)) {
        json s{{"index", r.index}, {"passed", r.passed}, {"residual", r.residual}};
        if (r.passed) {
            const auto n = section_order(fam, fam.sections()[r.index]);
            s["order"] = n ? json(*n) : json("infinite");
        }
        all = all && r.passed;
        sections.push_back(s);
    }
    json j{{"sections", sections}, {"all_passed", all}};
    if (!c.specialize.empty()) {
        const Rational t = parse_rational(c.specialize);
        const auto sp = specialize(fam, t);
        json pts = json::array(), orders = json::array();
        for (const auto& p : sp.points) {
            pts.push_back(point_json(p));
            const auto n = sp.curve.order(p);
            orders.push_back(n ? json(*n) : json("infinite"));
        }
        j["specialization"] = json{{"t", str(t)},
                                   {"curve", format_curve(sp.curve)},
                                   {"points", pts},
                                   {"orders", orders},
                                   {"torsion", torsion_subgroup(sp.curve).label()}};
    }
    return j;
}

inline json cmd_rank(const RunConfig& c) {
    const auto e = load_curve(c);
    const auto pts = load_points(c);
    const auto g = height_gram(e, pts, c.eps, resolve_threads(c.threads));
    const auto cert = gram_rank(g, c.tol);
    json gram = json::array();
    for (const auto& row : g.matrix) gram.push_back(row);
    return json{{"curve", format_curve(e)},
                {"points", pts.size()},
                {"rank", cert.rank},
                {"independent", cert.independent},
                {"regulator", cert.regulator},
                {"gram", gram},
                {"max_error", g.max_error()}};
}

inline void cmd_integral_points(const RunConfig& c, std::ostream& out) {
    const auto e = load_curve(c);
    const auto gens = load_points(c);
    for (const auto& p : integral_points_in_span(e, gens, {c.box, c.height_cap}))
        out << json{{"x", str(p.point.x())}, {"y", str(p.point.y())}, {"hhat", p.hhat}}.dump() << '\n';
}

inline void cmd_quartic_search(const RunConfig& c, std::ostream& out) {
    const auto q = load_quartic(c);
    for (const auto& p : quartic_search(q, c.height, resolve_threads(c.threads))) {
        const double h = std::max(log_abs(p.x.get_num()), log_abs(p.x.get_den()));
        out << json{{"x", str(p.x)}, {"y", str(p.y)}, {"hhat", h}}.dump() << '\n';
    }
}

inline json cmd_lattice_analyze(const RunConfig& c) {
    return lattice_json(load_lattice(c), resolve_threads(c.threads));
}

inline json cmd_mw_group(const RunConfig& c) {
    IntLattice ns = load_lattice(c);
    const bool inose = c.fixture == "inose-ns";
    IntLattice ess = ns;
    if (c.fiber.empty() != c.zero_section.empty()) throw UsageError("--fiber and --zero-section go together");
    if (!c.fiber.empty() || inose) {
        const IntVector f = c.fiber.empty() ? fixtures::inose_fiber() : parse_int_vector(c.fiber, "--fiber");
        const IntVector s = c.zero_section.empty() ? fixtures::inose_zero_section()
                                                   : parse_int_vector(c.zero_section, "--zero-section");
        ess = essential_lattice(ns, f, s);
    }
    const auto mw = mw_group(ess, resolve_threads(c.threads));
    json tors = json::array();
    for (const auto& d : mw.torsion) tors.push_back(str(d));
    json j{{"essential_rank", ess.rank()},
           {"mw_rank", mw.mw_rank},
           {"torsion", mw.torsion_label()},
           {"torsion_invariants", tors}};
    const json extra = roots_json(mw.roots);
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

inline json cmd_half_holes(const RunConfig& c) {
    const auto l = load_lattice(c);
    require_positive_definite(l);
    const auto cosets = half_hole_cosets(l, Integer(c.min_norm), kHalfHoleRankGuard, resolve_threads(c.threads));
    json list = json::array();
    for (const auto& cc : cosets)
        list.push_back({{"coset", int_vector_json(cc.coset)},
                        {"minimum", str(cc.minimum.norm)},
                        {"vector", int_vector_json(cc.minimum.coords)}});
    return json{{"rank", l.rank()}, {"min_norm", c.min_norm}, {"count", cosets.size()}, {"cosets", list}};
}

inline json cmd_neighbor(const RunConfig& c) {
    const auto l = load_lattice(c);
    IntVector v;
    if (!c.vector.empty())
        v = parse_int_vector(c.vector, "--vector");
    else if (c.fixture == "e8x2")
        v = fixtures::e8_squared_neighbor_vector();
    else
        throw UsageError("--vector is required");
    const auto nb = p_neighbor(l, v, c.prime);
    json j{{"prime", c.prime}, {"vector", int_vector_json(v)}};
    const json extra = lattice_json(nb, resolve_threads(c.threads));
    for (const auto& [k, val] : extra.items()) j[k] = val;
    j["gram"] = gram_json(nb);
    return j;
}

inline json cmd_reconstruct(const RunConfig& c) {
    if (c.inputs.size() != 2) throw UsageError("reconstruct takes a residue and a modulus");
    Integer a, m;
    if (a.set_str(c.inputs[0], 10) != 0 || m.set_str(c.inputs[1], 10) != 0) throw UsageError("residue and modulus must be integers");
    return json{{"residue", str(a)}, {"modulus", str(m)}, {"value", str(rational_reconstruct(a, m))}};
}

inline json cmd_lift(const RunConfig& c) {
    if (c.inputs.empty()) throw UsageError("give a polynomial system file");
    std::istringstream in(read_file(c.inputs[0]));
    auto [polys, arity] = read_polynomial_system(in);
    const auto sys = polynomial_system(std::move(polys), arity);
    if (c.start.empty()) throw UsageError("--start is required");
    std::vector<Integer> x0;
    for (const auto& v : parse_int_vector(c.start, "--start")) x0.push_back(v);
    const auto r = lift_and_recognize(sys, Integer(c.prime), x0, c.max_precision);
    json vals = json::array();
    for (const auto& v : r.values) vals.push_back(str(v));
    return json{{"prime", c.prime}, {"precision", r.precision}, {"values", vals}, {"verified", true}};
}

inline json cmd_mestre(const RunConfig& c) {
    json j = json::object();
    if (c.certify) {
        auto cert = [](const GridCertificate& g) {
            return json{{"variables", g.variables},
                        {"points_per_variable", g.points_per_variable},
                        {"evaluations", g.evaluations},
                        {"nonzero", g.nonzero},
                        {"proves_vanishing", g.proves_vanishing()}};
        };
        j["antipodal"] = cert(certify_antipodal_vanishing());
        j["a4"] = cert(certify_a4_vanishing());
    }
    if (c.slice_prime) {
        const Integer p(*c.slice_prime);
        const auto h = mestre_slice_harness(p);
        const auto r = lift_and_recognize(h.system, p, {h.start}, c.max_precision);
        j["slice"] = json{{"prime", *c.slice_prime},
                          {"planted_t", str(h.planted_t)},
                          {"recovered_t", str(r.values[0])},
                          {"precision", r.precision}};
    }
    if (!c.inputs.empty()) {
        if (c.inputs.size() != 12) throw UsageError("mestre takes twelve rationals");
        const auto v = parse_rationals(c.inputs);
        std::array<Rational, 12> x;
        std::copy(v.begin(), v.end(), x.begin());
        const Rational f = mestre_quintic(x);
        j["F"] = str(f);
        if (f == 0) {
            const auto m = mestre_family(x);
            json pts = json::array();
            for (const auto& p : m.points) pts.push_back(proj_json(p));
            j["R"] = to_coeff_list(m.R);
            j["A2"] = to_coeff_list(m.A2);
            j["A3"] = to_coeff_list(m.A3);
            j["cubic"] = to_string(m.cubic);
            j["points"] = pts;
        }
    }
    if (j.empty()) throw UsageError("mestre needs twelve rationals, --certify, or --slice p");
    return j;
}

inline json cmd_neron_pencil(const RunConfig& c) {
    if (c.inputs.size() != 8) throw UsageError("neron-pencil takes eight rationals");
    const auto v = parse_rationals(c.inputs);
    std::array<Rational, 8> u;
    std::copy(v.begin(), v.end(), u.begin());
    const auto pencil = neron_pencil(u);
    json base = json::array();
    for (const auto& p : pencil.base_points) base.push_back(proj_json(p));
    json j{{"c0", to_string(pencil.c0)}, {"c1", to_string(pencil.c1)}, {"base_points", base}};
    if (c.at) {
        const Rational t = parse_rational(*c.at);
        const auto member = pencil.member(t);
        const auto map = nagell_cubic_to_weierstrass(member, pencil.base_points.back());
        json images = json::array();
        for (std::size_t i = 0; i + 1 < pencil.base_points.size(); ++i)
            images.push_back(point_json(map.forward(pencil.base_points[i])));
        j["member"] = json{{"t", str(t)},
                           {"cubic", to_string(member)},
                           {"curve", format_curve(map.curve())},
                           {"base_point_images", images}};
    }
    return j;
}

inline const std::vector<std::pair<std::string, std::string>>& fixture_list() {
    static const std::vector<std::pair<std::string, std::string>> list{
        {"rank28", "rank-28 record curve (curve format)"},
        {"z4-family", "Z/4Z family with its four sections (family format)"},
        {"shioda-family", "y^2 = x^3 + T^6 + 1 with section (-T^2, 1) (family format)"},
        {"shimura", "check of the printed points on u^2 = 16t^6 - 19t^4 + 88t^2 - 48"},
        {"inose-ns", "H + (-E8)^2 (lattice format)"},
        {"inose-d16", "D16 with half-spin glue (lattice format)"},
        {"e8x2-neighbor", "E8 + E8 and its 2-neighbor vector"},
        {"fiber-tables", "torsion and fiber configurations of elliptic K3 surfaces"},
    };
    return list;
}

inline json shimura_check() {
    const auto f = fixtures::shimura_sextic();
    json pts = json::array();
    bool ok = true;
    for (const auto& [t0, u0] : fixtures::shimura_points())
        for (int st : {1, -1})
            for (int su : {1, -1}) {
                const Rational t = t0 * st, u = u0 * su;
                Rational r = u * u - f(t);
                ok = ok && r == 0;
                pts.push_back({{"t", str(t)}, {"u", str(u)}, {"residual", str(r)}});
            }
    return json{{"equation", "u^2 = 16t^6 - 19t^4 + 88t^2 - 48"}, {"points", pts}, {"all_zero", ok}};
}

inline json fiber_tables_json() {
    json rows = json::array();
    for (const auto& e : k3_fiber_table())
        rows.push_back({{"torsion", e.torsion.label()}, {"fibers", e.fibers}, {"formula", e.formula}, {"rank_bound", e.rank_bound}});
    json discs = json::array();
    for (auto d : kClassNumberOneDiscriminants) discs.push_back(d);
    return json{{"rows", rows}, {"genus_rank_bound", "10d - 2"}, {"class_number_one_discriminants", discs}};
}

// returns false only when an embedded check fails
inline bool cmd_fixtures(const RunConfig& c, std::ostream& out) {
    if (c.inputs.empty()) {
        if (c.json) {
            json j = json::array();
            for (const auto& [name, what] : fixture_list()) j.push_back({{"name", name}, {"description", what}});
            out << j.dump(2) << '\n';
        } else {
            for (const auto& [name, what] : fixture_list()) out << name << "  " << what << '\n';
        }
        return true;
    }
    const std::string& name = c.inputs[0];
    auto emit = [&](const json& j, const std::string& text) {
        if (c.json)
            out << j.dump(2) << '\n';
        else
            out << text;
    };
    if (name == "rank28") {
        const auto e = fixtures::rank28_curve();
        emit(json{{"curve", format_curve(e)}}, format_curve(e) + "\n");
    } else if (name == "z4-family" || name == "shioda-family") {
        const auto fam = name == "z4-family" ? fixtures::z4_family() : fixtures::shioda_family();
        emit(json{{"family", format_family(fam)}}, format_family(fam));
    } else if (name == "shimura") {
        const auto j = shimura_check();
        std::ostringstream os;
        render_text(j, os);
        emit(j, os.str());
        return j["all_zero"].get<bool>();
    } else if (name == "inose-ns" || name == "inose-d16") {
        const auto l = name == "inose-ns" ? fixtures::inose_ns() : fixtures::inose_d16_model();
        json j{{"gram", gram_json(l)}};
        if (name == "inose-ns") {
            j["fiber"] = int_vector_json(fixtures::inose_fiber());
            j["zero_section"] = int_vector_json(fixtures::inose_zero_section());
        }
        emit(j, format_lattice(l));
    } else if (name == "e8x2-neighbor") {
        const auto l = direct_sum({e_n(8), e_n(8)});
        const auto v = fixtures::e8_squared_neighbor_vector();
        std::ostringstream os;
        os << format_lattice(l) << "# vector:";
        for (const auto& x : v) os << ' ' << x;
        os << '\n';
        emit(json{{"gram", gram_json(l)}, {"vector", int_vector_json(v)}}, os.str());
    } else if (name == "fiber-tables") {
        const auto j = fiber_tables_json();
        std::ostringstream os;
        render_text(j, os);
        emit(j, os.str());
    } else {
        throw UsageError("unknown fixture '" + name + "'");
    }
    return true;
}

inline void parse_range(RunConfig& c) {
    static const std::regex re(R"((-?[0-9]+):(-?[0-9]+))");
    std::smatch m;
    if (!std::regex_match(c.range, m, re)) throw UsageError("--range must be T0:T1");
    c.t0 = std::stoll(m[1].str());
    c.t1 = std::stoll(m[2].str());
    if (c.t0 > c.t1) throw UsageError("--range needs T0 <= T1");
}

}  // namespace detail

/// Checks that cut across flags; CLI11 has already rejected unknown ones.
inline void validate(RunConfig& c) {
    if (c.subcommand == "sieve-search") detail::parse_range(c);
    if (c.denominator < 1) throw UsageError("--denominator must be positive");
    if (c.top_k < 1) throw UsageError("--top must be positive");
    if (c.prime_bound < 3) throw UsageError("--primes must be at least 3");
    if (c.eps <= 0 || c.tol <= 0) throw UsageError("--eps and --tol must be positive");
    if (c.height < 1) throw UsageError("--height must be positive");
}

inline const std::vector<std::pair<std::string, std::string>>& subcommands() {
    static const std::vector<std::pair<std::string, std::string>> list{
        {"curve-info", "invariants and models of a curve"},
        {"torsion", "torsion subgroup of a curve"},
        {"score-curve", "Mestre score of a single curve"},
        {"sieve-search", "sieve a family for high-scoring specializations"},
        {"verify-family", "check the sections of a family over Q(T)"},
        {"rank", "certified rank of a point set by canonical heights"},
        {"integral-points", "integral points in the span of generators"},
        {"quartic-search", "rational points on y^2 = quartic"},
        {"lattice-analyze", "invariants and root system of a lattice"},
        {"mw-group", "Mordell-Weil group from an essential or Neron-Severi lattice"},
        {"half-holes", "cosets of 2L of norm 2 mod 4 with large minimum"},
        {"neighbor", "p-neighbor of an even lattice"},
        {"reconstruct", "rational reconstruction of a residue"},
        {"lift", "Hensel-Newton lift and rational recognition"},
        {"mestre", "Mestre quintic, 12-point construction, certificates"},
        {"neron-pencil", "pencil of cubics through nine cuspidal points"},
        {"fixtures", "list or emit the built-in fixtures"},
    };
    return list;
}

inline int dispatch(RunConfig& c, std::ostream& out) {
    using namespace detail;
    validate(c);
    const std::string& s = c.subcommand;
    auto report = [&](const json& j) {
        if (c.json)
            out << j.dump(2) << '\n';
        else
            render_text(j, out);
    };
    if (s == "curve-info") report(cmd_curve_info(c));
    else if (s == "torsion") report(cmd_torsion(c));
    else if (s == "score-curve") report(cmd_score_curve(c));
    else if (s == "sieve-search") cmd_sieve_search(c, out);
    else if (s == "verify-family") report(cmd_verify_family(c));
    else if (s == "rank") report(cmd_rank(c));
    else if (s == "integral-points") cmd_integral_points(c, out);
    else if (s == "quartic-search") cmd_quartic_search(c, out);
    else if (s == "lattice-analyze") report(cmd_lattice_analyze(c));
    else if (s == "mw-group") report(cmd_mw_group(c));
    else if (s == "half-holes") report(cmd_half_holes(c));
    else if (s == "neighbor") report(cmd_neighbor(c));
    else if (s == "reconstruct") report(cmd_reconstruct(c));
    else if (s == "lift") report(cmd_lift(c));
    else if (s == "mestre") report(cmd_mestre(c));
    else if (s == "neron-pencil") report(cmd_neron_pencil(c));
    else if (s == "fixtures") return cmd_fixtures(c, out) ? kExitOk : kExitDomain;
    return kExitOk;
}

inline void build_parser(CLI::App& app, RunConfig& c) {
    app.require_subcommand(1, 1);
    app.fallthrough(false);
    for (const auto& [name, help] : subcommands()) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("inputs", c.inputs, "input files or values");
        sub->add_flag("--json", c.json, "machine-readable output");
        sub->add_option("--threads", c.threads, "worker threads (0: HIRANK_THREADS or all cores)");
        sub->add_option("-o,--output", c.output, "write output to this file");
        sub->callback([&c, n = name] { c.subcommand = n; });
        const bool curve = name == "curve-info" || name == "torsion" || name == "score-curve" || name == "rank" ||
                           name == "integral-points";
        if (curve) sub->add_option("--curve", c.curve, "curve as \"a1 a2 a3 a4 a6\"");
        if (curve || name == "sieve-search" || name == "verify-family" || name == "lattice-analyze" ||
            name == "mw-group" || name == "half-holes" || name == "neighbor")
            sub->add_option("--fixture", c.fixture, "built-in input instead of a file");
        if (name == "score-curve" || name == "sieve-search")
            sub->add_option("--primes", c.prime_bound, "use primes below this bound");
        if (name == "sieve-search") {
            sub->add_option("--range", c.range, "numerator range T0:T1");
            sub->add_option("--denominator", c.denominator, "t = n / denominator");
            sub->add_option("--top", c.top_k, "number of candidates kept");
            sub->add_option("--cache", c.cache, "N_p table cache file");
        }
        if (name == "verify-family") sub->add_option("--specialize", c.specialize, "also specialize at this T");
        if (name == "rank" || name == "integral-points") {
            sub->add_option("--points", c.points, "points file, one \"x y\" per line");
            sub->add_option("--eps", c.eps, "canonical height error bound");
        }
        if (name == "rank") sub->add_option("--tol", c.tol, "rank tolerance");
        if (name == "integral-points") {
            sub->add_option("--box", c.box, "coefficient bound |n_i| <= box");
            sub->add_option("--height-cap", c.height_cap, "keep combinations with n^T G n <= cap");
        }
        if (name == "quartic-search") {
            sub->add_option("--quartic", c.quartic, "quartic as \"c0 c1 c2 c3 c4\"");
            sub->add_option("--height", c.height, "naive height bound H");
        }
        if (name == "mw-group") {
            sub->add_option("--fiber", c.fiber, "fiber class f, comma separated");
            sub->add_option("--zero-section", c.zero_section, "zero section class s, comma separated");
        }
        if (name == "half-holes") sub->add_option("--min-norm", c.min_norm, "minimum norm of a coset");
        if (name == "neighbor") {
            sub->add_option("--vector", c.vector, "neighbor vector, comma separated");
            sub->add_option("--prime", c.prime, "p");
        }
        if (name == "lift") {
            sub->add_option("--prime", c.prime, "p");
            sub->add_option("--start", c.start, "root mod p, comma separated");
        }
        if (name == "lift" || name == "mestre")
            sub->add_option("--max-precision", c.max_precision, "give up beyond p^k");
        if (name == "mestre") {
            sub->add_flag("--certify", c.certify, "grid certificates of vanishing");
            sub->add_option("--slice", c.slice_prime, "lift the planted slice root at this prime");
        }
        if (name == "neron-pencil") sub->add_option("--at", c.at, "convert the member at this t");
    }
}

/// Parses args (without the program name), runs one pipeline, returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hirank: elliptic curves of high rank and K3 lattices", "hirank"};
    RunConfig c;
    build_parser(app, c);
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        if (!c.output.empty()) {
            std::ofstream file(c.output);
            if (!file) throw UsageError("cannot write '" + c.output + "'");
            return dispatch(c, file);
        }
        return dispatch(c, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}

}  // namespace hirank::cli

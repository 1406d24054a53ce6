#pragma once

#include <array>
#include <cctype>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "hirank/curves/torsion.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(UnknownTorsionLabel);

/* Minimal reducible fibers of an elliptic K3 surface with given torsion.
 * Fibers are I_n types written n^mult; the rank bound is the number of
 * degenerate fibers minus 6.
 */
struct FiberTableEntry {
    TorsionGroup torsion;
    std::string fibers;
    std::string formula;  // (a1, a2, a3, a4, a6) shape, empty where not listed
    int rank_bound = 0;
};

inline const std::vector<FiberTableEntry>& k3_fiber_table() {
    static const std::vector<FiberTableEntry> table{
        {{true, 1, {}}, "1^24", "(0, 0, 0, a4, a6)", 18},
        {{true, 2, {}}, "2^8 1^8", "(0, a2, 0, a4, 0)", 10},
        {{true, 3, {}}, "3^6 1^6", "(a1, 0, a3, 0, 0)", 6},
        {{true, 4, {}}, "4^4 2^2 1^4", "(a1, a2, a1 a2, 0, 0)", 4},
        {{true, 5, {}}, "5^4 1^4", "", 2},
        {{true, 6, {}}, "6^2 3^2 2^2 1^2", "", 2},
        {{true, 7, {}}, "7^3 1^3", "", 0},
        {{true, 8, {}}, "8^2 4 2 1^2", "", 0},
        {{false, 2, {}}, "2^12", "", 6},
        {{false, 4, {}}, "4^4 2^4", "", 2},
        {{false, 6, {}}, "6^3 2^3", "", 0},
    };
    return table;
}

/* Accepts "trivial", "0", "{0}", "Z/nZ", "Z/n", and products such as
 * "Z/2Z x Z/4Z", "Z/2+Z/4", "(Z/2Z)⊕(Z/4Z)".
 */
inline TorsionGroup parse_torsion_label(const std::string& label) {
    std::string s;
    for (char c : label)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "trivial" || s == "0" || s == "{0}" || s == "1") return {true, 1, {}};
    static const std::regex factor(R"(Z/(\d+)(Z)?)");
    std::vector<int> orders;
    for (auto it = std::sregex_iterator(s.begin(), s.end(), factor); it != std::sregex_iterator(); ++it)
        orders.push_back(std::stoi((*it)[1]));
    TorsionGroup g;
    if (orders.size() == 1) {
        g = {true, orders[0], {}};
    } else if (orders.size() == 2 && orders[0] == 2) {
        g = {false, orders[1], {}};
    } else {
        throw UnknownTorsionLabel("cannot read torsion label '" + label + "'");
    }
    if (g.n < 1 || !in_mazur_list(g.cyclic, g.n)) throw UnknownTorsionLabel("'" + label + "' is not in Mazur's list");
    return g;
}

/// Table row for a Mazur group, or nullopt for the four groups that cannot arise.
inline std::optional<FiberTableEntry> k3_fiber_entry(const std::string& label) {
    const TorsionGroup g = parse_torsion_label(label);
    for (const auto& e : k3_fiber_table())
        if (e.torsion.cyclic == g.cyclic && e.torsion.n == g.n) return e;
    return std::nullopt;
}

/// Mordell-Weil rank bound 10d - 2 for an elliptic surface of arithmetic genus d.
inline long k3_genus_rank_bound(long d) {
    if (d < 1) throw InvalidArgument("arithmetic genus must be at least 1");
    return 10 * d - 2;
}

inline constexpr std::array<long, 13> kClassNumberOneDiscriminants{-3,  -4,  -7,  -8,  -11, -12, -16,
                                                                   -19, -27, -28, -43, -67, -163};

inline bool is_class_number_one_discriminant(long d) {
    for (long x : kClassNumberOneDiscriminants)
        if (x == d) return true;
    return false;
}

}  // namespace hirank

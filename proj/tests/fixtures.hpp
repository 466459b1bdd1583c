#pragma once

// Structure builders shared across test binaries. diamond() is the worked
// example used throughout: two binary-question spaces S_a and S_b refined by a
// common three-state space S_c.

#include <stdexcept>
#include <string>

#include "evlat/structure.hpp"

namespace fixtures {

inline evlat::Structure must(const evlat::StructureInput& in) {
    evlat::ValidationReport rep = evlat::validate_structure(in);
    if (!rep.ok) {
        std::string why = "fixture failed validation:";
        for (const auto& v : rep.violations) why += " [" + v.axiom + "] " + v.detail;
        throw std::runtime_error(why);
    }
    return *rep.structure;
}

inline evlat::StructureInput diamond_input() {
    evlat::StructureInput in;
    in.spaces = {{"S_a", {"a", "¬a"}}, {"S_b", {"b", "¬b"}}, {"S_c", {"c1", "c2", "c3"}}};
    in.order = {{"S_c", "S_a"}, {"S_c", "S_b"}};
    in.projections = {
        {"S_c", "S_a", {{"c1", "a"}, {"c2", "a"}, {"c3", "¬a"}}},
        {"S_c", "S_b", {{"c1", "b"}, {"c2", "¬b"}, {"c3", "¬b"}}},
    };
    return in;
}

inline evlat::Structure diamond() { return must(diamond_input()); }

inline evlat::StructureInput single_space_input(int n) {
    evlat::StructureInput in;
    evlat::SpaceDef sp;
    sp.id = "s";
    for (int i = 1; i <= n; ++i) sp.states.push_back("x" + std::to_string(i));
    in.spaces = {sp};
    return in;
}

inline evlat::Structure single_space(int n) { return must(single_space_input(n)); }

// Three-space chain T > M > L with the composite map spelled out explicitly,
// so tests can perturb it without touching derivation.
inline evlat::StructureInput chain_input() {
    evlat::StructureInput in;
    in.spaces = {{"T", {"t1", "t2", "t3"}}, {"M", {"m1", "m2"}}, {"L", {"l1"}}};
    in.order = {{"T", "M"}, {"M", "L"}, {"T", "L"}};
    in.projections = {
        {"T", "M", {{"t1", "m1"}, {"t2", "m1"}, {"t3", "m2"}}},
        {"M", "L", {{"m1", "l1"}, {"m2", "l1"}}},
        {"T", "L", {{"t1", "l1"}, {"t2", "l1"}, {"t3", "l1"}}},
    };
    return in;
}

inline evlat::Structure chain() { return must(chain_input()); }

// A valid structure whose top contributes no event to the reduced family: the
// top has three states and every coarsening of it into two blocks sits below
// it, so each nontrivial subset of the top is a block of some coarser space.
inline evlat::StructureInput three_cover_input() {
    evlat::StructureInput in;
    in.spaces = {{"T", {"t1", "t2", "t3"}},
                 {"A", {"a12", "a3"}},
                 {"B", {"b13", "b2"}},
                 {"C", {"c1", "c23"}}};
    in.order = {{"T", "A"}, {"T", "B"}, {"T", "C"}};
    in.projections = {
        {"T", "A", {{"t1", "a12"}, {"t2", "a12"}, {"t3", "a3"}}},
        {"T", "B", {{"t1", "b13"}, {"t2", "b2"}, {"t3", "b13"}}},
        {"T", "C", {{"t1", "c1"}, {"t2", "c23"}, {"t3", "c23"}}},
    };
    return in;
}

inline evlat::Structure three_cover() { return must(three_cover_input()); }

// Two incomparable spaces that partition the top identically under different
// state names. Their events pair up with equal traces, so the reduced family
// keeps both of each pair and trace containment fails antisymmetry.
inline evlat::StructureInput duplicate_pair_input() {
    evlat::StructureInput in;
    in.spaces = {{"C3", {"c1", "c2", "c3"}}, {"A", {"a1", "a2"}}, {"P", {"p1", "p2"}}};
    in.order = {{"C3", "A"}, {"C3", "P"}};
    in.projections = {
        {"C3", "A", {{"c1", "a1"}, {"c2", "a1"}, {"c3", "a2"}}},
        {"C3", "P", {{"c1", "p1"}, {"c2", "p1"}, {"c3", "p2"}}},
    };
    return in;
}

inline evlat::Structure duplicate_pair() { return must(duplicate_pair_input()); }

// Hand-checked comparabilities (lower, upper) between the diamond's 15 events,
// keyed by their rendered labels. The event order is exactly the reflexive
// transitive closure of these; the list carries a few redundant pairs.
inline std::vector<std::pair<std::string, std::string>> diamond_event_edges() {
    const std::string min = "∅@S_c", max = "Ω@S∅";
    const std::string c1 = "{c1}@S_c", c2 = "{c2}@S_c", c3 = "{c3}@S_c";
    const std::string cc1 = "{c1,c2}@S_c", cc2 = "{c1,c3}@S_c", cc3 = "{c2,c3}@S_c";
    const std::string ccc = "{c1,c2,c3}@S_c";
    const std::string a = "{a}@S_a", na = "{¬a}@S_a", aaa = "{a,¬a}@S_a";
    const std::string b = "{b}@S_b", nb = "{¬b}@S_b", bbb = "{b,¬b}@S_b";
    return {{min, c1},  {c1, cc1},  {cc1, ccc}, {ccc, aaa}, {aaa, max}, {min, c2},  {c2, cc1},
            {c2, cc3},  {c1, b},    {b, bbb},   {bbb, max}, {cc1, a},   {a, aaa},   {cc3, nb},
            {nb, bbb},  {c3, na},   {c3, cc2},  {c1, cc2},  {cc2, ccc}, {ccc, bbb}, {na, aaa},
            {min, c3},  {c3, cc3},  {cc3, ccc}, {min, b},   {min, a},   {min, na},  {min, nb}};
}

// The diamond's reduced family is an eight-element cube; these are its
// covering pairs under trace inclusion at the most expressive space.
inline std::vector<std::pair<std::string, std::string>> diamond_reduced_edges() {
    const std::string min = "∅@S_c", max = "Ω@S∅";
    const std::string a = "{a}@S_a", na = "{¬a}@S_a";
    const std::string b = "{b}@S_b", nb = "{¬b}@S_b";
    const std::string c2 = "{c2}@S_c", cc2 = "{c1,c3}@S_c";
    return {{min, b}, {b, a},     {a, max},  {min, c2}, {c2, a},   {b, cc2},
            {cc2, max}, {c2, nb}, {nb, max}, {min, na}, {na, cc2}, {na, nb}};
}

}  // namespace fixtures

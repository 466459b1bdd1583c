#pragma once

// The lattice of state-spaces with its projection family.
//
// A structure is a finite set of pairwise disjoint state-spaces ordered by
// expressiveness, with a surjective projection from each space onto every less
// expressive one. Conventions used throughout:
//
//   - The order is stored with "less expressive" as the poset's <=, so the
//     distinguished empty space is the bottom element and the most expressive
//     space is the top. Input order pairs are written the other way around,
//     [more-expressive, less-expressive], matching how projections point.
//   - The empty space (no states) always exists; it is adjoined automatically
//     when the input omits it. No projection maps INTO it are stored, since a
//     function from a non-empty set into the empty set cannot exist; its role
//     is captured by the conventions around full and empty upper sets.
//   - validate_structure is the only path from raw input to a Structure;
//     violations are data, not exceptions.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evlat/poset.hpp"

namespace evlat {

inline const Id kDefaultEmptySpaceId = "S∅";

struct StateSpace {
    Id id;
    std::set<Id> states;
};

// Raw, unvalidated description of a structure (what files and generators produce).
struct SpaceDef {
    Id id;
    std::vector<Id> states;

    friend bool operator==(const SpaceDef&, const SpaceDef&) = default;
};

struct ProjectionDef {
    Id from;                 // more expressive
    Id to;                   // less expressive
    std::map<Id, Id> map;    // state of `from` -> state of `to`

    friend bool operator==(const ProjectionDef&, const ProjectionDef&) = default;
};

struct StructureInput {
    std::vector<SpaceDef> spaces;
    std::vector<IdPair> order;  // [more-expressive, less-expressive] generating pairs
    std::vector<ProjectionDef> projections;

    friend bool operator==(const StructureInput&, const StructureInput&) = default;
};

// Validated structure. `order` is over space ids with bottom = empty space and
// top = the unique most expressive space. `projections` holds a total map for
// every comparable pair (from at least as expressive as to, to != bottom),
// identity pairs included, composites derived.
struct Structure {
    std::map<Id, StateSpace> spaces;
    FinitePoset order;
    Id bottom;
    Id top;
    std::map<IdPair, std::map<Id, Id>> projections;
    std::map<Id, Id> home;   // state id -> owning space id
    std::set<Id> omega;      // disjoint union of all state sets

    const std::set<Id>& states(const Id& space) const {
        auto it = spaces.find(space);
        if (it == spaces.end()) throw std::out_of_range("unknown space " + space);
        return it->second.states;
    }
};

struct Violation {
    std::string axiom;
    std::string detail;
};

struct ValidationReport {
    bool ok = false;
    std::vector<Violation> violations;
    std::optional<Structure> structure;  // present iff ok
};

// Checks every structure axiom on unvalidated input and, when all hold, builds
// the Structure. Each violation names the failed axiom and the witnesses.
inline ValidationReport validate_structure(const StructureInput& in) {
    ValidationReport rep;
    auto fail = [&rep](std::string axiom, std::string detail) {
        rep.violations.push_back({std::move(axiom), std::move(detail)});
    };

    // Space and state identities.
    std::map<Id, std::set<Id>> states_of;
    std::map<Id, Id> home;
    std::vector<Id> empty_spaces;
    for (const SpaceDef& sd : in.spaces) {
        if (states_of.count(sd.id)) {
            fail("duplicate-id", "space id " + sd.id + " appears twice");
            continue;
        }
        std::set<Id>& states = states_of[sd.id];
        for (const Id& st : sd.states) {
            if (home.count(st)) {
                fail("disjointness", "state " + st + " appears in both " + home[st] + " and " + sd.id);
                continue;
            }
            home[st] = sd.id;
            states.insert(st);
        }
        if (states.empty()) empty_spaces.push_back(sd.id);
    }

    Id bottom;
    if (empty_spaces.empty()) {
        if (states_of.count(kDefaultEmptySpaceId)) {
            fail("empty-space", "no empty space given and the default id " + kDefaultEmptySpaceId +
                                    " is taken by a non-empty space");
        } else {
            bottom = kDefaultEmptySpaceId;
            states_of[bottom];  // adjoin with no states
        }
    } else if (empty_spaces.size() == 1) {
        bottom = empty_spaces.front();
    } else {
        fail("empty-space", "more than one space with an empty state set: " + empty_spaces[0] +
                                ", " + empty_spaces[1]);
    }
    if (states_of.size() < 2 && rep.violations.empty())
        fail("empty-space", "structure has no non-empty space");

    if (!rep.violations.empty()) return rep;

    // Order: input pairs are [more, less]; internally less <= more. The bottom
    // sits below everything.
    std::set<Id> ids;
    for (const auto& [id, _] : states_of) ids.insert(id);
    Relation gen;
    for (const auto& [more, less] : in.order) {
        if (!ids.count(more) || !ids.count(less)) {
            fail("unknown-id", "order pair [" + more + ", " + less + "] references an unknown space");
            continue;
        }
        gen.emplace(less, more);
    }
    for (const Id& id : ids) gen.emplace(bottom, id);
    if (!rep.violations.empty()) return rep;

    FinitePreorder pre(ids, gen);
    if (auto bad = pre.antisymmetry_violation()) {
        fail("antisymmetry", "spaces " + bad->first + " and " + bad->second +
                                 " are each at least as expressive as the other");
        return rep;
    }
    FinitePoset order(ids, gen);

    std::vector<Id> maximal;
    for (const Id& id : ids)
        if (order.above(id).size() == 1) maximal.push_back(id);
    if (maximal.size() != 1) {
        std::string who;
        for (const Id& m : maximal) who += (who.empty() ? "" : ", ") + m;
        fail("unique-top", "expected exactly one most expressive space, found: " + who);
        return rep;
    }
    Id top = maximal.front();

    if (LatticeCheck lc = is_lattice(order); !lc.ok) {
        fail("lattice", "no meet or join for spaces " + lc.failing->first + " and " +
                            lc.failing->second);
        return rep;
    }

    // Projection family. Start from the supplied maps plus identities, then
    // derive composites until every comparable pair is covered.
    std::map<IdPair, std::map<Id, Id>> proj;
    for (const Id& id : ids) {
        if (id == bottom) continue;
        std::map<Id, Id> identity;
        for (const Id& st : states_of[id]) identity[st] = st;
        proj[{id, id}] = std::move(identity);
    }
    for (const ProjectionDef& pd : in.projections) {
        if (!ids.count(pd.from) || !ids.count(pd.to)) {
            fail("unknown-id", "projection " + pd.from + " -> " + pd.to + " references an unknown space");
            continue;
        }
        if (pd.to == bottom) {
            fail("projection-into-empty", "projection " + pd.from + " -> " + pd.to +
                                              " targets the empty space");
            continue;
        }
        if (!order.leq(pd.to, pd.from)) {
            fail("projection-domain", pd.from + " is not at least as expressive as " + pd.to);
            continue;
        }
        const std::set<Id>& dom = states_of[pd.from];
        const std::set<Id>& cod = states_of[pd.to];
        bool shape_ok = true;
        for (const auto& [s, t] : pd.map) {
            if (!dom.count(s)) {
                fail("projection-domain", pd.from + " -> " + pd.to + ": " + s +
                                              " is not a state of " + pd.from);
                shape_ok = false;
            }
            if (!cod.count(t)) {
                fail("projection-domain", pd.from + " -> " + pd.to + ": image " + t +
                                              " is not a state of " + pd.to);
                shape_ok = false;
            }
        }
        for (const Id& s : dom)
            if (!pd.map.count(s)) {
                fail("projection-domain", pd.from + " -> " + pd.to + ": no image for state " + s);
                shape_ok = false;
            }
        if (!shape_ok) continue;
        if (pd.from == pd.to) {
            for (const auto& [s, t] : pd.map)
                if (s != t) {
                    fail("identity-projection", pd.from + ": identity pair maps " + s + " to " + t);
                    break;
                }
            continue;  // identity already installed
        }
        if (auto it = proj.find({pd.from, pd.to}); it != proj.end() && it->second != pd.map) {
            fail("duplicate-id", "projection " + pd.from + " -> " + pd.to + " given twice with different maps");
            continue;
        }
        proj[{pd.from, pd.to}] = pd.map;
    }
    if (!rep.violations.empty()) return rep;

    // Comparable pairs that still need a map, repeatedly composable through any
    // known intermediate hop.
    std::vector<IdPair> needed;
    for (const Id& to : ids) {
        if (to == bottom) continue;
        for (const Id& from : order.above(to))
            if (!proj.count({from, to})) needed.push_back({from, to});
    }
    bool progress = true;
    while (progress && !needed.empty()) {
        progress = false;
        std::vector<IdPair> still;
        for (const IdPair& pair : needed) {
            const auto& [from, to] = pair;
            bool made = false;
            for (const Id& mid : order.above(to)) {
                if (mid == from || mid == to) continue;
                if (!order.leq(mid, from)) continue;
                auto hi = proj.find({from, mid});
                auto lo = proj.find({mid, to});
                if (hi == proj.end() || lo == proj.end()) continue;
                std::map<Id, Id> comp;
                for (const auto& [s, m] : hi->second) comp[s] = lo->second.at(m);
                proj[pair] = std::move(comp);
                made = true;
                break;
            }
            if (!made) still.push_back(pair);
            progress = progress || made;
        }
        needed = std::move(still);
    }
    for (const IdPair& pair : needed)
        fail("missing-projection", "no map for " + pair.first + " -> " + pair.second +
                                       " and none derivable by composition");
    if (!rep.violations.empty()) return rep;

    // Surjectivity of every map.
    for (const auto& [pair, map] : proj) {
        std::set<Id> image;
        for (const auto& [_, t] : map) image.insert(t);
        for (const Id& t : states_of[pair.second])
            if (!image.count(t)) {
                fail("surjectivity", "(" + pair.first + ", " + pair.second + ", " + t +
                                         "): state has no preimage");
                break;
            }
    }

    // Composition coherence over every comparable triple, checked pointwise.
    for (const Id& lo : ids) {
        if (lo == bottom) continue;
        for (const Id& mid : order.above(lo)) {
            if (mid == lo) continue;
            for (const Id& hi : order.above(mid)) {
                if (hi == mid) continue;
                const auto& direct = proj.at({hi, lo});
                const auto& upper = proj.at({hi, mid});
                const auto& lower = proj.at({mid, lo});
                for (const auto& [s, t] : direct)
                    if (lower.at(upper.at(s)) != t) {
                        fail("composition", "(" + hi + " -> " + mid + " -> " + lo + ") at state " +
                                                s + ": composite gives " + lower.at(upper.at(s)) +
                                                ", direct map gives " + t);
                        break;
                    }
            }
        }
    }
    if (!rep.violations.empty()) return rep;

    Structure st;
    for (auto& [id, states] : states_of) st.spaces[id] = StateSpace{id, states};
    st.order = std::move(order);
    st.bottom = bottom;
    st.top = top;
    st.projections = std::move(proj);
    st.home = std::move(home);
    for (const auto& [_, sp] : st.spaces) st.omega.insert(sp.states.begin(), sp.states.end());
    rep.ok = true;
    rep.structure = std::move(st);
    return rep;
}

// The filter of S: every space at least as expressive as S, including S.
inline std::set<Id> filter_of(const Structure& st, const Id& S) {
    if (!st.spaces.count(S)) throw std::invalid_argument("filter_of: unknown space " + S);
    return st.order.above(S);
}

// Image of a state under the projection onto S.
inline Id project(const Structure& st, const Id& state, const Id& S) {
    auto it = st.home.find(state);
    if (it == st.home.end()) throw std::invalid_argument("project: unknown state " + state);
    if (!st.spaces.count(S)) throw std::invalid_argument("project: unknown space " + S);
    if (S == st.bottom) throw std::invalid_argument("project: no projections into the empty space");
    if (!st.order.leq(S, it->second))
        throw std::invalid_argument("project: home space of " + state +
                                    " is not at least as expressive as " + S);
    return st.projections.at({it->second, S}).at(state);
}

// All states of Sprime whose projection lands in E. E must sit inside a single
// space that Sprime is at least as expressive as.
inline std::set<Id> preimage(const Structure& st, const std::set<Id>& E, const Id& Sprime) {
    if (!st.spaces.count(Sprime)) throw std::invalid_argument("preimage: unknown space " + Sprime);
    if (E.empty()) return {};
    auto it = st.home.find(*E.begin());
    if (it == st.home.end()) throw std::invalid_argument("preimage: unknown state " + *E.begin());
    const Id& S = it->second;
    for (const Id& s : E)
        if (st.home.count(s) == 0 || st.home.at(s) != S)
            throw std::invalid_argument("preimage: states are not all from one space");
    if (S == st.bottom) throw std::invalid_argument("preimage: the empty space has no states");
    if (!st.order.leq(S, Sprime))
        throw std::invalid_argument("preimage: " + Sprime + " is not at least as expressive as " + S);
    std::set<Id> out;
    const auto& map = st.projections.at({Sprime, S});
    for (const Id& sp : st.states(Sprime))
        if (E.count(map.at(sp))) out.insert(sp);
    return out;
}

// The upper set of (E, S): the union of the preimages of E across every space
// in the filter of S (E itself included via the identity). The empty defining
// set is only meaningful on the empty space, where its upper set is all of
// Omega by convention; an empty E anywhere else has no upper set.
inline std::set<Id> upper_set(const Structure& st, const std::set<Id>& E, const Id& S) {
    if (!st.spaces.count(S)) throw std::invalid_argument("upper_set: unknown space " + S);
    if (S == st.bottom) {
        if (!E.empty()) throw std::invalid_argument("upper_set: the empty space has no states");
        return st.omega;
    }
    if (E.empty())
        throw std::invalid_argument("upper_set: empty defining set outside the empty space");
    for (const Id& s : E)
        if (!st.home.count(s) || st.home.at(s) != S)
            throw std::invalid_argument("upper_set: " + s + " is not a state of " + S);
    std::set<Id> out;
    for (const Id& Sprime : st.order.above(S)) {
        std::set<Id> pre = preimage(st, E, Sprime);
        out.insert(pre.begin(), pre.end());
    }
    return out;
}

struct CardinalityCheck {
    bool ok = false;
    std::optional<IdPair> failing;  // (more expressive, less expressive) with no size gap
};

// Optional assumption used by the recovery theory: strictly more expressive
// spaces have strictly more states. Not a structure axiom; checked on demand.
inline CardinalityCheck check_strict_cardinality(const Structure& st) {
    for (const Id& lo : st.order.elements())
        for (const Id& hi : st.order.above(lo)) {
            if (hi == lo) continue;
            if (st.states(hi).size() <= st.states(lo).size()) return {false, IdPair{hi, lo}};
        }
    return {true, std::nullopt};
}

// Join in the space order (always defined: the order is a validated lattice).
inline Id space_join(const Structure& st, const Id& a, const Id& b) {
    auto j = join(st.order, a, b);
    if (!j) throw std::logic_error("space_join: validated lattice lost a join");
    return *j;
}

}  // namespace evlat

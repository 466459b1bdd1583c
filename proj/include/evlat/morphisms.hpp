#pragma once

// Structure-preserving maps between the space order, the event order, and the
// reduced family, each packaged as a named check that either holds or carries
// a concrete counterexample.
//
//   - space_event sends a space to the event filled by all of its states;
//     the map reverses the space order inside the event order.
//   - Each space's powerset embeds into the event order, empty set to the
//     empty event.
//   - reduced_representative sends an event to the maximal element of its
//     trace class; the map is monotone from the event order to trace
//     containment and fixes the reduced family when traces are distinct.
//   - On the reduced family the trace map lands in the powerset of the top
//     space's states; it is an order isomorphism exactly when traces are
//     pairwise distinct, which is also exactly when the reduced relation is
//     antisymmetric, which is also exactly when the family has one element
//     per subset. check_equivalences evaluates the three independently so
//     disagreement would be caught, not assumed away.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "evlat/reduction.hpp"

namespace evlat {

// The base-filling event of a space; at the empty space this is the full event.
inline Event space_event(const Structure& st, const Id& S) {
    if (S == st.bottom) return full_event(st);
    return make_event(st, st.states(S), S);
}

inline std::string subset_label(const std::set<Id>& E) {
    if (E.empty()) return "∅";
    std::string out = "{";
    bool first = true;
    for (const Id& s : E) {
        if (!first) out += ",";
        out += s;
        first = false;
    }
    return out + "}";
}

namespace detail {

// All subsets of the given states as a poset under inclusion, elements keyed
// by subset_label.
inline FinitePoset powerset_poset(const std::set<Id>& states) {
    std::vector<Id> v(states.begin(), states.end());
    if (v.size() > 16) throw std::length_error("powerset_poset: too many states");
    std::vector<std::set<Id>> subsets;
    for (std::size_t mask = 0; mask < (std::size_t{1} << v.size()); ++mask) {
        std::set<Id> E;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (mask & (std::size_t{1} << i)) E.insert(v[i]);
        subsets.push_back(std::move(E));
    }
    std::set<Id> elems;
    for (const auto& E : subsets) elems.insert(subset_label(E));
    Relation rel;
    for (const auto& E : subsets)
        for (const auto& F : subsets)
            if (E != F && std::includes(F.begin(), F.end(), E.begin(), E.end()))
                rel.emplace(subset_label(E), subset_label(F));
    return FinitePoset(elems, rel);
}

}  // namespace detail

struct MorphismReport {
    std::string name;
    bool holds = false;
    ElementMap witness;  // the map that was checked, by label
    std::optional<std::string> counterexample;
};

// space_event as a map from the space order into the event order: required to
// be injective and to flip every comparability both ways.
inline MorphismReport check_space_embedding(const Structure& st, const EventLattice& el) {
    MorphismReport rep{"space-order-reversing map", true, {}, std::nullopt};
    for (const Id& S : st.order.elements()) rep.witness[S] = render(st, space_event(st, S));
    for (const Id& x : st.order.elements())
        for (const Id& y : st.order.elements()) {
            bool spaces = st.order.leq(x, y);
            bool events = el.order.leq(rep.witness.at(y), rep.witness.at(x));
            if (spaces != events) {
                rep.holds = false;
                rep.counterexample = x + " <= " + y + " is " + (spaces ? "true" : "false") +
                                     " but " + rep.witness.at(y) + " <= " + rep.witness.at(x) +
                                     " is " + (events ? "true" : "false");
                return rep;
            }
            if (x != y && rep.witness.at(x) == rep.witness.at(y)) {
                rep.holds = false;
                rep.counterexample = x + " and " + y + " map to the same event";
                return rep;
            }
        }
    return rep;
}

// The subsets of one space, ordered by inclusion, embedded into the event
// order via make_event.
inline MorphismReport check_powerset_embedding(const Structure& st, const EventLattice& el,
                                               const Id& S) {
    MorphismReport rep{"powerset embedding at " + S, true, {}, std::nullopt};
    FinitePoset ps = detail::powerset_poset(st.states(S));
    std::vector<Id> v(st.states(S).begin(), st.states(S).end());
    for (std::size_t mask = 0; mask < (std::size_t{1} << v.size()); ++mask) {
        std::set<Id> E;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (mask & (std::size_t{1} << i)) E.insert(v[i]);
        rep.witness[subset_label(E)] = render(st, make_event(st, E, S));
    }
    if (!check_order_embedding(rep.witness, ps, el.order)) {
        rep.holds = false;
        rep.counterexample = "inclusion and the event order disagree under the map";
    }
    return rep;
}

// The maximal event of the argument's trace class. Several maxima can exist
// when traces repeat; the one at the lexicographically least base is returned
// so the choice is deterministic.
inline Event reduced_representative(const Structure& st, const ReducedPoset& rp, const Event& ev) {
    std::set<Id> t = trace(st, ev, st.top);
    const Event* best = nullptr;
    for (std::size_t i = 0; i < rp.events.size(); ++i) {
        if (rp.traces[i] != t) continue;
        if (!best || rp.events[i].base < best->base) best = &rp.events[i];
    }
    if (!best) throw std::logic_error("reduced_representative: trace class has no maximum");
    return *best;
}

// Monotonicity of reduction: the event order maps into trace containment.
inline MorphismReport check_reduction_monotone(const Structure& st, const EventLattice& el,
                                               const ReducedPoset& rp) {
    MorphismReport rep{"reduction is monotone", true, {}, std::nullopt};
    for (const Event& e : el.events) rep.witness[render(st, e)] = render(st, reduced_representative(st, rp, e));
    for (std::size_t i = 0; i < el.events.size(); ++i)
        for (std::size_t j = 0; j < el.events.size(); ++j) {
            if (!el.order.leq(el.labels[i], el.labels[j])) continue;
            if (!rp.relation.leq(rep.witness.at(el.labels[i]), rep.witness.at(el.labels[j]))) {
                rep.holds = false;
                rep.counterexample = el.labels[i] + " <= " + el.labels[j] +
                                     " but their representatives are unordered";
                return rep;
            }
        }
    return rep;
}

// The trace map from the reduced family onto the powerset of the top space's
// states, checked as a full order isomorphism (injective, onto, both
// directions order-matching).
inline MorphismReport check_trace_iso(const Structure& st, const ReducedPoset& rp) {
    MorphismReport rep{"trace map is an isomorphism onto the top powerset", true, {}, std::nullopt};
    for (std::size_t i = 0; i < rp.events.size(); ++i)
        rep.witness[rp.labels[i]] = subset_label(rp.traces[i]);
    std::set<std::string> image;
    for (std::size_t i = 0; i < rp.events.size(); ++i) {
        if (!image.insert(subset_label(rp.traces[i])).second) {
            rep.holds = false;
            rep.counterexample = "two reduced events share the trace " + subset_label(rp.traces[i]);
            return rep;
        }
    }
    FinitePoset ps = detail::powerset_poset(st.states(st.top));
    if (!check_order_isomorphism(rep.witness, rp.relation, ps)) {
        rep.holds = false;
        rep.counterexample = "trace containment and subset inclusion disagree";
    }
    return rep;
}

// Three readings of "the reduction lost nothing", computed separately: traces
// pairwise distinct, the reduced relation antisymmetric, and exactly one
// event per subset of the top space. They are provably equivalent, so agree
// should always come back true, with any split reported by the caller.
struct EquivalenceReport {
    bool distinct_traces = false;
    bool antisymmetric = false;
    bool powerset_count = false;
    bool agree = false;
};

inline EquivalenceReport check_equivalences(const Structure& st, const ReducedPoset& rp) {
    EquivalenceReport rep;
    std::set<std::set<Id>> seen(rp.traces.begin(), rp.traces.end());
    rep.distinct_traces = seen.size() == rp.traces.size();
    rep.antisymmetric = !rp.relation.antisymmetry_violation().has_value();
    rep.powerset_count = rp.events.size() == (std::size_t{1} << st.states(st.top).size());
    rep.agree = rep.distinct_traces == rep.antisymmetric && rep.antisymmetric == rep.powerset_count;
    return rep;
}

}  // namespace evlat

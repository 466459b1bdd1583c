#pragma once

// Reduction of the event family by trace equivalence.
//
// The trace of an event at a space is the slice of its upper set there. Trace
// containment at the most expressive space is a preorder on events that is
// coarser than the event order: many events share a trace, and among each
// trace group the reduced family keeps every event that is maximal in the
// event order. Keeping all maximal elements rather than picking one matters
// because a group can hold several incomparable maxima (identical spaces under
// different names produce exactly that), in which case the reduced relation is
// a genuine preorder and distinct_traces reports false.
//
// When traces do come out pairwise distinct, the trace map is injective on the
// reduced family and lands on the whole powerset of the top space's states, so
// the reduced relation is a poset isomorphic to that powerset.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "evlat/event.hpp"

namespace evlat {

inline std::set<Id> trace(const Structure& st, const Event& ev, const Id& S) {
    std::set<Id> out;
    for (const Id& s : st.states(S))
        if (ev.upper.count(s)) out.insert(s);
    return out;
}

// Trace containment at S. At the most expressive space this is the relation
// the reduction quotients by; at coarser spaces it is coarser still.
inline bool cond_leq(const Structure& st, const Event& a, const Event& b, const Id& S) {
    for (const Id& s : st.states(S))
        if (a.upper.count(s) && !b.upper.count(s)) return false;
    return true;
}

inline bool trace_leq(const Structure& st, const Event& a, const Event& b) {
    return cond_leq(st, a, b, st.top);
}

struct ReducedPoset {
    std::vector<Event> events;         // sorted by label
    std::vector<std::string> labels;   // aligned
    std::vector<std::set<Id>> traces;  // traces at the top space, aligned
    FinitePreorder relation;           // trace containment; antisymmetric iff distinct_traces
    bool distinct_traces = false;
};

// Keep, from every trace group, all events maximal in the event order.
inline ReducedPoset build_reduced_poset(const Structure& st, const EventLattice& el) {
    const std::size_t n = el.events.size();
    std::vector<std::set<Id>> traces(n);
    for (std::size_t i = 0; i < n; ++i) traces[i] = trace(st, el.events[i], st.top);

    std::map<std::set<Id>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[traces[i]].push_back(i);

    ReducedPoset out;
    for (std::size_t i = 0; i < n; ++i) {
        bool dominated = false;
        for (std::size_t j : groups.at(traces[i])) {
            if (j == i) continue;
            if (el.order.leq(el.labels[i], el.labels[j])) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            out.events.push_back(el.events[i]);
            out.labels.push_back(el.labels[i]);
            out.traces.push_back(traces[i]);
        }
    }

    std::set<Id> elems(out.labels.begin(), out.labels.end());
    Relation rel;
    for (std::size_t i = 0; i < out.events.size(); ++i)
        for (std::size_t j = 0; j < out.events.size(); ++j) {
            if (i == j) continue;
            if (std::includes(out.traces[j].begin(), out.traces[j].end(), out.traces[i].begin(),
                              out.traces[i].end()))
                rel.emplace(out.labels[i], out.labels[j]);
        }
    out.relation = FinitePreorder(elems, rel);

    out.distinct_traces = true;
    std::set<std::set<Id>> seen;
    for (const auto& t : out.traces)
        if (!seen.insert(t).second) out.distinct_traces = false;
    return out;
}

// Whether every space and every state still shows up in the reduced family.
// Space coverage asks for at least one surviving event with a non-empty
// defining set based there; state coverage asks that each state lie in such a
// defining set at its home space. Neither is guaranteed: a space all of whose
// nontrivial subsets are unions of blocks of coarser spaces contributes
// nothing, so violations are reported rather than assumed away.
struct CoverageReport {
    bool spaces_ok = false;
    std::vector<Id> uncovered_spaces;
    bool states_ok = false;
    std::vector<Id> uncovered_states;
};

inline CoverageReport check_base_coverage(const Structure& st, const ReducedPoset& rp) {
    std::map<Id, std::set<Id>> covered;  // space -> states in some defining set there
    for (const Event& ev : rp.events) {
        if (is_empty_event(ev) || is_full_event(st, ev)) continue;
        std::set<Id> def = defining_set(st, ev);
        covered[ev.base].insert(def.begin(), def.end());
    }
    CoverageReport rep;
    rep.spaces_ok = rep.states_ok = true;
    for (const auto& [sid, sp] : st.spaces) {
        if (sid == st.bottom) continue;
        auto it = covered.find(sid);
        if (it == covered.end()) {
            rep.spaces_ok = false;
            rep.uncovered_spaces.push_back(sid);
        }
        for (const Id& s : sp.states)
            if (it == covered.end() || !it->second.count(s)) {
                rep.states_ok = false;
                rep.uncovered_states.push_back(s);
            }
    }
    return rep;
}

}  // namespace evlat

#pragma once

// Events over a structure and their algebra.
//
// An event is a pair (upper set, base space). The defining set is recovered as
// the slice of the upper set inside the base. Two events are canonical forms
// rather than ordinary pairs:
//
//   - the empty event: empty upper set, based at the most expressive space;
//   - the full event: all of Omega, based at the empty space (whose full
//     state set is vacuously the empty set).
//
// make_event folds any (defining set, space) pair onto these forms, so every
// operation below returns canonical events. Negation complements the defining
// set inside the base; complementing a full defining set lands on the full
// event, which makes the full event its own negation and puts the empty event
// and the base-filling events outside the domain where double negation is the
// identity. Conjunction intersects upper sets and joins bases. Disjunction is
// the dual composite: complement each operand inside its own base, intersect
// those upper sets, and complement the remainder inside the joined base. The
// one-pass formula and the literal complement-intersect-complement composite
// are kept as separate code paths so they can be checked against each other;
// the composite agrees only when its intermediate pairs are left raw, which is
// why RawEvent below skips canonicalization.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "evlat/structure.hpp"

namespace evlat {

struct Event {
    std::set<Id> upper;
    Id base;

    friend auto operator<=>(const Event&, const Event&) = default;
};

inline Event empty_event(const Structure& st) { return Event{{}, st.top}; }

inline Event full_event(const Structure& st) { return Event{st.omega, st.bottom}; }

inline bool is_empty_event(const Event& ev) { return ev.upper.empty(); }

inline bool is_full_event(const Structure& st, const Event& ev) { return ev.base == st.bottom; }

// Canonical constructor: empty defining sets collapse onto the special forms,
// anything else gets its upper set computed.
inline Event make_event(const Structure& st, const std::set<Id>& E, const Id& S) {
    if (!st.spaces.count(S)) throw std::invalid_argument("make_event: unknown space " + S);
    if (S == st.bottom) {
        if (!E.empty()) throw std::invalid_argument("make_event: the empty space has no states");
        return full_event(st);
    }
    if (E.empty()) return empty_event(st);
    return Event{upper_set(st, E, S), S};
}

inline std::set<Id> defining_set(const Structure& st, const Event& ev) {
    std::set<Id> out;
    for (const Id& s : st.states(ev.base))
        if (ev.upper.count(s)) out.insert(s);
    return out;
}

// "{c1,c3}@S_c" for ordinary events, with the two canonical forms rendered as
// the empty-set and Omega symbols. Doubles as the event's identity in ordered
// containers and exported files.
inline std::string render(const Structure& st, const Event& ev) {
    if (is_empty_event(ev)) return "∅@" + ev.base;
    if (is_full_event(st, ev)) return "Ω@" + ev.base;
    std::string out = "{";
    bool first = true;
    for (const Id& s : defining_set(st, ev)) {
        if (!first) out += ",";
        out += s;
        first = false;
    }
    return out + "}@" + ev.base;
}

inline Event negate(const Structure& st, const Event& ev) {
    std::set<Id> comp;
    for (const Id& s : st.states(ev.base))
        if (!ev.upper.count(s)) comp.insert(s);
    if (comp.empty()) return full_event(st);  // covers the full event itself
    return make_event(st, comp, ev.base);
}

// Intersection of upper sets over the join of the bases. The intersection is
// already the upper set of its own slice there, so no recomputation is needed;
// an empty intersection is the empty event regardless of the joined base.
inline Event conjunction(const Structure& st, const std::vector<Event>& ops) {
    if (ops.empty()) throw std::invalid_argument("conjunction: no operands");
    std::set<Id> upper = ops.front().upper;
    Id base = ops.front().base;
    for (std::size_t i = 1; i < ops.size(); ++i) {
        std::set<Id> next;
        std::set_intersection(upper.begin(), upper.end(), ops[i].upper.begin(),
                              ops[i].upper.end(), std::inserter(next, next.begin()));
        upper = std::move(next);
        base = space_join(st, base, ops[i].base);
    }
    if (upper.empty()) return empty_event(st);
    return Event{std::move(upper), base};
}

namespace detail {

// Uncanonicalized (upper set, base) pair used only while evaluating the
// complement-based composite for disjunction. An operand whose defining set
// fills its base has an empty complement; its raw upper set is all of Omega by
// the empty-space convention, not the empty event.
struct RawEvent {
    std::set<Id> upper;
    Id base;
};

inline RawEvent raw_complement(const Structure& st, const Event& ev) {
    std::set<Id> comp;
    for (const Id& s : st.states(ev.base))
        if (!ev.upper.count(s)) comp.insert(s);
    if (comp.empty()) return {st.omega, ev.base};
    return {upper_set(st, comp, ev.base), ev.base};
}

}  // namespace detail

// One-pass disjunction: join the bases, intersect the complements' upper sets,
// and keep the joined space's states that escaped that intersection.
inline Event disjunction(const Structure& st, const std::vector<Event>& ops) {
    if (ops.empty()) throw std::invalid_argument("disjunction: no operands");
    std::set<Id> caught = st.omega;
    Id base = st.bottom;
    for (const Event& op : ops) {
        detail::RawEvent comp = detail::raw_complement(st, op);
        std::set<Id> next;
        std::set_intersection(caught.begin(), caught.end(), comp.upper.begin(),
                              comp.upper.end(), std::inserter(next, next.begin()));
        caught = std::move(next);
        base = space_join(st, base, op.base);
    }
    std::set<Id> D;
    for (const Id& s : st.states(base))
        if (!caught.count(s)) D.insert(s);
    return make_event(st, D, base);
}

// The same operation written literally as negate-conjoin-negate over raw
// pairs. Kept independent of disjunction() above so the two can be compared.
inline Event disjunction_by_complements(const Structure& st, const std::vector<Event>& ops) {
    if (ops.empty()) throw std::invalid_argument("disjunction_by_complements: no operands");
    std::optional<detail::RawEvent> acc;
    for (const Event& op : ops) {
        detail::RawEvent comp = detail::raw_complement(st, op);
        if (!acc) {
            acc = std::move(comp);
            continue;
        }
        std::set<Id> next;
        std::set_intersection(acc->upper.begin(), acc->upper.end(), comp.upper.begin(),
                              comp.upper.end(), std::inserter(next, next.begin()));
        acc->upper = std::move(next);
        acc->base = space_join(st, acc->base, comp.base);
    }
    std::set<Id> D;
    for (const Id& s : st.states(acc->base))
        if (!acc->upper.count(s)) D.insert(s);
    return make_event(st, D, acc->base);
}

// Event order: containment of upper sets with the base moving the other way
// (smaller events sit at more expressive bases). The empty event is the
// bottom, the full event the top.
inline bool event_leq(const Structure& st, const Event& a, const Event& b) {
    if (!st.order.leq(b.base, a.base)) return false;
    return std::includes(b.upper.begin(), b.upper.end(), a.upper.begin(), a.upper.end());
}

// Every event over the structure: each non-empty subset of each non-empty
// space, plus the two canonical forms.
inline std::vector<Event> all_events(const Structure& st) {
    std::vector<Event> out;
    out.push_back(empty_event(st));
    out.push_back(full_event(st));
    for (const auto& [sid, sp] : st.spaces) {
        if (sid == st.bottom) continue;
        std::vector<Id> states(sp.states.begin(), sp.states.end());
        if (states.size() > 20)
            throw std::length_error("all_events: space " + sid + " is too large to enumerate");
        for (std::size_t mask = 1; mask < (std::size_t{1} << states.size()); ++mask) {
            std::set<Id> E;
            for (std::size_t i = 0; i < states.size(); ++i)
                if (mask & (std::size_t{1} << i)) E.insert(states[i]);
            out.push_back(make_event(st, E, sid));
        }
    }
    return out;
}

struct MeetMismatch {
    std::string a, b;
    std::optional<std::string> poset_meet;  // absent if the order had none
    std::string conjunction;
};

struct JoinGap {
    std::string a, b;
    std::optional<std::string> poset_join;
    std::string disjunction;
};

// The full event family as an explicit poset, with the order's meet and join
// tables compared against the algebra. Meets always agree with conjunction;
// joins genuinely differ from disjunction on some pairs, and those pairs are
// recorded rather than treated as errors.
struct EventLattice {
    std::vector<Event> events;        // sorted by label
    std::vector<std::string> labels;  // aligned with events
    std::map<std::string, std::size_t> index;
    FinitePoset order;                // elements are the labels
    bool lattice_ok = false;
    std::optional<IdPair> lattice_failing;
    std::vector<MeetMismatch> meet_mismatches;
    std::vector<JoinGap> join_gaps;
};

inline EventLattice build_event_lattice(const Structure& st) {
    EventLattice out;
    {
        std::vector<Event> evs = all_events(st);
        std::vector<std::pair<std::string, Event>> labeled;
        labeled.reserve(evs.size());
        for (Event& ev : evs) labeled.emplace_back(render(st, ev), std::move(ev));
        std::sort(labeled.begin(), labeled.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [label, ev] : labeled) {
            out.index[label] = out.events.size();
            out.labels.push_back(label);
            out.events.push_back(std::move(ev));
        }
    }

    const std::size_t n = out.events.size();
    std::set<Id> elems(out.labels.begin(), out.labels.end());
    Relation rel;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && event_leq(st, out.events[i], out.events[j]))
                rel.emplace(out.labels[i], out.labels[j]);
    out.order = FinitePoset(elems, rel);

    LatticeCheck lc = is_lattice(out.order);
    out.lattice_ok = lc.ok;
    out.lattice_failing = lc.failing;

    detail::IndexedOrder idx(out.order);
    std::vector<std::uint64_t> scratch(idx.words);
    auto label_at = [&](std::size_t k) { return idx.ids[k]; };
    for (std::size_t i = 0; i < n; ++i) {
        const Event& ei = out.events.at(out.index.at(idx.ids[i]));
        for (std::size_t j = i; j < n; ++j) {
            const Event& ej = out.events.at(out.index.at(idx.ids[j]));
            std::size_t m = idx.meet_of(i, j, scratch);
            std::string want_meet = render(st, conjunction(st, {ei, ej}));
            if (m == detail::IndexedOrder::npos || label_at(m) != want_meet) {
                MeetMismatch mm{idx.ids[i], idx.ids[j], std::nullopt, want_meet};
                if (m != detail::IndexedOrder::npos) mm.poset_meet = label_at(m);
                out.meet_mismatches.push_back(std::move(mm));
            }
            std::size_t jn = idx.join_of(i, j, scratch);
            std::string want_join = render(st, disjunction(st, {ei, ej}));
            if (jn == detail::IndexedOrder::npos || label_at(jn) != want_join) {
                JoinGap jg{idx.ids[i], idx.ids[j], std::nullopt, want_join};
                if (jn != detail::IndexedOrder::npos) jg.poset_join = label_at(jn);
                out.join_gaps.push_back(std::move(jg));
            }
        }
    }
    return out;
}

}  // namespace evlat

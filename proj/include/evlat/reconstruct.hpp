#pragma once
// Recovery of a structure from its reduced event family alone. Reduced events
// keep the original state and space ids, so recovery reassembles spaces,
// order, and projections over the same id universe; success is judged by an
// order isomorphism between the rebuilt event lattice and the source lattice,
// matching events by (trace at the top space, base id).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evlat/event.hpp"
#include "evlat/poset.hpp"
#include "evlat/reduction.hpp"
#include "evlat/structure.hpp"

namespace evlat {

// Space lattice read back from reduced events. `order` is internal (less
// expressive <= more expressive) and only present when recovery is clean.
struct SpaceLattice {
    bool ok = false;
    std::vector<std::string> problems;
    Id bottom;
    Id top;
    std::map<Id, std::set<Id>> states;  // bottom maps to the empty set
    std::optional<FinitePoset> order;
};

// Every map of one candidate solution, keyed (from, to) with from more
// expressive; covering pairs and their composites, identities excluded.
using ProjectionFamily = std::map<IdPair, std::map<Id, Id>>;

struct ProjectionSearch {
    std::vector<ProjectionFamily> families;  // deterministic order
    bool overflow = false;                   // stopped at solution_cap
    std::size_t solution_cap = 16;
    std::size_t nodes = 0;  // assignments tried
    std::string failure;    // tightest violated constraint when no family
};

struct RecoveryResult {
    SpaceLattice lattice;
    ProjectionSearch search;
    std::vector<StructureInput> candidate_inputs;  // aligned with candidates
    std::vector<Structure> candidates;
    std::vector<bool> event_lattice_iso;  // per candidate, against the source
    bool unique = false;                  // exactly one family, cap not hit
    std::vector<std::string> notes;       // families dropped by re-validation
    std::string failure;                  // summary when no candidate exists
};

// Recover the spaces, their states, and the expressiveness order. Each
// non-bottom base id carries an information cone, the union of the upper sets
// of the events based there; cones shrink as expressiveness grows, so states
// are cone differences and the order is read off event reach.
inline SpaceLattice recover_spaces(const ReducedPoset& reduced) {
    SpaceLattice out;
    auto fail = [&](std::string msg) { out.problems.push_back(std::move(msg)); };

    // The two canonical events pin down the endpoint ids: the full event is
    // the unique one whose upper set is everything, the empty event the
    // unique one whose upper set is empty.
    std::set<Id> omega;
    for (const Event& e : reduced.events) omega.insert(e.upper.begin(), e.upper.end());
    std::vector<const Event*> fulls, empties;
    for (const Event& e : reduced.events) {
        if (e.upper.empty()) empties.push_back(&e);
        else if (e.upper == omega) fulls.push_back(&e);
    }
    if (fulls.size() != 1 || empties.size() != 1) {
        fail("canonical events: expected exactly one full and one empty event, got " +
             std::to_string(fulls.size()) + " and " + std::to_string(empties.size()));
        return out;
    }
    out.bottom = fulls.front()->base;
    out.top = empties.front()->base;
    if (out.bottom == out.top) {
        fail("canonical events: full and empty event share the base " + out.bottom);
        return out;
    }

    // Information cones per non-bottom base.
    std::map<Id, std::set<Id>> cone;
    cone[out.top];  // the empty event contributes the id but no states
    for (const Event& e : reduced.events) {
        if (e.upper.empty()) continue;
        if (e.base == out.bottom) continue;  // the full event
        cone[e.base].insert(e.upper.begin(), e.upper.end());
    }
    for (const Event& e : reduced.events)
        if (e.base == out.bottom && !(e.upper == omega))
            fail("a non-full event is based at the recovered bottom " + out.bottom);

    // States are what a cone holds beyond every strictly smaller cone.
    for (const auto& [id, c] : cone) {
        std::set<Id> own = c;
        for (const auto& [oid, oc] : cone) {
            if (oid == id || !(oc != c && std::includes(c.begin(), c.end(), oc.begin(), oc.end())))
                continue;
            for (const Id& s : oc) own.erase(s);
        }
        out.states[id] = std::move(own);
    }
    for (const auto& [a, ca] : cone)
        for (const auto& [b, cb] : cone)
            if (a < b && ca == cb)
                fail("spaces " + a + " and " + b + " carry identical information cones");

    // Disjointness across recovered spaces.
    std::map<Id, Id> home;
    for (const auto& [id, sts] : out.states)
        for (const Id& s : sts) {
            auto [it, fresh] = home.emplace(s, id);
            if (!fresh) fail("state " + s + " recovered into both " + it->second + " and " + id);
        }

    // States seen only through the full event belong to some space that no
    // surviving event is based at. They can be placed only when exactly one
    // recovered space came out empty.
    std::set<Id> leftover;
    for (const Id& s : omega)
        if (!home.count(s)) leftover.insert(s);
    std::vector<Id> hollow;
    for (const auto& [id, sts] : out.states)
        if (sts.empty()) hollow.push_back(id);
    if (!leftover.empty()) {
        if (hollow.size() == 1) {
            out.states[hollow.front()] = leftover;
        } else {
            std::string list;
            for (const Id& s : leftover) list += (list.empty() ? "" : ", ") + s;
            fail("states {" + list + "} belong to no recovered space");
        }
    } else {
        for (const Id& id : hollow) fail("recovered space " + id + " has no states");
    }
    out.states[out.bottom];  // adjoin explicitly, with no states

    // Order: S' is at least as expressive as S exactly when some non-empty
    // event based at S reaches into the states of S'. The bottom sits below
    // everything by convention.
    std::set<Id> ids;
    for (const auto& [id, sts] : out.states) ids.insert(id);
    Relation rel;
    for (const Id& id : ids) {
        rel.emplace(id, id);
        rel.emplace(out.bottom, id);
    }
    for (const Event& e : reduced.events) {
        if (e.upper.empty() || e.base == out.bottom) continue;
        for (const auto& [id, sts] : out.states)
            for (const Id& s : sts)
                if (e.upper.count(s)) {
                    rel.emplace(e.base, id);
                    break;
                }
    }
    rel = transitive_closure(rel, ids);
    FinitePreorder pre(ids, rel);
    if (auto bad = pre.antisymmetry_violation()) {
        fail("recovered order is not antisymmetric: " + bad->first + " vs " + bad->second);
        return out;
    }
    FinitePoset order(ids, rel);
    for (const Id& id : ids)
        if (!order.leq(id, out.top))
            fail("recovered order does not put the empty event's base " + out.top + " on top (" +
                 id + " escapes it)");
    LatticeCheck lc = is_lattice(order);
    if (!lc.ok)
        fail("recovered order is not a lattice: " + lc.failing->first + " and " +
             lc.failing->second + " lack a meet or a join");
    out.order = std::move(order);
    out.ok = out.problems.empty();
    return out;
}

namespace detail {

// Diagnostic label for an event when no validated structure exists yet.
inline std::string recovered_label(const Event& e, const std::set<Id>& base_states) {
    std::string body;
    for (const Id& s : base_states)
        if (e.upper.count(s)) body += (body.empty() ? "" : ",") + s;
    return "{" + body + "}@" + e.base;
}

// Membership signature of a state against the events based at one space:
// which upper sets contain it. Images must reproduce their preimages'
// signatures, which is exactly the per-event membership constraint.
inline std::vector<bool> membership_signature(const std::vector<const Event*>& based,
                                              const Id& state) {
    std::vector<bool> sig(based.size());
    for (std::size_t i = 0; i < based.size(); ++i) sig[i] = based[i]->upper.count(state) > 0;
    return sig;
}

}  // namespace detail

// Search for projection families consistent with the reduced events. One
// variable per (covering pair, source state); candidate images must match
// membership signatures; surjectivity prunes during search; composites are
// derived afterwards and must agree across paths and satisfy membership too.
inline ProjectionSearch recover_projections(const ReducedPoset& reduced,
                                            const SpaceLattice& lat) {
    ProjectionSearch out;
    if (!lat.ok || !lat.order) {
        out.failure = "space recovery failed; no search attempted";
        return out;
    }
    const FinitePoset& order = *lat.order;

    std::map<Id, std::vector<const Event*>> based;
    for (const Event& e : reduced.events)
        if (!e.upper.empty() && e.base != lat.bottom) based[e.base].push_back(&e);

    // Covering pairs with a non-bottom lower end carry the search variables.
    struct EdgeVar {
        Id hi, lo;
        Id state;                    // state of hi awaiting an image in lo
        std::vector<Id> candidates;  // signature-matching states of lo
    };
    std::vector<std::pair<Id, Id>> edges;  // (lo, hi)
    for (const auto& [lo, hi] : hasse_reduction(order))
        if (lo != lat.bottom) edges.emplace_back(lo, hi);

    std::vector<EdgeVar> vars;
    for (const auto& [lo, hi] : edges) {
        const auto& lo_events = based[lo];
        std::map<std::vector<bool>, std::vector<Id>> by_sig;
        for (const Id& s : lat.states.at(lo))
            by_sig[detail::membership_signature(lo_events, s)].push_back(s);
        for (const Id& s : lat.states.at(hi)) {
            EdgeVar v{hi, lo, s, {}};
            auto it = by_sig.find(detail::membership_signature(lo_events, s));
            if (it != by_sig.end()) v.candidates = it->second;
            if (v.candidates.empty()) {
                out.failure = "membership: state " + s + " of " + hi +
                              " admits no image in " + lo +
                              " consistent with the events based at " + lo;
                return out;
            }
            vars.push_back(std::move(v));
        }
    }

    // Most constrained variables first, maps top-down, everything else
    // lexicographic, so the search and its output order are deterministic.
    auto rank = [&](const Id& s) { return order.above(s).size(); };
    std::stable_sort(vars.begin(), vars.end(), [&](const EdgeVar& a, const EdgeVar& b) {
        if (a.candidates.size() != b.candidates.size())
            return a.candidates.size() < b.candidates.size();
        if (a.hi != b.hi) {
            if (rank(a.hi) != rank(b.hi)) return rank(a.hi) < rank(b.hi);
            return a.hi < b.hi;
        }
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.state < b.state;
    });

    // Per-edge bookkeeping for surjectivity pruning.
    std::map<std::pair<Id, Id>, std::size_t> edge_left;  // unassigned variables
    for (const EdgeVar& v : vars) ++edge_left[{v.lo, v.hi}];
    std::map<std::pair<Id, Id>, std::map<Id, std::size_t>> hit;  // image use counts
    for (const auto& [lo, hi] : edges)
        for (const Id& s : lat.states.at(lo)) hit[{lo, hi}][s] = 0;

    std::map<IdPair, std::map<Id, Id>> covering;  // (hi, lo) -> partial map
    std::string deep_failure;
    std::size_t deep_depth = 0;
    auto note_prune = [&](std::size_t depth, std::string msg) {
        if (out.families.empty() && depth >= deep_depth) {
            deep_depth = depth;
            deep_failure = std::move(msg);
        }
    };

    // Once every covering map is fixed, derive the composites over growing
    // intervals, reject path disagreements, and re-check membership across
    // the composite pairs before accepting a family.
    auto finish = [&]() -> std::optional<ProjectionFamily> {
        ProjectionFamily fam;
        for (const auto& [pair, m] : covering) fam[pair] = m;
        std::vector<std::pair<std::size_t, IdPair>> todo;  // (interval size, (hi, lo))
        for (const Id& lo : order.elements()) {
            if (lo == lat.bottom) continue;
            for (const Id& hi : order.above(lo)) {
                if (hi == lo || fam.count({hi, lo})) continue;
                std::size_t between = 0;
                for (const Id& m : order.above(lo))
                    if (order.leq(m, hi)) ++between;
                todo.emplace_back(between, IdPair{hi, lo});
            }
        }
        std::sort(todo.begin(), todo.end());
        for (const auto& [sz, pair] : todo) {
            const auto& [hi, lo] = pair;
            std::optional<std::map<Id, Id>> comp;
            for (const Id& m : order.above(lo)) {
                if (m == lo || m == hi || !order.leq(m, hi)) continue;
                auto upper_leg = fam.find({hi, m});
                auto lower_leg = fam.find({m, lo});
                if (upper_leg == fam.end() || lower_leg == fam.end()) continue;
                std::map<Id, Id> via;
                for (const auto& [s, mid] : upper_leg->second) via[s] = lower_leg->second.at(mid);
                if (!comp) {
                    comp = std::move(via);
                } else if (*comp != via) {
                    note_prune(vars.size(), "composition: paths from " + hi + " to " + lo +
                                                " through " + m + " disagree");
                    return std::nullopt;
                }
            }
            if (!comp) return std::nullopt;  // unreachable on a transitive order
            fam[pair] = std::move(*comp);
        }
        for (const auto& [pair, m] : fam) {
            const auto& [hi, lo] = pair;
            auto evs = based.find(lo);
            if (evs == based.end()) continue;
            for (const Event* e : evs->second)
                for (const auto& [s, img] : m)
                    if ((e->upper.count(s) > 0) != (e->upper.count(img) > 0)) {
                        note_prune(vars.size(),
                                   "membership: event " +
                                       detail::recovered_label(*e, lat.states.at(lo)) +
                                       " separates " + s + " from its image " + img +
                                       " across (" + hi + ", " + lo + ")");
                        return std::nullopt;
                    }
        }
        return fam;
    };

    // Plain backtracking over the variable order fixed above.
    auto search = [&](auto&& self, std::size_t i) -> void {
        if (out.overflow) return;
        if (i == vars.size()) {
            if (auto fam = finish()) {
                if (out.families.size() == out.solution_cap) {
                    out.overflow = true;
                    return;
                }
                out.families.push_back(std::move(*fam));
            }
            return;
        }
        const EdgeVar& v = vars[i];
        auto key = std::make_pair(v.lo, v.hi);
        auto& uses = hit[key];
        std::size_t& left = edge_left[key];
        for (const Id& img : v.candidates) {
            std::size_t misses = 0;
            for (const auto& [s, n] : uses)
                if (n == 0 && s != img) ++misses;
            if (misses > left - 1) {
                note_prune(i, "surjectivity: (" + v.hi + ", " + v.lo +
                                  ") cannot reach every state of " + v.lo);
                continue;
            }
            ++out.nodes;
            covering[{v.hi, v.lo}][v.state] = img;
            ++uses[img];
            --left;
            self(self, i + 1);
            ++left;
            --uses[img];
            covering[{v.hi, v.lo}].erase(v.state);
            if (out.overflow) return;
        }
    };
    search(search, 0);

    if (out.families.empty())
        out.failure = deep_failure.empty() ? "search exhausted without a consistent family"
                                           : deep_failure;
    return out;
}

namespace detail {

// Source and candidate share state and space ids, so events correspond by
// (trace at the top space, base). The pairing must be bijective and an order
// isomorphism between the two event lattices.
inline bool event_lattices_isomorphic(const EventLattice& source, const Structure& cand,
                                      const EventLattice& cand_el) {
    if (source.events.size() != cand_el.events.size()) return false;
    const std::set<Id>& tops = cand.states(cand.top);
    auto key_of = [&](const Event& e) {
        std::set<Id> tr;
        for (const Id& s : tops)
            if (e.upper.count(s)) tr.insert(s);
        return std::make_pair(std::move(tr), e.base);
    };
    std::map<std::pair<std::set<Id>, Id>, std::string> cand_by_key;
    for (std::size_t i = 0; i < cand_el.events.size(); ++i)
        if (!cand_by_key.emplace(key_of(cand_el.events[i]), cand_el.labels[i]).second)
            return false;
    ElementMap f;
    for (std::size_t i = 0; i < source.events.size(); ++i) {
        auto it = cand_by_key.find(key_of(source.events[i]));
        if (it == cand_by_key.end()) return false;
        f[source.labels[i]] = it->second;
    }
    return check_order_isomorphism(f, source.order, cand_el.order);
}

}  // namespace detail

// Full round trip: recover spaces and projections, rebuild each candidate's
// event lattice, and compare it with the source lattice.
inline RecoveryResult reconstruct_full(const EventLattice& structure_source,
                                       const ReducedPoset& reduced) {
    RecoveryResult out;
    out.lattice = recover_spaces(reduced);
    if (!out.lattice.ok) {
        std::string all;
        for (const std::string& p : out.lattice.problems) all += (all.empty() ? "" : "; ") + p;
        out.failure = all;
        return out;
    }
    out.search = recover_projections(reduced, out.lattice);
    for (const ProjectionFamily& fam : out.search.families) {
        StructureInput in;
        for (const auto& [id, sts] : out.lattice.states)
            in.spaces.push_back(SpaceDef{id, std::vector<Id>(sts.begin(), sts.end())});
        for (const auto& [lo, hi] : hasse_reduction(*out.lattice.order))
            if (lo != out.lattice.bottom) in.order.push_back({hi, lo});
        for (const auto& [pair, m] : fam)
            in.projections.push_back(ProjectionDef{pair.first, pair.second, m});
        ValidationReport rep = validate_structure(in);
        if (!rep.ok) {
            std::string why = rep.violations.empty() ? "unknown" : rep.violations.front().detail;
            out.notes.push_back("candidate family dropped by re-validation: " + why);
            continue;
        }
        EventLattice el = build_event_lattice(*rep.structure);
        out.event_lattice_iso.push_back(
            detail::event_lattices_isomorphic(structure_source, *rep.structure, el));
        out.candidate_inputs.push_back(std::move(in));
        out.candidates.push_back(std::move(*rep.structure));
    }
    out.unique = out.candidates.size() == 1 && !out.search.overflow;
    if (out.candidates.empty())
        out.failure = out.search.failure.empty() ? "no candidate survived re-validation"
                                                 : out.search.failure;
    return out;
}

}  // namespace evlat

#include "evlat/event.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace evlat;

namespace {

Event ev(const Structure& st, std::set<Id> E, const Id& S) { return make_event(st, E, S); }

// Shorthand for the diamond events used in many tests.
struct Diamond {
    Structure st = fixtures::diamond();
    Event A = ev(st, {"a"}, "S_a");
    Event NA = ev(st, {"¬a"}, "S_a");
    Event AA = ev(st, {"a", "¬a"}, "S_a");
    Event B = ev(st, {"b"}, "S_b");
    Event NB = ev(st, {"¬b"}, "S_b");
    Event BB = ev(st, {"b", "¬b"}, "S_b");
    Event C1 = ev(st, {"c1"}, "S_c");
    Event CC1 = ev(st, {"c1", "c2"}, "S_c");
    Event CCC = ev(st, {"c1", "c2", "c3"}, "S_c");
    Event Empty = empty_event(st);
    Event Full = full_event(st);
};

}  // namespace

// ===== make_event and canonical forms =====

TEST(MakeEvent, CanonicalForms) {
    Structure st = fixtures::diamond();
    EXPECT_EQ(make_event(st, {}, "S_c"), empty_event(st));
    EXPECT_EQ(make_event(st, {}, "S_a"), empty_event(st));  // any base collapses
    EXPECT_EQ(make_event(st, {}, st.bottom), full_event(st));
    EXPECT_EQ(empty_event(st).base, "S_c");
    EXPECT_EQ(full_event(st).upper, st.omega);
    EXPECT_THROW(make_event(st, {"a"}, st.bottom), std::invalid_argument);
    EXPECT_THROW(make_event(st, {"a"}, "S_z"), std::invalid_argument);
    EXPECT_THROW(make_event(st, {"a"}, "S_b"), std::invalid_argument);
}

TEST(MakeEvent, FrozenUpperSets) {
    Diamond d;
    EXPECT_EQ(d.A.upper, (std::set<Id>{"a", "c1", "c2"}));
    EXPECT_EQ(d.NA.upper, (std::set<Id>{"¬a", "c3"}));
    EXPECT_EQ(d.B.upper, (std::set<Id>{"b", "c1"}));
    EXPECT_EQ(d.NB.upper, (std::set<Id>{"¬b", "c2", "c3"}));
    EXPECT_EQ(d.AA.upper, (std::set<Id>{"a", "¬a", "c1", "c2", "c3"}));
    EXPECT_EQ(d.BB.upper, (std::set<Id>{"b", "¬b", "c1", "c2", "c3"}));
    EXPECT_EQ(d.C1.upper, (std::set<Id>{"c1"}));
}

TEST(MakeEvent, DefiningSetRoundTrip) {
    Structure st = fixtures::diamond();
    for (const Event& e : all_events(st)) {
        EXPECT_EQ(make_event(st, defining_set(st, e), e.base), e) << render(st, e);
    }
}

TEST(MakeEvent, Render) {
    Diamond d;
    EXPECT_EQ(render(d.st, d.Empty), "∅@S_c");
    EXPECT_EQ(render(d.st, d.Full), "Ω@S∅");
    EXPECT_EQ(render(d.st, d.CC1), "{c1,c2}@S_c");
    EXPECT_EQ(render(d.st, d.A), "{a}@S_a");
    EXPECT_EQ(render(d.st, d.AA), "{a,¬a}@S_a");
}

// ===== all_events =====

TEST(AllEvents, Counts) {
    EXPECT_EQ(all_events(fixtures::diamond()).size(), 15u);       // 3 + 3 + 7 + 2
    EXPECT_EQ(all_events(fixtures::single_space(3)).size(), 9u);  // 2^3 + 1
    EXPECT_EQ(all_events(fixtures::single_space(1)).size(), 3u);
    EXPECT_EQ(all_events(fixtures::three_cover()).size(), 18u);   // 7 + 3*3 + 2
}

TEST(AllEvents, LabelsAreDistinct) {
    Structure st = fixtures::diamond();
    std::set<std::string> labels;
    for (const Event& e : all_events(st)) labels.insert(render(st, e));
    EXPECT_EQ(labels.size(), 15u);
}

// ===== negation =====

TEST(Negate, ExampleRows) {
    Diamond d;
    EXPECT_EQ(negate(d.st, d.A), d.NA);
    EXPECT_EQ(negate(d.st, d.CC1), ev(d.st, {"c3"}, "S_c"));
    EXPECT_EQ(negate(d.st, d.BB), d.Full);    // complement of a base-filling set is empty
    EXPECT_EQ(negate(d.st, d.Empty), d.CCC);  // everything at the most expressive space
    EXPECT_EQ(negate(d.st, d.Full), d.Full);  // fixed point
}

TEST(Negate, DoubleNegationOnProperEvents) {
    Structure st = fixtures::diamond();
    for (const Event& e : all_events(st)) {
        std::size_t def = defining_set(st, e).size();
        std::size_t base = st.states(e.base).size();
        Event nn = negate(st, negate(st, e));
        if (def > 0 && def < base) {
            EXPECT_EQ(nn, e) << render(st, e);
        } else {
            // Base-filling events and the empty event both land on the full
            // event after two negations.
            EXPECT_EQ(nn, full_event(st)) << render(st, e);
        }
    }
}

// ===== conjunction =====

TEST(Conjunction, ExampleRows) {
    Diamond d;
    EXPECT_EQ(conjunction(d.st, {d.A, d.B}), d.C1);
    EXPECT_EQ(conjunction(d.st, {d.A, d.NA}), d.Empty);
    EXPECT_EQ(conjunction(d.st, {d.AA, d.BB}), d.CCC);
    EXPECT_EQ(conjunction(d.st, {d.A, d.NB}), ev(d.st, {"c2"}, "S_c"));
}

TEST(Conjunction, FullIsNeutralEmptyAbsorbs) {
    Diamond d;
    for (const Event& e : all_events(d.st)) {
        EXPECT_EQ(conjunction(d.st, {e, d.Full}), e);
        EXPECT_EQ(conjunction(d.st, {e, d.Empty}), d.Empty);
        EXPECT_EQ(conjunction(d.st, {e, e}), e);
    }
    EXPECT_THROW(conjunction(d.st, {}), std::invalid_argument);
}

TEST(Conjunction, CommutesAndAssociates) {
    Structure st = fixtures::diamond();
    std::vector<Event> evs = all_events(st);
    for (const Event& x : evs)
        for (const Event& y : evs) {
            EXPECT_EQ(conjunction(st, {x, y}), conjunction(st, {y, x}));
            for (const Event& z : {evs[0], evs[7], evs[14]})
                EXPECT_EQ(conjunction(st, {conjunction(st, {x, y}), z}),
                          conjunction(st, {x, conjunction(st, {y, z})}));
        }
}

TEST(Conjunction, ResultsAreCanonical) {
    // The intersection of upper sets is already the upper set of its own
    // defining slice, so rebuilding the result from that slice changes nothing.
    for (const Structure& st : {fixtures::diamond(), fixtures::three_cover()}) {
        std::vector<Event> evs = all_events(st);
        for (const Event& x : evs)
            for (const Event& y : evs) {
                Event c = conjunction(st, {x, y});
                EXPECT_EQ(c, make_event(st, defining_set(st, c), c.base));
            }
    }
}

// ===== disjunction =====

TEST(Disjunction, ExampleRows) {
    Diamond d;
    EXPECT_EQ(disjunction(d.st, {d.A, d.B}), d.CC1);
    // An event and its negation join to the base-filling event at their own
    // base, not to the full event.
    EXPECT_EQ(disjunction(d.st, {d.A, d.NA}), d.AA);
    EXPECT_EQ(disjunction(d.st, {d.B, d.NB}), d.BB);
    EXPECT_EQ(disjunction(d.st, {d.C1, ev(d.st, {"c3"}, "S_c")}), ev(d.st, {"c1", "c3"}, "S_c"));
}

TEST(Disjunction, SpecialOperandQuirks) {
    Diamond d;
    EXPECT_EQ(disjunction(d.st, {d.Empty, d.Empty}), d.Empty);
    EXPECT_EQ(disjunction(d.st, {d.Full, d.Full}), d.Full);
    // A full operand's complement contributes all of Omega, which erases the
    // operand from the composite: full-or-empty comes out empty. Both code
    // paths agree on this, so it is pinned rather than patched over.
    EXPECT_EQ(disjunction(d.st, {d.Full, d.Empty}), d.Empty);
    EXPECT_EQ(disjunction_by_complements(d.st, {d.Full, d.Empty}), d.Empty);
    EXPECT_THROW(disjunction(d.st, {}), std::invalid_argument);
}

TEST(Disjunction, MatchesComplementCompositeOnAllPairsAndTriples) {
    Structure st = fixtures::diamond();
    std::vector<Event> evs = all_events(st);
    for (const Event& x : evs)
        for (const Event& y : evs) {
            EXPECT_EQ(disjunction(st, {x, y}), disjunction_by_complements(st, {x, y}))
                << render(st, x) << " | " << render(st, y);
            for (const Event& z : evs)
                EXPECT_EQ(disjunction(st, {x, y, z}), disjunction_by_complements(st, {x, y, z}));
        }
}

TEST(Disjunction, CanonicalCompositionIsNotTheSameOperation) {
    // Chaining the public negate and conjunction canonicalizes the
    // intermediate pairs and lands elsewhere. Two pinned witnesses.
    Diamond d;
    Event via_canonical =
        negate(d.st, conjunction(d.st, {negate(d.st, d.B), negate(d.st, d.AA)}));
    EXPECT_EQ(disjunction(d.st, {d.B, d.AA}), ev(d.st, {"c1"}, "S_c"));
    EXPECT_EQ(via_canonical, d.B);

    Event via_canonical2 =
        negate(d.st, conjunction(d.st, {negate(d.st, d.A), negate(d.st, d.NA)}));
    EXPECT_EQ(disjunction(d.st, {d.A, d.NA}), d.AA);
    EXPECT_EQ(via_canonical2, d.CCC);
}

TEST(Disjunction, CommutesAndIdempotent) {
    Structure st = fixtures::diamond();
    std::vector<Event> evs = all_events(st);
    for (const Event& x : evs) {
        for (const Event& y : evs)
            EXPECT_EQ(disjunction(st, {x, y}), disjunction(st, {y, x}));
        std::size_t def = defining_set(st, x).size();
        if (def > 0 && def < st.states(x.base).size()) {
            EXPECT_EQ(disjunction(st, {x, x}), x) << render(st, x);
        }
    }
}

// ===== the event order =====

TEST(EventOrder, BottomAndTop) {
    Structure st = fixtures::diamond();
    for (const Event& e : all_events(st)) {
        EXPECT_TRUE(event_leq(st, empty_event(st), e));
        EXPECT_TRUE(event_leq(st, e, full_event(st)));
        EXPECT_TRUE(event_leq(st, e, e));
    }
}

TEST(EventOrder, ExampleRows) {
    Diamond d;
    EXPECT_TRUE(event_leq(d.st, d.C1, d.B));
    EXPECT_TRUE(event_leq(d.st, d.C1, d.A));
    EXPECT_TRUE(event_leq(d.st, d.CC1, d.A));
    EXPECT_FALSE(event_leq(d.st, d.A, d.CC1));  // base moves the wrong way
    EXPECT_FALSE(event_leq(d.st, d.B, d.A));    // b is not in the upper set of a
    EXPECT_TRUE(event_leq(d.st, d.CCC, d.BB));
    EXPECT_FALSE(event_leq(d.st, d.A, d.NA));
}

// ===== the assembled event lattice =====

TEST(EventLatticeBuild, DiamondOrderMatchesFrozenEdges) {
    Structure st = fixtures::diamond();
    EventLattice el = build_event_lattice(st);
    ASSERT_EQ(el.events.size(), 15u);

    std::set<Id> labels(el.labels.begin(), el.labels.end());
    Relation gen;
    for (const auto& [lo, hi] : fixtures::diamond_event_edges()) {
        ASSERT_TRUE(labels.count(lo)) << lo;
        ASSERT_TRUE(labels.count(hi)) << hi;
        gen.emplace(lo, hi);
    }
    FinitePoset expected(labels, gen);
    EXPECT_EQ(el.order.relation(), expected.relation());
}

TEST(EventLatticeBuild, AlwaysALatticeWithConjunctionMeets) {
    for (const Structure& st : {fixtures::diamond(), fixtures::three_cover(),
                                fixtures::single_space(3), fixtures::chain()}) {
        EventLattice el = build_event_lattice(st);
        EXPECT_TRUE(el.lattice_ok);
        EXPECT_TRUE(el.meet_mismatches.empty());
        // Cross-check the order's lattice property with the naive oracle.
        EXPECT_TRUE(oracle::lattice(el.order.relation(), el.order.elements()));
    }
}

TEST(EventLatticeBuild, JoinGapWitnessOnDiamond) {
    Structure st = fixtures::diamond();
    EventLattice el = build_event_lattice(st);
    bool found = false;
    for (const JoinGap& g : el.join_gaps) {
        bool pair_ab = (g.a == "{a}@S_a" && g.b == "{b}@S_b") ||
                       (g.a == "{b}@S_b" && g.b == "{a}@S_a");
        if (!pair_ab) continue;
        found = true;
        ASSERT_TRUE(g.poset_join.has_value());
        EXPECT_EQ(*g.poset_join, "Ω@S∅");
        EXPECT_EQ(g.disjunction, "{c1,c2}@S_c");
    }
    EXPECT_TRUE(found) << "the order's join of {a}@S_a and {b}@S_b is not their disjunction";
}

TEST(EventLatticeBuild, GapsAreExactlyTheDisagreeingPairs) {
    Structure st = fixtures::single_space(3);
    EventLattice el = build_event_lattice(st);
    std::set<std::pair<std::string, std::string>> gaps;
    for (const JoinGap& g : el.join_gaps) gaps.insert({std::min(g.a, g.b), std::max(g.a, g.b)});

    std::set<std::pair<std::string, std::string>> expect;
    for (const Event& x : el.events)
        for (const Event& y : el.events) {
            std::string lx = render(st, x), ly = render(st, y);
            if (lx > ly) continue;
            auto pj = join(el.order, lx, ly);
            ASSERT_TRUE(pj.has_value());
            if (*pj != render(st, disjunction(st, {x, y}))) expect.insert({lx, ly});
        }
    EXPECT_EQ(gaps, expect);
}

TEST(EventLatticeBuild, ConjunctionStaysInsideTheFamily) {
    Structure st = fixtures::three_cover();
    EventLattice el = build_event_lattice(st);
    for (const Event& x : el.events)
        for (const Event& y : el.events) {
            EXPECT_TRUE(el.index.count(render(st, conjunction(st, {x, y}))));
            EXPECT_TRUE(el.index.count(render(st, disjunction(st, {x, y}))));
        }
}

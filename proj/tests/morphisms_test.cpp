#include "evlat/morphisms.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace evlat;

namespace {

struct Built {
    Structure st;
    EventLattice el;
    ReducedPoset rp;
};

Built build(const Structure& st) {
    EventLattice el = build_event_lattice(st);
    ReducedPoset rp = build_reduced_poset(st, el);
    return {st, std::move(el), std::move(rp)};
}

}  // namespace

// ===== space_event =====

TEST(SpaceEvent, FrozenValues) {
    Structure st = fixtures::diamond();
    EXPECT_EQ(space_event(st, "S_b").upper, (std::set<Id>{"b", "¬b", "c1", "c2", "c3"}));
    EXPECT_EQ(space_event(st, "S_b").base, "S_b");
    EXPECT_EQ(space_event(st, st.bottom), full_event(st));
    EXPECT_EQ(space_event(st, "S_c"), make_event(st, {"c1", "c2", "c3"}, "S_c"));
}

TEST(SpaceEvent, EmbeddingHoldsEverywhere) {
    for (const Structure& st : {fixtures::diamond(), fixtures::chain(), fixtures::three_cover(),
                                fixtures::single_space(3), fixtures::duplicate_pair()}) {
        Built b = build(st);
        MorphismReport rep = check_space_embedding(b.st, b.el);
        EXPECT_TRUE(rep.holds) << rep.counterexample.value_or("");
        EXPECT_EQ(rep.witness.size(), st.spaces.size());
    }
}

TEST(SpaceEvent, ReversesTheExampleComparability) {
    Built b = build(fixtures::diamond());
    // S_a below S_c as spaces, so their filled events compare the other way.
    EXPECT_TRUE(b.st.order.leq("S_a", "S_c"));
    EXPECT_TRUE(b.el.order.leq("{c1,c2,c3}@S_c", "{a,¬a}@S_a"));
    EXPECT_FALSE(b.el.order.leq("{a,¬a}@S_a", "{c1,c2,c3}@S_c"));
}

// ===== powerset embeddings =====

TEST(PowersetEmbedding, HoldsPerSpace) {
    Built b = build(fixtures::diamond());
    for (const Id& S : std::vector<Id>{"S_a", "S_b", "S_c"}) {
        MorphismReport rep = check_powerset_embedding(b.st, b.el, S);
        EXPECT_TRUE(rep.holds) << S << ": " << rep.counterexample.value_or("");
        EXPECT_EQ(rep.witness.size(), std::size_t{1} << b.st.states(S).size());
    }
}

TEST(PowersetEmbedding, MapsEmptySetToEmptyEvent) {
    Built b = build(fixtures::diamond());
    MorphismReport rep = check_powerset_embedding(b.st, b.el, "S_a");
    EXPECT_EQ(rep.witness.at("∅"), "∅@S_c");
    EXPECT_EQ(rep.witness.at("{a}"), "{a}@S_a");
    EXPECT_EQ(rep.witness.at("{a,¬a}"), "{a,¬a}@S_a");
}

// ===== reduced representatives =====

TEST(Representative, FrozenRows) {
    Built b = build(fixtures::diamond());
    auto rep = [&](std::set<Id> E, const Id& S) {
        return render(b.st, reduced_representative(b.st, b.rp, make_event(b.st, E, S)));
    };
    EXPECT_EQ(rep({"c1"}, "S_c"), "{b}@S_b");
    EXPECT_EQ(rep({"c1", "c2"}, "S_c"), "{a}@S_a");
    EXPECT_EQ(rep({"c3"}, "S_c"), "{¬a}@S_a");
    EXPECT_EQ(rep({"a", "¬a"}, "S_a"), "Ω@S∅");
    EXPECT_EQ(rep({"c2"}, "S_c"), "{c2}@S_c");
    EXPECT_EQ(render(b.st, reduced_representative(b.st, b.rp, empty_event(b.st))), "∅@S_c");
}

TEST(Representative, FixesTheReducedFamily) {
    for (const Structure& st : {fixtures::diamond(), fixtures::chain(), fixtures::three_cover()}) {
        Built b = build(st);
        for (const Event& e : b.rp.events)
            EXPECT_EQ(reduced_representative(b.st, b.rp, e), e) << render(b.st, e);
    }
}

TEST(Representative, IsTraceMaximal) {
    Built b = build(fixtures::diamond());
    for (const Event& e : b.el.events) {
        Event r = reduced_representative(b.st, b.rp, e);
        EXPECT_EQ(trace(b.st, r, b.st.top), trace(b.st, e, b.st.top));
        EXPECT_TRUE(event_leq(b.st, e, r) || e.base == r.base) << render(b.st, e);
        // No reduced event strictly above it shares the trace.
        for (const Event& f : b.rp.events) {
            if (trace(b.st, f, b.st.top) == trace(b.st, e, b.st.top)) {
                EXPECT_FALSE(event_leq(b.st, r, f) && !(f == r));
            }
        }
    }
}

TEST(Representative, MonotoneFromEventOrder) {
    for (const Structure& st : {fixtures::diamond(), fixtures::single_space(3), fixtures::chain(),
                                fixtures::duplicate_pair()}) {
        Built b = build(st);
        MorphismReport rep = check_reduction_monotone(b.st, b.el, b.rp);
        EXPECT_TRUE(rep.holds) << rep.counterexample.value_or("");
    }
}

TEST(Representative, DuplicateTraceTieBreaksOnLeastBase) {
    Built b = build(fixtures::duplicate_pair());
    // Both {a1}@A and {p1}@P survive with trace {c1,c2}; A sorts first.
    Event e = make_event(b.st, {"c1", "c2"}, "C3");
    EXPECT_EQ(render(b.st, reduced_representative(b.st, b.rp, e)), "{a1}@A");
}

// ===== the trace isomorphism and the equivalence bundle =====

TEST(TraceIso, HoldsOnDistinctTraceFixtures) {
    for (const Structure& st : {fixtures::diamond(), fixtures::single_space(3), fixtures::chain(),
                                fixtures::three_cover()}) {
        Built b = build(st);
        MorphismReport rep = check_trace_iso(b.st, b.rp);
        EXPECT_TRUE(rep.holds) << rep.counterexample.value_or("");
    }
}

TEST(TraceIso, DiamondSpotEntries) {
    Built b = build(fixtures::diamond());
    MorphismReport rep = check_trace_iso(b.st, b.rp);
    ASSERT_TRUE(rep.holds);
    EXPECT_EQ(rep.witness.at("{b}@S_b"), "{c1}");
    EXPECT_EQ(rep.witness.at("{¬b}@S_b"), "{c2,c3}");
    EXPECT_EQ(rep.witness.at("Ω@S∅"), "{c1,c2,c3}");
    EXPECT_EQ(rep.witness.at("∅@S_c"), "∅");
}

TEST(TraceIso, FailsExactlyOnDuplicates) {
    Built b = build(fixtures::duplicate_pair());
    MorphismReport rep = check_trace_iso(b.st, b.rp);
    EXPECT_FALSE(rep.holds);
    ASSERT_TRUE(rep.counterexample.has_value());
    EXPECT_NE(rep.counterexample->find("share the trace"), std::string::npos);
}

TEST(Equivalences, AllTrueOnCleanFixtures) {
    for (const Structure& st : {fixtures::diamond(), fixtures::single_space(2), fixtures::chain(),
                                fixtures::three_cover()}) {
        Built b = build(st);
        EquivalenceReport rep = check_equivalences(b.st, b.rp);
        EXPECT_TRUE(rep.distinct_traces);
        EXPECT_TRUE(rep.antisymmetric);
        EXPECT_TRUE(rep.powerset_count);
        EXPECT_TRUE(rep.agree);
    }
}

TEST(Equivalences, AllFalseTogetherOnDuplicates) {
    Built b = build(fixtures::duplicate_pair());
    EquivalenceReport rep = check_equivalences(b.st, b.rp);
    EXPECT_FALSE(rep.distinct_traces);
    EXPECT_FALSE(rep.antisymmetric);
    EXPECT_FALSE(rep.powerset_count);
    EXPECT_TRUE(rep.agree) << "the three readings must fail jointly, not split";
    EXPECT_EQ(b.rp.events.size(), 10u);  // the four twin events inflate the cube
}

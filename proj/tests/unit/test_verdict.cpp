#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "wreathlab/verdict.hpp"

using namespace wreathlab;

namespace {

Action shift_edgeless() { return Action(PeriodicShiftAction({"v"}, {})); }

Action shift_complete() {
    OffsetSet os;
    os.all_nonzero = true;
    return Action(PeriodicShiftAction({"v"}, {{{0, 0}, os}}));
}

Action c2_edge_swap() {
    return Action(FinitePermAction(testutil::k2(), {Permutation{1, 0}}));
}

Action trivial_on_complete(int n) {
    return Action(FinitePermAction(testutil::complete(n), {}));
}

bool has_trace(const FinitenessVerdict& v, const std::string& rule, const std::string& condition,
               const std::string& outcome) {
    for (const TraceEntry& t : v.trace)
        if (t.rule == rule && t.condition == condition && t.outcome == outcome) return true;
    return false;
}

} // namespace

TEST_CASE("module FP status") {
    SECTION("edgeless shift: single orbit, trivial stabilizer") {
        for (int n = 0; n <= 5; ++n) {
            auto s = module_fp_status(shift_edgeless(), 0, n);
            REQUIRE(s.status == Tri::Yes);
        }
    }
    SECTION("complete shift graph: infinitely many edge orbits") {
        auto s = module_fp_status(shift_complete(), 1, 0);
        REQUIRE(s.status == Tri::No);
    }
    SECTION("edge swap: one orbit with finite stabilizer") {
        for (int n = 0; n <= 5; ++n) REQUIRE(module_fp_status(c2_edge_swap(), 1, n).status == Tri::Yes);
    }
    SECTION("catalog rays: stabilizer bound kicks in") {
        Action rays(CatalogRayAction{3});
        REQUIRE(module_fp_status(rays, 0, 2).status == Tri::Yes);
        REQUIRE(module_fp_status(rays, 0, 3).status == Tri::No);
    }
}

TEST_CASE("sufficiency verdicts") {
    SECTION("free abelian base and head over the edgeless shift certify any level") {
        for (int n = 1; n <= 5; ++n) {
            auto v = theorem_a_verdict(GroupSpec::free_abelian(1), GroupSpec::free_abelian(1), shift_edgeless(), n);
            REQUIRE(v.type.certified == n);
            REQUIRE_FALSE(v.type.refuted);
        }
    }
    SECTION("a Houghton base caps certification at its own type") {
        auto v2 = theorem_a_verdict(GroupSpec::houghton(3), GroupSpec::finite_group(), trivial_on_complete(2), 2);
        REQUIRE(v2.type.certified == 2);
        auto v3 = theorem_a_verdict(GroupSpec::houghton(3), GroupSpec::finite_group(), trivial_on_complete(2), 3);
        REQUIRE(v3.type.certified == 0); // no certification from this rule at level 3
        REQUIRE(has_trace(v3, "TheoremA", conditions::kATypeFn, "NO"));
    }
    SECTION("trivial base collapses to the head") {
        auto v = theorem_a_verdict(GroupSpec::trivial(), GroupSpec::houghton(2), trivial_on_complete(2), 4);
        REQUIRE(v.type.certified == 1);
        REQUIRE(v.type.refuted == 2);
    }
}

TEST_CASE("classification of the wreath product of C2 by Z over the complete shift graph") {
    auto v = classify(GroupSpec::finite_group(), GroupSpec::free_abelian(1), shift_complete(), 2);
    REQUIRE(v.type.certified == 1);
    REQUIRE(v.type.refuted == 2);
    REQUIRE(has_trace(v, "FinGen", conditions::kFinGen, "YES"));
    REQUIRE(has_trace(v, "FinPres", conditions::kFinPres, "NO"));
    REQUIRE(has_trace(v, "TheoremD", conditions::kCocompact, "NO"));
}

TEST_CASE("classification with a finite head over a finite complete graph") {
    auto v = classify(GroupSpec::finite_group(), GroupSpec::finite_group(), trivial_on_complete(3), 4);
    REQUIRE(v.type.certified == FinitenessType::kInfinity);
    REQUIRE_FALSE(v.type.refuted);
}

TEST_CASE("Houghton head over the catalog ray action") {
    for (int n = 2; n <= 4; ++n) {
        Action rays(CatalogRayAction{n});
        auto v = classify(GroupSpec::free_abelian(1), GroupSpec::houghton(n), rays, n);
        REQUIRE(v.type.certified == n - 1);
        REQUIRE(v.type.refuted == n);
        REQUIRE(has_trace(v, "TheoremC", conditions::kAbelianizationInfinite, "YES"));
    }
}

TEST_CASE("trivial base yields the head's type") {
    auto v = classify(GroupSpec::trivial(), GroupSpec::houghton(3), shift_edgeless(), 5);
    REQUIRE(v.type.certified == 2);
    REQUIRE(v.type.refuted == 3);
    REQUIRE(has_trace(v, "TrivialBase", conditions::kTrivialBase, "YES"));
}

TEST_CASE("presentation-backed specs") {
    SECTION("a finite presentation intrinsically certifies level 2") {
        GroupSpec a = GroupSpec::presented(Presentation({"a"}, {{1, 1}}));
        REQUIRE(a.type().certified == 2);
        REQUIRE(a.nontrivial() == Tri::Yes);
        REQUIRE(a.abelianization_infinite() == Tri::No);
    }
    SECTION("the classification accepts a presented base") {
        GroupSpec a = GroupSpec::presented(Presentation({"a"}, {{1, 1}}),
                                           FinitenessType{FinitenessType::kInfinity, std::nullopt});
        auto v = classify(a, GroupSpec::free_abelian(1), shift_complete(), 2);
        REQUIRE(v.type.certified == 1);
        REQUIRE(v.type.refuted == 2);
        REQUIRE_FALSE(v.assumptions.empty());
    }
    SECTION("perfect presentations withhold necessity rules") {
        // relators kill the abelianization without proving triviality
        Presentation perfectish({"a"}, {{1}});
        GroupSpec a = GroupSpec::presented(perfectish);
        REQUIRE(a.nontrivial() == Tri::Unknown);
        auto v = classify(a, GroupSpec::free_abelian(1), shift_complete(), 2);
        REQUIRE_FALSE(v.type.refuted); // no refutation without nontriviality
    }
}

TEST_CASE("agreement of the two equivalence rules over the shift backend") {
    // base Z: infinite abelianization, head Z: polycyclic; both rules apply
    std::vector<Action> actions;
    actions.push_back(shift_edgeless());
    actions.push_back(shift_complete());
    {
        OffsetSet os;
        os.offsets = {1, 2};
        actions.push_back(Action(PeriodicShiftAction({"v"}, {{{0, 0}, os}})));
    }
    for (const Action& action : actions) {
        for (int k = 1; k <= 4; ++k) {
            // the polycyclic-head criterion at level k: cocompact (k-1)-skeleton
            bool d_says = cocompact_skeleton(action, k - 1);
            // the infinite-abelianization criterion at level k: module
            // conditions in degrees 0..k-1 (base and head are F_infinity here)
            bool c_says = true;
            for (int p = 0; p <= k - 1; ++p)
                if (module_fp_status(action, p, k - 1 - p).status != Tri::Yes) c_says = false;
            REQUIRE(d_says == c_says);
            // and classify's interval reflects the common answer
            auto v = classify(GroupSpec::free_abelian(1), GroupSpec::free_abelian(1), action, k);
            if (d_says)
                REQUIRE(v.type.certifies(k));
            else
                REQUIRE(v.type.refutes(k));
        }
    }
}

TEST_CASE("interval monotonicity across levels over the catalog grid") {
    std::vector<GroupSpec> As{GroupSpec::trivial(), GroupSpec::finite_group(), GroupSpec::free_abelian(1),
                              GroupSpec::houghton(2), GroupSpec::houghton(3)};
    std::vector<GroupSpec> Hs{GroupSpec::finite_group(), GroupSpec::free_abelian(1), GroupSpec::houghton(2),
                              GroupSpec::houghton(3), GroupSpec::thompson_f()};
    std::vector<Action> actions;
    actions.push_back(shift_edgeless());
    actions.push_back(shift_complete());
    actions.push_back(c2_edge_swap());
    actions.push_back(Action(CatalogRayAction{2}));
    actions.push_back(Action(CatalogRayAction{3}));
    auto pairable = [](const GroupSpec& H, const Action& action) {
        const auto* rays = std::get_if<CatalogRayAction>(&action);
        if (!rays) return true;
        return H.kind() == GroupSpec::Kind::Houghton && H.param() == rays->rays;
    };
    for (const GroupSpec& A : As)
        for (const GroupSpec& H : Hs)
            for (const Action& action : actions) {
                if (!pairable(H, action)) {
                    REQUIRE_THROWS_AS(classify(A, H, action, 1), domain_error);
                    continue;
                }
                std::optional<FinitenessType> prev;
                for (int n = 1; n <= 6; ++n) {
                    auto v = classify(A, H, action, n);
                    if (v.type.refuted) REQUIRE((v.type.certified == 0 || v.type.certified < *v.type.refuted));
                    if (prev) {
                        // widening the horizon never shrinks certainty
                        if (prev->certified == FinitenessType::kInfinity)
                            REQUIRE(v.type.certified == FinitenessType::kInfinity);
                        else
                            REQUIRE(v.type.certified >= prev->certified);
                        if (prev->refuted) {
                            REQUIRE(v.type.refuted);
                            REQUIRE(*v.type.refuted == *prev->refuted);
                        }
                    }
                    prev = v.type;
                }
            }
}

TEST_CASE("trace conditions come from the fixed template set") {
    std::set<std::string> templates{
        conditions::kFinGen,      conditions::kFinPres,  conditions::kHTypeFn,
        conditions::kATypeFn,     conditions::kModule,   conditions::kModuleAllLevels,
        conditions::kAbelianizationInfinite, conditions::kPolycyclicGate,
        conditions::kCocompact,   conditions::kTrivialBase,
        conditions::kOrbitsFinite, conditions::kStabilizerType};
    auto check = [&](const FinitenessVerdict& v) {
        for (const TraceEntry& t : v.trace) REQUIRE(templates.count(t.condition) == 1);
    };
    check(classify(GroupSpec::finite_group(), GroupSpec::free_abelian(1), shift_complete(), 3));
    check(classify(GroupSpec::free_abelian(1), GroupSpec::houghton(3), Action(CatalogRayAction{3}), 4));
    check(classify(GroupSpec::trivial(), GroupSpec::finite_group(), shift_edgeless(), 2));
    check(theorem_a_verdict(GroupSpec::free_abelian(2), GroupSpec::finite_group(), c2_edge_swap(), 3));
}

TEST_CASE("finiteness type invariants") {
    REQUIRE_THROWS_AS((FinitenessType{3, 2}).validate(), domain_error);
    REQUIRE_NOTHROW((FinitenessType{1, 2}).validate());
    REQUIRE_THROWS_AS(GroupSpec::presented(Presentation({"a"}, {}), FinitenessType{1, 2}), domain_error);
}

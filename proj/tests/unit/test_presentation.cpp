#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"
#include "wreathlab/presentation.hpp"

using namespace wreathlab;

namespace {

Presentation free_group(int rank) {
    std::vector<std::string> gens;
    for (int i = 0; i < rank; ++i) gens.push_back("a" + std::to_string(i));
    return Presentation(std::move(gens), {});
}

Presentation cyclic2() { return Presentation({"a"}, {{1, 1}}); }

HomologyGroup power(const HomologyGroup& h, int k) {
    HomologyGroup out;
    for (int i = 0; i < k; ++i) out = out + h;
    return out;
}

} // namespace

TEST_CASE("free reduction") {
    REQUIRE(free_reduce({1, -1}) == Word{});
    REQUIRE(free_reduce({1, 2, -2, -1}) == Word{});
    REQUIRE(free_reduce({1, 2, -2, 1}) == Word{1, 1});
    SECTION("idempotent") {
        std::mt19937 rng(13);
        std::uniform_int_distribution<int> letter(-3, 3);
        for (int trial = 0; trial < 50; ++trial) {
            Word w;
            for (int i = 0; i < 12; ++i) {
                int l = letter(rng);
                if (l != 0) w.push_back(l);
            }
            Word once = free_reduce(w);
            REQUIRE(free_reduce(once) == once);
        }
    }
}

TEST_CASE("presentation construction") {
    REQUIRE_THROWS_AS(Presentation({"a", "a"}, {}), domain_error);
    REQUIRE_THROWS_AS(Presentation({"a"}, {{2}}), domain_error);
    // trivial relators vanish under free reduction
    Presentation p({"a"}, {{1, -1}});
    REQUIRE(p.relators().empty());
}

TEST_CASE("abelianization of basic presentations") {
    REQUIRE(abelianization(cyclic2()) == HomologyGroup{0, {Int(2)}});
    REQUIRE(abelianization(free_group(3)) == HomologyGroup{3, {}});
    Presentation z6({"a"}, {{1, 1, 1, 1, 1, 1}});
    REQUIRE(abelianization(z6) == HomologyGroup{0, {Int(6)}});
}

TEST_CASE("graph product presentations") {
    SECTION("an edge gives the direct product Z x Z") {
        Presentation p = graph_product_presentation(testutil::k2(), free_group(1));
        REQUIRE(p.generators() == std::vector<std::string>{"a0_a", "a0_b"});
        REQUIRE(p.relators().size() == 1);
        REQUIRE(p.relators()[0] == Word{1, 2, -1, -2});
        REQUIRE(abelianization(p) == HomologyGroup{2, {}});
    }
    SECTION("no edge gives the free product") {
        Presentation p = graph_product_presentation(testutil::edgeless(2), free_group(1));
        REQUIRE(p.generators().size() == 2);
        REQUIRE(p.relators().empty());
    }
    SECTION("right-angled Coxeter type presentation over the path") {
        Presentation p = graph_product_presentation(testutil::path3(), cyclic2());
        REQUIRE(p.generators().size() == 3);
        // three involutions plus two commutators
        REQUIRE(p.relators().size() == 5);
        REQUIRE(abelianization(p) == HomologyGroup{0, {Int(2), Int(2), Int(2)}});
    }
    SECTION("abelianization sees one A_ab per vertex, edges invisible") {
        std::mt19937 rng(303);
        for (int trial = 0; trial < 6; ++trial) {
            auto g = testutil::random_graph(5, 0.5, rng);
            Presentation p = graph_product_presentation(g, cyclic2());
            REQUIRE(abelianization(p) == power(abelianization(cyclic2()), g.num_vertices()));
        }
    }
}

TEST_CASE("graph-wreath presentations") {
    SECTION("C2 wreath C2: the edge-inverting action on one edge") {
        FinitePermAction action(testutil::k2(), {Permutation{1, 0}});
        Presentation h_pres({"s"}, {{1, 1}});
        PresentedGroup g = graph_wreath_presentation(Action(action), cyclic2(), h_pres);
        REQUIRE(g.presentation.generators() == std::vector<std::string>{"a_a", "s"});
        REQUIRE(abelianization(g.presentation) == HomologyGroup{0, {Int(2), Int(2)}});
        REQUIRE(g.provenance.construction == "graph_wreath");
        REQUIRE(g.provenance.vertex_orbit_reps == std::vector<std::string>{"a"});
    }
    SECTION("trivial head reduces to the graph product") {
        auto graph = testutil::path3();
        FinitePermAction action(graph, {});
        Presentation trivial_h({}, {});
        PresentedGroup g = graph_wreath_presentation(Action(action), cyclic2(), trivial_h);
        Presentation direct = graph_product_presentation(graph, cyclic2());
        REQUIRE(g.presentation.generators() == direct.generators());
        REQUIRE(g.presentation.relators() == direct.relators());
    }
    SECTION("shift on the edgeless periodic graph: free-by-cyclic, no relators") {
        PeriodicShiftAction action({"v"}, {});
        PresentedGroup g = graph_wreath_presentation(Action(action), free_group(1), Presentation({"t"}, {}));
        REQUIRE(g.presentation.generators().size() == 2);
        REQUIRE(g.presentation.relators().empty());
        REQUIRE(abelianization(g.presentation) == HomologyGroup{2, {}});
    }
    SECTION("shift with finite offsets produces conjugated commutators") {
        OffsetSet os;
        os.offsets = {1};
        PeriodicShiftAction action({"v"}, {{{0, 0}, os}});
        PresentedGroup g = graph_wreath_presentation(Action(action), free_group(1), Presentation({"t"}, {}));
        REQUIRE(g.presentation.generators().size() == 2);
        REQUIRE(g.presentation.relators().size() == 1);
        // [a, t a t^-1]
        REQUIRE(g.presentation.relators()[0] == Word{1, 2, 1, -2, -1, 2, -1, -2});
        REQUIRE(abelianization(g.presentation) == HomologyGroup{2, {}});
    }
    SECTION("ALL_NONZERO pairs refuse a finite presentation") {
        OffsetSet os;
        os.all_nonzero = true;
        PeriodicShiftAction action({"v"}, {{{0, 0}, os}});
        REQUIRE_THROWS_AS(
            graph_wreath_presentation(Action(action), cyclic2(), Presentation({"t"}, {})),
            domain_error);
    }
    SECTION("supplied stabilizer words must fix the representative") {
        FinitePermAction action(testutil::k2(), {Permutation{1, 0}});
        Presentation h_pres({"s"}, {{1, 1}});
        std::map<std::string, std::vector<Word>> bad{{"a", {{1}}}}; // s moves a
        REQUIRE_THROWS_AS(graph_wreath_presentation(Action(action), cyclic2(), h_pres, bad), domain_error);
        std::map<std::string, std::vector<Word>> good{{"a", {{1, 1}}}}; // s^2 fixes a
        PresentedGroup g = graph_wreath_presentation(Action(action), cyclic2(), h_pres, good);
        REQUIRE_FALSE(g.provenance.assumptions.empty());
    }
}

TEST_CASE("coinvariants identity for the wreath abelianization") {
    SECTION("finite backend") {
        // rotation action of C3 on the triangle
        FinitePermAction action(testutil::triangle(), {Permutation{1, 2, 0}});
        Presentation h_pres({"r"}, {{1, 1, 1}});
        PresentedGroup g = graph_wreath_presentation(Action(action), cyclic2(), h_pres);
        HomologyGroup expected = abelianization(cyclic2()); // one vertex orbit
        expected = expected + abelianization(h_pres);
        REQUIRE(abelianization(g.presentation) == expected);
    }
    SECTION("shift backend with two template vertices") {
        OffsetSet uv;
        uv.offsets = {0, 2};
        PeriodicShiftAction action({"u", "v"}, {{{0, 1}, uv}});
        Presentation a_pres({"a"}, {{1, 1, 1, 1}}); // Z/4
        Presentation h_pres({"t"}, {});
        PresentedGroup g = graph_wreath_presentation(Action(action), a_pres, h_pres);
        HomologyGroup expected = power(abelianization(a_pres), 2) + abelianization(h_pres);
        REQUIRE(abelianization(g.presentation) == expected);
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"
#include "wreathlab/polyprod.hpp"

using namespace wreathlab;

namespace {

// number of functions assigning positive-dimension cells of X to `slots`
// vertices with dimensions summing to `total` (independent counting oracle)
long assignment_count(const CellModel& X, int slots, int total) {
    std::vector<long> dp(static_cast<size_t>(total) + 1, 0);
    dp[0] = 1;
    for (int s = 0; s < slots; ++s) {
        std::vector<long> next(static_cast<size_t>(total) + 1, 0);
        for (int acc = 0; acc <= total; ++acc) {
            if (dp[static_cast<size_t>(acc)] == 0) continue;
            for (int d = 1; d <= X.top_dim(); ++d)
                if (acc + d <= total)
                    next[static_cast<size_t>(acc + d)] += dp[static_cast<size_t>(acc)] * X.cells(d);
        }
        dp = std::move(next);
    }
    return dp[static_cast<size_t>(total)];
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

} // namespace

TEST_CASE("polyhedral product over a point recovers the model") {
    FlagComplex point(testutil::edgeless(1), 0);
    SECTION("circle") {
        auto pp = build_polyprod_complex(point, CellModel::circle(), 2);
        REQUIRE(pp.complex.ranks() == std::vector<long>{1, 1, 0});
        REQUIRE(homology_of(pp.complex, 1) == HomologyGroup{1, {}});
    }
    SECTION("projective plane") {
        auto pp = build_polyprod_complex(point, CellModel::projective_plane(), 3);
        REQUIRE(pp.complex.ranks() == std::vector<long>{1, 1, 1, 0});
        REQUIRE(homology_of(pp.complex, 1) == HomologyGroup{0, {Int(2)}});
        REQUIRE(homology_of(pp.complex, 2) == HomologyGroup{0, {}});
    }
}

TEST_CASE("two isolated vertices give the wedge") {
    FlagComplex L(testutil::edgeless(2), 1);
    SECTION("wedge of circles") {
        auto pp = build_polyprod_complex(L, CellModel::circle(), 2);
        HomologyGroup h1 = homology_of(pp.complex, 1);
        // reduced homology doubles: H~_1(S^1) + H~_1(S^1)
        CellModel x = CellModel::circle();
        HomologyGroup hx = homology_of(x.complex(), 1);
        REQUIRE(h1 == hx + hx);
        REQUIRE(homology_of(pp.complex, 0) == HomologyGroup{1, {}});
    }
    SECTION("wedge of projective planes") {
        auto pp = build_polyprod_complex(L, CellModel::projective_plane(), 4);
        CellModel x = CellModel::projective_plane();
        for (int p = 1; p <= 2; ++p) {
            HomologyGroup hx = homology_of(x.complex(), p);
            REQUIRE(homology_of(pp.complex, p) == hx + hx);
        }
    }
}

TEST_CASE("the torus: circle model over an edge") {
    FlagComplex L(testutil::k2(), 1);
    auto pp = build_polyprod_complex(L, CellModel::circle(), 2);
    REQUIRE(pp.complex.ranks() == std::vector<long>{1, 2, 1});
    REQUIRE(homology_of(pp.complex, 0) == HomologyGroup{1, {}});
    REQUIRE(homology_of(pp.complex, 1) == HomologyGroup{2, {}});
    REQUIRE(homology_of(pp.complex, 2) == HomologyGroup{1, {}});
}

TEST_CASE("polyhedral product cell counts match the combinatorial formula") {
    std::mt19937 rng(555);
    std::vector<CellModel> models;
    models.push_back(CellModel::circle());
    models.push_back(CellModel::wedge2());
    models.push_back(CellModel::projective_plane());
    models.push_back(CellModel::torus());
    for (int trial = 0; trial < 6; ++trial) {
        auto g = testutil::random_graph(5, 0.5, rng);
        FlagComplex L(g, 4);
        for (const CellModel& X : models) {
            int cap = default_polyprod_cap(L, X);
            auto pp = build_polyprod_complex(L, X, cap);
            for (int d = 1; d <= cap; ++d) {
                long expected = 0;
                for (int m = 0; m <= L.dim_cap(); ++m)
                    expected += static_cast<long>(L.simplices(m).size()) * assignment_count(X, m + 1, d);
                REQUIRE(pp.complex.rank(d) == expected);
            }
        }
    }
}

TEST_CASE("raag homology equals clique counts") {
    SECTION("path: ranks 1, 3, 2") {
        auto g = testutil::path3();
        REQUIRE(raag_homology(g, 0) == HomologyGroup{1, {}});
        REQUIRE(raag_homology(g, 1) == HomologyGroup{3, {}});
        REQUIRE(raag_homology(g, 2) == HomologyGroup{2, {}});
        REQUIRE(raag_homology(g, 3) == HomologyGroup{0, {}});
    }
    SECTION("edgeless: free group") {
        auto g = testutil::edgeless(4);
        REQUIRE(raag_homology(g, 1) == HomologyGroup{4, {}});
        REQUIRE(raag_homology(g, 2) == HomologyGroup{0, {}});
    }
    SECTION("edge: the torus top class") {
        REQUIRE(raag_homology(testutil::k2(), 2) == HomologyGroup{1, {}});
    }
    SECTION("random graphs: rank equals the p-clique count, no torsion") {
        std::mt19937 rng(808);
        for (int trial = 0; trial < 10; ++trial) {
            auto g = testutil::random_graph(6, 0.5, rng);
            for (int p = 0; p <= 3; ++p) {
                HomologyGroup h = raag_homology(g, p);
                REQUIRE(h.torsion.empty());
                REQUIRE(h.betti == static_cast<long>(enumerate_cliques(g, p).size()));
            }
        }
    }
}

TEST_CASE("full simplex gives binomial Betti numbers") {
    for (int k = 1; k <= 4; ++k) {
        auto g = testutil::complete(k);
        for (int p = 0; p <= k; ++p) {
            HomologyGroup h = raag_homology(g, p);
            REQUIRE(h.betti == binomial(k, p));
            REQUIRE(h.torsion.empty());
        }
    }
}

TEST_CASE("star hypothesis witness") {
    std::mt19937 rng(31337);
    SECTION("circle and wedge models satisfy it over any flag complex") {
        for (int trial = 0; trial < 8; ++trial) {
            auto g = testutil::random_graph(5, 0.5, rng);
            FlagComplex L(g, 4);
            REQUIRE(check_star_hypothesis(L, CellModel::circle(), default_polyprod_cap(L, CellModel::circle())));
            REQUIRE(check_star_hypothesis(L, CellModel::wedge2(), default_polyprod_cap(L, CellModel::wedge2())));
        }
    }
    SECTION("the projective plane fails over a point") {
        FlagComplex point(testutil::edgeless(1), 0);
        REQUIRE_FALSE(check_star_hypothesis(point, CellModel::projective_plane(), 2));
    }
}

TEST_CASE("cells are ordered lexicographically by support then assignment") {
    FlagComplex L(testutil::k2(), 1);
    auto pp = build_polyprod_complex(L, CellModel::wedge2(), 2);
    for (const auto& level : pp.cells)
        for (size_t i = 1; i < level.size(); ++i) REQUIRE(level[i - 1] < level[i]);
}

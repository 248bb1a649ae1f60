#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "mvnerve/generators.hpp"
#include "mvnerve/nerve.hpp"

using namespace mvnerve;

TEST_CASE("index sets of the boundary-sphere cover are all proper subsets") {
    FilteredCover cover = sphere_example(2);
    auto sets = nonempty_index_sets(cover);
    // 4 members; every subset except the full one meets: 2^4 - 2 = 14.
    CHECK(sets.size() == 14);
    // Ordered by cardinality then lexicographic.
    CHECK(sets.front() == std::vector<int>{0});
    CHECK(sets[4] == std::vector<int>{0, 1});
    CHECK(sets.back() == std::vector<int>{1, 2, 3});
    // Capping the cardinality truncates the list.
    auto pairs_only = nonempty_index_sets(cover, 2);
    CHECK(pairs_only.size() == 10);
    CHECK(pairs_only.back().size() == 2);
}

TEST_CASE("pruning skips supersets of empty intersections") {
    FilteredComplex two = FilteredComplex::build({{{0}, 0}, {{5}, 0}, {{9}, 0}});
    FilteredCover disjoint = vertex_induced_cover(two, {{0}, {5}, {9, 0}});
    auto sets = nonempty_index_sets(disjoint);
    // Members 0 and 2 share vertex 0; nothing else overlaps.
    REQUIRE(sets.size() == 4);
    CHECK(sets[3] == std::vector<int>{0, 2});
}

TEST_CASE("nerve of the boundary-sphere cover is the boundary of a simplex") {
    FilteredCover cover = sphere_example(2);
    NerveComplex n = nerve(cover);
    CHECK(n.dim() == 2);
    CHECK(n.complex.size() == 14);
    CHECK_FALSE(n.complex.contains({0, 1, 2, 3}));
    // Every face except the one avoiding member 0 is born at 0; the facet
    // {1,2,3} waits for the last vertex of its intersection.
    CHECK(*n.complex.birth_of({0, 1, 2}) == 0);
    CHECK(*n.complex.birth_of({1, 2, 3}) == 2);
    CHECK(*n.complex.birth_of({0}) == 0);
    // Intersections are recorded for each retained index set.
    CHECK(n.intersections.size() == 14);
    const FilteredComplex& u123 = n.intersections.at({1, 2, 3});
    CHECK(u123.size() == 1);
    CHECK(*u123.birth_of({0}) == 2);

    NerveComplex capped = nerve(cover, 2);
    CHECK(capped.dim() == 1);
    CHECK(capped.complex.size() == 10);
    CHECK(capped.intersections.size() == 10);
}

TEST_CASE("nerve birth is the first slice where the intersection is nonempty") {
    // Member 1 delays everything it shares to slice 3 (legal: member births
    // may exceed ambient births as long as some member attains the minimum).
    FilteredComplex ambient = FilteredComplex::build({{{0, 1}, 0}, {{1, 2}, 3}});
    FilteredComplex m0 = FilteredComplex::build({{{0}, 0}, {{1}, 0}, {{0, 1}, 0}});
    FilteredComplex m1 = FilteredComplex::build({{{1}, 3}, {{2}, 3}, {{1, 2}, 3}});
    FilteredCover cover(ambient, {m0, m1});
    NerveComplex n = nerve(cover);
    CHECK(*n.complex.birth_of({0}) == 0);
    CHECK(*n.complex.birth_of({1}) == 3);
    CHECK(*n.complex.birth_of({0, 1}) == 3);
}

TEST_CASE("acyclicity of the boundary-sphere cover finds the sharp defect") {
    for (int D = 1; D <= 2; ++D) {
        FilteredCover cover = sphere_example(D);
        AcyclicityReport rep = acyclicity(cover);
        CHECK(rep.eps2 == 2);
        CHECK(rep.nerve_dim == D);
        CHECK(rep.ambient_dim == D);
        CHECK(rep.degree_cap() == D);
        CHECK_FALSE(rep.acyclic());
        REQUIRE(rep.worst() != nullptr);
        CHECK(rep.worst()->eps2 == 2);
        for (const auto& ir : rep.intersections) {
            // Tail sets {m,...,D+1} with m >= 2 miss the filler vertex for
            // one grid step; every other intersection is a cone throughout.
            bool tail = ir.index_set.back() == D + 1 && ir.index_set.front() >= 2 &&
                        static_cast<int>(ir.index_set.size()) ==
                            D + 2 - ir.index_set.front();
            CHECK(ir.eps2 == (tail ? 2 : 0));
        }
    }
}

TEST_CASE("acyclicity reports infinite quality with a reason") {
    // One member holds two far-apart vertices: never connected.
    FilteredComplex x = FilteredComplex::build({{{0}, 0}, {{5}, 0}});
    FilteredCover cover = induced_cover(x, {{{0}, {5}}});
    AcyclicityReport rep = acyclicity(cover);
    CHECK(rep.eps2 == kInfCost);
    CHECK_FALSE(rep.acyclic());
    REQUIRE(rep.intersections.size() == 1);
    CHECK(rep.intersections[0].reason == "degree 0 has 2 essential classes");
}

TEST_CASE("good covers from barycentric stars have quality zero") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 3; ++trial) {
        RandomComplexParams par;
        par.vertices = 6;
        par.max_simplices = 40;
        FilteredComplex model = random_complex(rng, par);
        if (model.empty()) continue;
        GoodCoverInstance inst = good_cover_instance(model);
        AcyclicityReport rep = acyclicity(inst.cover);
        CHECK(rep.eps2 == 0);
        CHECK(rep.acyclic());
        // The nerve reproduces the model complex, births included: member i
        // is the star of the i-th model vertex.
        NerveComplex n = nerve(inst.cover);
        REQUIRE(n.complex.size() == inst.model.size());
        auto vs = inst.model.vertex_set();
        for (const auto& c : n.complex.cells()) {
            Simplex model_simplex;
            for (vertex_t idx : c.vertices) model_simplex.push_back(vs[static_cast<size_t>(idx)]);
            auto b = inst.model.birth_of(model_simplex);
            REQUIRE(b.has_value());
            CHECK(*b == c.birth);
        }
    }
}

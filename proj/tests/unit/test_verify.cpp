#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "mvnerve/generators.hpp"
#include "mvnerve/verify.hpp"

using namespace mvnerve;

TEST_CASE("certificate for the boundary-sphere instances") {
    for (int D = 1; D <= 2; ++D) {
        BoundReport rep = certify(sphere_example(D), {});
        CHECK(rep.verdict == "pass");
        CHECK(rep.eps2 == 2);
        CHECK(rep.nerve_dim == D);
        CHECK(rep.ambient_dim == D);
        CHECK(rep.degree_cap == D);
        REQUIRE(rep.degrees.size() == static_cast<size_t>(D + 1));
        CHECK(rep.degrees[0].distance2 == 0);
        // Ambient top class at 2D+2 against nerve top class at 2.
        const DegreeVerdict& top = rep.degrees[static_cast<size_t>(D)];
        CHECK(top.distance2 == 4 * D);
        CHECK(top.main_bound2 == 4 * (D + 1));
        CHECK(top.degree_bound2 == 4 * (D + 1));
        CHECK(top.easy_bound2 == 2 * (4 * D + 2));
        CHECK(top.within);
        CHECK(rep.worst_distance2() == 4 * D);
        CHECK_FALSE(rep.steps.computed);
    }
}

TEST_CASE("stepwise certificate walks the page route for the sphere") {
    CertifyOptions opt;
    opt.with_pages = true;
    BoundReport rep = certify(sphere_example(2), opt);
    REQUIRE(rep.steps.computed);
    CHECK(rep.steps.nerve_vs_page2_2 == 4);
    CHECK(rep.steps.page2_bound2 == 4);
    CHECK(rep.steps.page2_vs_stable2 == 4);
    CHECK(rep.steps.stable_bound2 == 4);  // 2 (D-1) eps2 with D = 2
    REQUIRE(rep.steps.stable_vs_ambient.size() == 3);
    for (const auto& v : rep.steps.stable_vs_ambient) {
        CHECK(v.distance2 == 0);  // the stable bottom row equals the ambient barcode here
        CHECK(v.within);
    }
    CHECK(rep.steps.pass);
    CHECK(rep.verdict == "pass");
}

TEST_CASE("certificate for the suspension instances") {
    for (int D = 1; D <= 2; ++D) {
        BoundReport rep = certify(bipyramid_example(D), {});
        CHECK(rep.verdict == "pass");
        CHECK(rep.eps2 == 2);
        CHECK(rep.nerve_dim == D + 1);  // the nerve is a full simplex
        // The apex vertex spans cells one dimension above the suspension
        // sphere itself, so both dimensions -- and the cap -- are D+1.
        CHECK(rep.ambient_dim == D + 1);
        CHECK(rep.degree_cap == D + 1);
        // Ambient [-2D, 2D+2) against nerve [-2D, 0) in degree D: deleting
        // both bars beats shifting the far endpoints together.
        const DegreeVerdict& top = rep.degrees[static_cast<size_t>(D)];
        CHECK(top.distance2 == 4 * D + 2);
        CHECK(top.main_bound2 == 4 * (D + 2));
        CHECK(top.within);
    }
}

TEST_CASE("zero-defect covers certify with zero distance everywhere") {
    std::mt19937_64 rng(91);
    RandomComplexParams par;
    par.vertices = 6;
    par.max_simplices = 40;
    int done = 0;
    for (int trial = 0; trial < 6 && done < 2; ++trial) {
        FilteredComplex model = random_complex(rng, par);
        if (model.empty()) continue;
        ++done;
        GoodCoverInstance inst = good_cover_instance(model);
        BoundReport rep = certify(inst.cover, {});
        CHECK(rep.verdict == "pass");
        CHECK(rep.eps2 == 0);
        CHECK(rep.worst_distance2() == 0);
        for (const auto& v : rep.degrees) {
            CHECK(v.main_bound2 == 0);
            CHECK(v.within);
        }
    }
    CHECK(done == 2);
}

TEST_CASE("unbounded quality yields a vacuous certificate") {
    // A member with two components that never join.
    FilteredComplex x = FilteredComplex::build({{{0}, 0}, {{5}, 0}});
    FilteredCover cover = induced_cover(x, {{{0}, {5}}});
    BoundReport rep = certify(cover, {});
    CHECK(rep.verdict == "vacuous");
    CHECK(rep.eps2 == kInfCost);
    for (const auto& v : rep.degrees) {
        CHECK(v.main_bound2 == kInfCost);
        CHECK(v.within);
    }
}

TEST_CASE("certification is exact over different fields") {
    for (coeff_t p : {2, 3, 5}) {
        CertifyOptions opt;
        opt.prime = p;
        BoundReport rep = certify(sphere_example(2), opt);
        CHECK(rep.verdict == "pass");
        CHECK(rep.eps2 == 2);
        CHECK(rep.worst_distance2() == 8);
    }
}

TEST_CASE("sharpness equalities for small dimensions") {
    for (int D = 1; D <= 2; ++D) {
        SharpnessReport rep = sharpness_suite(D);
        CHECK(rep.pass);
        CHECK(rep.sphere_nerve_gap2 == 4);
        CHECK(rep.sphere_page_gap2 == 4 * (D - 1));
        CHECK(rep.bipyramid_total_gap2 == 4 * D);
    }
}

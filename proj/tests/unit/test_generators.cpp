#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "mvnerve/generators.hpp"
#include "mvnerve/persistence.hpp"

using namespace mvnerve;

TEST_CASE("boundary-sphere family structure") {
    for (int D = 1; D <= 3; ++D) {
        FilteredCover cover = sphere_example(D);
        const FilteredComplex& x = cover.ambient();
        CHECK(cover.arity() == static_cast<size_t>(D + 2));
        // All proper nonempty subsets of D+2 vertices.
        CHECK(x.size() == (1u << (D + 2)) - 2);
        CHECK(x.dim() == D);
        // Birth = twice the smallest absent vertex.
        CHECK(*x.birth_of({0}) == 2);  // absent: 1, 2, ...; smallest is 1
        Simplex all_but_last;
        for (vertex_t v = 0; v <= D; ++v) all_but_last.push_back(v);
        CHECK(*x.birth_of(all_but_last) == 2 * (D + 1));
        // Member i is the full subcomplex avoiding vertex i.
        for (int i = 0; i <= D + 1; ++i) {
            const FilteredComplex& m = cover.members()[static_cast<size_t>(i)];
            CHECK(m.size() == (1u << (D + 1)) - 1);
            for (const auto& c : m.cells()) {
                CHECK(!std::binary_search(c.vertices.begin(), c.vertices.end(),
                                          static_cast<vertex_t>(i)));
                CHECK(*x.birth_of(c.vertices) == c.birth);
            }
        }
    }
}

TEST_CASE("boundary-sphere barcodes delay the top class") {
    for (int D = 1; D <= 2; ++D) {
        FilteredCover cover = sphere_example(D);
        Barcode bc = barcode(cover.ambient(), D, Field(2));
        bc.normalize();
        CHECK(bc.at(0) == DegreeBarcode{{0, kInfDeath}});
        CHECK(bc.at(static_cast<size_t>(D)) == DegreeBarcode{{2 * D + 2, kInfDeath}});
    }
}

TEST_CASE("suspension family structure") {
    for (int D = 1; D <= 3; ++D) {
        FilteredCover cover = bipyramid_example(D);
        const FilteredComplex& x = cover.ambient();
        CHECK(cover.arity() == static_cast<size_t>(D + 2));
        // The apex vertex cones off cells one above the suspension sphere:
        // {0} + (equator minus one) + one pole has D + 2 vertices.
        CHECK(x.dim() == D + 1);
        // Neither the equator nor a both-poles simplex is ever filled.
        Simplex equator;
        for (vertex_t v = 1; v <= D + 1; ++v) equator.push_back(v);
        CHECK_FALSE(x.contains(equator));
        CHECK_FALSE(x.contains({static_cast<vertex_t>(D + 2), static_cast<vertex_t>(D + 3)}));
        // Births: simplices missing vertex 0 arrive first, at -2D.
        CHECK(*x.birth_of({1}) == -2 * D);
        CHECK(x.min_birth() == -2 * D);
        // Cone simplices with vertex 0 but no first pole arrive at 0.
        CHECK(*x.birth_of({0}) == 0);
        // Simplices needing the first pole wait for the equator gap to fill.
        CHECK(*x.birth_of({0, static_cast<vertex_t>(D + 2)}) == 2);
        Barcode bc = barcode(x, D, Field(2));
        bc.normalize();
        CHECK(bc.at(0) == DegreeBarcode{{-2 * D, kInfDeath}});
        CHECK(bc.at(static_cast<size_t>(D)) == DegreeBarcode{{-2 * D, 2 * D + 2}});
    }
}

TEST_CASE("random complexes are deterministic per seed and respect limits") {
    RandomComplexParams par;
    par.vertices = 9;
    par.max_dim = 2;
    par.max_simplices = 60;
    std::mt19937_64 a(77), b(77), c(78);
    FilteredComplex xa = random_complex(a, par);
    FilteredComplex xb = random_complex(b, par);
    FilteredComplex xc = random_complex(c, par);
    REQUIRE(xa.size() == xb.size());
    for (size_t i = 0; i < xa.size(); ++i) {
        CHECK(xa.cells()[i].vertices == xb.cells()[i].vertices);
        CHECK(xa.cells()[i].birth == xb.cells()[i].birth);
    }
    CHECK(xa.size() <= 60);
    CHECK(xa.dim() <= 2);
    for (vertex_t v : xa.vertex_set()) CHECK(v < 9);
    // A different seed gives a different complex (overwhelmingly likely).
    bool same = xa.size() == xc.size();
    if (same)
        for (size_t i = 0; i < xa.size(); ++i)
            same = same && xa.cells()[i].vertices == xc.cells()[i].vertices &&
                   xa.cells()[i].birth == xc.cells()[i].birth;
    CHECK_FALSE(same);
}

TEST_CASE("random covers are valid and deterministic") {
    std::mt19937_64 rng(79);
    RandomComplexParams par;
    par.vertices = 8;
    for (int trial = 0; trial < 5; ++trial) {
        FilteredComplex x = random_complex(rng, par);
        if (x.empty()) continue;
        std::mt19937_64 c1(900 + trial), c2(900 + trial);
        FilteredCover cov1 = random_cover(c1, x, 3);   // constructor validates
        FilteredCover cov2 = random_cover(c2, x, 3);
        CHECK(cov1.arity() <= 3);
        CHECK(cov1.arity() == cov2.arity());
        for (size_t i = 0; i < cov1.arity(); ++i)
            CHECK(cov1.members()[i].size() == cov2.members()[i].size());
    }
}

TEST_CASE("connected random covers have connected members") {
    std::mt19937_64 rng(80);
    RandomComplexParams par;
    par.vertices = 9;
    int checked = 0;
    for (int trial = 0; trial < 10 && checked < 5; ++trial) {
        FilteredComplex x = random_complex(rng, par);
        if (x.empty()) continue;
        Barcode ambient = barcode(x, 0, Field(2));
        size_t components = 0;
        for (const auto& iv : ambient.at(0))
            if (iv.essential()) ++components;
        if (components != 1) continue;  // only meaningful for connected ambients
        ++checked;
        FilteredCover cover = random_connected_cover(rng, x, 4);
        for (const auto& m : cover.members()) {
            if (m.empty()) continue;
            Barcode mb = barcode(m, 0, Field(2));
            size_t mcomp = 0;
            for (const auto& iv : mb.at(0))
                if (iv.essential()) ++mcomp;
            CHECK(mcomp == 1);
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("barycentric star instances reproduce the model barcode") {
    std::mt19937_64 rng(81);
    RandomComplexParams par;
    par.vertices = 6;
    par.max_simplices = 40;
    for (int trial = 0; trial < 3; ++trial) {
        FilteredComplex model = random_complex(rng, par);
        if (model.empty()) continue;
        GoodCoverInstance inst = good_cover_instance(model);
        Barcode model_bc = barcode(model, model.dim(), Field(2));
        Barcode sd_bc = barcode(inst.cover.ambient(), inst.cover.ambient().dim(), Field(2));
        model_bc.normalize();
        sd_bc.normalize();
        CHECK(model_bc == sd_bc);
    }
}

TEST_CASE("random barcodes are sorted and within range") {
    std::mt19937_64 rng(82);
    for (int trial = 0; trial < 20; ++trial) {
        DegreeBarcode bc = random_barcode(rng, 6, -3, 9);
        CHECK(bc.size() == 6);
        CHECK(std::is_sorted(bc.begin(), bc.end()));
        for (const auto& iv : bc) {
            CHECK(iv.birth >= -3);
            CHECK(iv.birth <= 9);
            if (!iv.essential()) CHECK(iv.death > iv.birth);
        }
    }
}

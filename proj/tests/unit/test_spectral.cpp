#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <random>

#include "mvnerve/generators.hpp"
#include "mvnerve/nerve.hpp"
#include "mvnerve/spectral.hpp"
#include "mvnerve/tower.hpp"
#include "test_util.hpp"

using namespace mvnerve;
using testutil::sorted_bars;
using testutil::zero_tower;

namespace {

// Incoming/outgoing zero morphisms for absent differentials.
TowerMorphism zero_into(const PersistenceTower& cell) {
    PersistenceTower z = zero_tower(cell.j_min, cell.j_max, cell.prime);
    std::vector<Mat> comp(cell.slices());
    for (size_t k = 0; k < comp.size(); ++k) comp[k] = Mat(cell.dims[k], 0);
    return TowerMorphism(z, cell, std::move(comp));
}

TowerMorphism zero_out_of(const PersistenceTower& cell) {
    PersistenceTower z = zero_tower(cell.j_min, cell.j_max, cell.prime);
    std::vector<Mat> comp(cell.slices());
    for (size_t k = 0; k < comp.size(); ++k) comp[k] = Mat(0, cell.dims[k]);
    return TowerMorphism(cell, z, std::move(comp));
}

// E^{r+1} must be the homology of (E^r, d^r) at every position.
void check_page_recurrence(SpectralSequence& ss, int r) {
    SpectralPage cur = ss.page(r);
    SpectralPage next = ss.page(r + 1);
    for (const auto& [key, cell] : cur.cells) {
        auto [p, q] = key;
        std::pair<int, int> in_key{p + r, q - r + 1};
        auto in_it = cur.differentials.find(in_key);
        TowerMorphism incoming =
            in_it != cur.differentials.end() ? in_it->second : zero_into(cell.tower);
        auto out_it = cur.differentials.find(key);
        TowerMorphism outgoing =
            out_it != cur.differentials.end() ? out_it->second : zero_out_of(cell.tower);
        DegreeBarcode expected = sorted_bars(barcode_of_tower(homology_of(incoming, outgoing)));
        INFO("page " << r << " cell (" << p << "," << q << ")");
        CHECK(expected == sorted_bars(next.bars_at(p, q)));
    }
    for (const auto& [key, cell] : next.cells)
        if (!cur.cells.count(key)) CHECK(cell.bars.empty());
}

std::map<std::pair<int, int>, index_t> support_counts(const DoubleComplex& dc, birth_t j) {
    std::map<std::pair<int, int>, index_t> counts;
    for (const auto& c : dc.cells())
        if (c.birth <= j) ++counts[{c.p, c.q}];
    return counts;
}

}  // namespace

TEST_CASE("double complex of the boundary-sphere cover") {
    FilteredCover cover = sphere_example(2);
    DoubleComplex dc = DoubleComplex::build(cover);
    // 4 single members of 7 cells, 6 pair intersections of 3, 4 triples of 1.
    CHECK(dc.size() == 50);
    CHECK(dc.max_p() == 2);
    CHECK(dc.max_q() == 2);
    CHECK(dc.birth_min() == 0);
    CHECK(dc.birth_max() == 6);  // the face missing only the last vertex
    for (const auto& c : dc.cells()) {
        CHECK(c.p >= 0);
        CHECK(c.q >= 0);
        // Birth is the max of the member births: at least the ambient birth.
        CHECK(c.birth >= cover.ambient().cell(c.ambient_cell).birth);
    }
}

TEST_CASE("double complex boundary squares to zero over the integers") {
    std::mt19937_64 rng(61);
    std::vector<DoubleComplex> instances;
    instances.push_back(DoubleComplex::build(sphere_example(2)));
    instances.push_back(DoubleComplex::build(bipyramid_example(1)));
    for (int trial = 0; trial < 3; ++trial) {
        RandomComplexParams par;
        par.vertices = 7;
        par.max_simplices = 80;
        FilteredComplex x = random_complex(rng, par);
        if (x.empty()) continue;
        instances.push_back(DoubleComplex::build(random_cover(rng, x, 3)));
    }
    for (const auto& dc : instances) {
        ChainData cd = dc.to_chain_data();
        REQUIRE_NOTHROW(cd.validate());
        for (size_t c = 0; c < cd.size(); ++c) {
            std::map<index_t, int64_t> twice;
            for (const auto& e1 : cd.boundary[c])
                for (const auto& e2 : cd.boundary[static_cast<size_t>(e1.cell)])
                    twice[e2.cell] += e1.coeff * e2.coeff;
            for (const auto& [cell, coeff] : twice) CHECK(coeff == 0);
        }
    }
}

TEST_CASE("page zero dimensions count the live cells in each bidegree") {
    FilteredCover cover = sphere_example(2);
    SpectralSequence ss(DoubleComplex::build(cover), Field(2));
    SpectralPage e0 = ss.page(0);
    for (birth_t j = ss.j_min(); j <= ss.j_max(); ++j) {
        auto counts = support_counts(ss.dc(), j);
        for (const auto& [key, cell] : e0.cells) {
            index_t expected = counts.count(key) ? counts[key] : 0;
            CHECK(cell.tower.dim_at(j) == expected);
        }
    }
}

TEST_CASE("first page is the direct sum of intersection homologies") {
    std::mt19937_64 rng(62);
    std::vector<FilteredCover> covers;
    covers.push_back(sphere_example(2));
    covers.push_back(bipyramid_example(2));
    for (int trial = 0; trial < 3; ++trial) {
        RandomComplexParams par;
        par.vertices = 8;
        par.max_simplices = 100;
        FilteredComplex x = random_complex(rng, par);
        if (x.empty()) continue;
        covers.push_back(random_cover(rng, x, 3));
    }
    for (const auto& cover : covers) {
        SpectralSequence ss(DoubleComplex::build(cover), Field(2));
        SpectralPage e1 = ss.page(1);
        // Expected: for each index set of size p+1, the degree-q barcode of
        // its intersection, unioned over index sets.
        std::map<std::pair<int, int>, DegreeBarcode> expected;
        for (const auto& I : nonempty_index_sets(cover)) {
            FilteredComplex u = cover.intersection(I);
            Barcode bc = barcode(u, u.dim(), Field(2));
            for (size_t q = 0; q < bc.degrees.size(); ++q)
                for (const auto& iv : bc.degrees[q])
                    expected[{static_cast<int>(I.size()) - 1, static_cast<int>(q)}].push_back(iv);
        }
        for (auto& [key, bars] : expected) {
            INFO("cell (" << key.first << "," << key.second << ")");
            CHECK(sorted_bars(bars) == sorted_bars(e1.bars_at(key.first, key.second)));
        }
        for (const auto& [key, cell] : e1.cells)
            if (!expected.count(key)) CHECK(cell.bars.empty());
    }
}

TEST_CASE("each page is the homology of the previous one") {
    FilteredCover cover = sphere_example(2);
    SpectralSequence ss(DoubleComplex::build(cover), Field(2));
    for (int r = 0; r <= 3; ++r) check_page_recurrence(ss, r);

    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 2; ++trial) {
        RandomComplexParams par;
        par.vertices = 7;
        par.max_simplices = 70;
        FilteredComplex x = random_complex(rng, par);
        if (x.empty()) continue;
        SpectralSequence rs(DoubleComplex::build(random_cover(rng, x, 3)), Field(3));
        for (int r = 0; r <= 1; ++r) check_page_recurrence(rs, r);
    }
}

TEST_CASE("pages stop moving at the stable index") {
    FilteredCover cover = sphere_example(2);
    SpectralSequence ss(DoubleComplex::build(cover), Field(2));
    int s = ss.stable_r();
    SpectralPage stable = ss.page(s);
    SpectralPage later = ss.page(s + 1);
    CHECK(stable.no_nonzero_differential());
    for (const auto& [key, cell] : stable.cells)
        CHECK(sorted_bars(cell.bars) == sorted_bars(later.bars_at(key.first, key.second)));
    for (const auto& [key, cell] : later.cells)
        if (!stable.cells.count(key)) CHECK(cell.bars.empty());
}

TEST_CASE("total complex barcode equals the ambient barcode") {
    for (const auto& cover : {sphere_example(2), bipyramid_example(2)}) {
        DoubleComplex dc = DoubleComplex::build(cover);
        Barcode total = total_barcode(dc, cover.ambient().dim(), Field(2));
        Barcode ambient = barcode(cover.ambient(), cover.ambient().dim(), Field(2));
        total.normalize();
        ambient.normalize();
        CHECK(total == ambient);
    }
}

TEST_CASE("column quotients reproduce the stable page") {
    std::mt19937_64 rng(64);
    std::vector<FilteredCover> covers;
    covers.push_back(sphere_example(2));
    for (int trial = 0; trial < 2; ++trial) {
        RandomComplexParams par;
        par.vertices = 7;
        par.max_simplices = 70;
        FilteredComplex x = random_complex(rng, par);
        if (x.empty()) continue;
        covers.push_back(random_cover(rng, x, 3));
    }
    for (const auto& cover : covers) {
        SpectralSequence ss(DoubleComplex::build(cover), Field(2));
        SpectralPage stable = ss.infinity();
        int n_max = ss.dc().max_p() + ss.dc().max_q();
        for (int n = 0; n <= n_max; ++n) {
            auto quotients = ss.column_quotients(n);
            for (int p = 0; p < static_cast<int>(quotients.size()); ++p) {
                INFO("degree " << n << " column " << p);
                CHECK(sorted_bars(barcode_of_tower(quotients[static_cast<size_t>(p)])) ==
                      sorted_bars(stable.bars_at(p, n - p)));
            }
        }
    }
}

TEST_CASE("rows above the bottom are small when the cover quality is finite") {
    for (const auto& cover : {sphere_example(2), bipyramid_example(1)}) {
        AcyclicityReport quality = acyclicity(cover);
        REQUIRE(quality.eps2 != kInfCost);
        SpectralSequence ss(DoubleComplex::build(cover), Field(2));
        SpectralPage e2 = ss.page(2);
        for (const auto& [key, cell] : e2.cells) {
            if (key.second == 0) continue;
            for (const auto& iv : cell.bars) {
                CHECK_FALSE(iv.essential());
                CHECK(iv.length() <= quality.eps2);
            }
        }
    }
}

TEST_CASE("known second and stable pages of the sharp sphere instance") {
    SpectralSequence ss(DoubleComplex::build(sphere_example(2)), Field(2));
    SpectralPage e2 = ss.page(2);
    CHECK(sorted_bars(e2.bars_at(0, 0)) == DegreeBarcode{{0, kInfDeath}});
    CHECK(sorted_bars(e2.bars_at(2, 0)) == DegreeBarcode{{4, kInfDeath}});
    CHECK(sorted_bars(e2.bars_at(0, 1)) == DegreeBarcode{{4, 6}});
    for (const auto& [key, cell] : e2.cells)
        if (key != std::pair<int, int>{0, 0} && key != std::pair<int, int>{2, 0} &&
            key != std::pair<int, int>{0, 1})
            CHECK(cell.bars.empty());
    SpectralPage inf = ss.infinity();
    CHECK(sorted_bars(inf.bars_at(0, 0)) == DegreeBarcode{{0, kInfDeath}});
    CHECK(sorted_bars(inf.bars_at(2, 0)) == DegreeBarcode{{6, kInfDeath}});
    CHECK(sorted_bars(inf.bars_at(0, 1)).empty());
}

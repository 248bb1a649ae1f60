// Nerve of a filtered cover and the acyclicity defect of its intersections.
//
// The nerve has one vertex per cover member and a simplex for every index
// set with nonempty intersection; the simplex is born at the first slice
// where the intersection becomes nonempty.  The acyclicity scan measures,
// for every such intersection, how far its barcode is from that of a single
// point appearing at some time a — the doubled max over all intersections is
// the cover quality epsilon used by every bound downstream.

#ifndef MVNERVE_NERVE_HPP
#define MVNERVE_NERVE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvnerve/complex.hpp"
#include "mvnerve/matching.hpp"
#include "mvnerve/persistence.hpp"

namespace mvnerve {

// Enumerates all index sets with nonempty intersection, in (cardinality,
// lexicographic) order.  Supersets of an empty intersection are pruned.
// `max_card` caps the cardinality when given.
inline std::vector<std::vector<int>> nonempty_index_sets(const FilteredCover& cover,
                                                         std::optional<int> max_card = std::nullopt) {
    int m = static_cast<int>(cover.arity());
    std::vector<std::vector<int>> frontier, all;
    for (int i = 0; i < m; ++i) {
        if (cover.members()[static_cast<size_t>(i)].empty()) continue;
        frontier.push_back({i});
    }
    while (!frontier.empty()) {
        for (const auto& I : frontier) all.push_back(I);
        if (max_card && static_cast<int>(frontier.front().size()) >= *max_card) break;
        std::vector<std::vector<int>> next;
        for (const auto& I : frontier)
            for (int j = I.back() + 1; j < m; ++j) {
                std::vector<int> J = I;
                J.push_back(j);
                if (!cover.intersection(J).empty()) next.push_back(std::move(J));
            }
        frontier = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return all;
}

struct NerveComplex {
    FilteredComplex complex;  // vertex i = cover member i
    std::map<std::vector<int>, FilteredComplex> intersections;

    int dim() const { return complex.dim(); }
};

// max_card limits the simplex cardinality of the presented nerve; the
// intersections map only carries the retained index sets.
inline NerveComplex nerve(const FilteredCover& cover, std::optional<int> max_card = std::nullopt) {
    NerveComplex out;
    std::vector<std::pair<Simplex, birth_t>> entries;
    for (const auto& I : nonempty_index_sets(cover, max_card)) {
        FilteredComplex u = cover.intersection(I);
        Simplex s(I.begin(), I.end());
        entries.emplace_back(std::move(s), u.min_birth());
        out.intersections.emplace(I, std::move(u));
    }
    if (!entries.empty()) out.complex = FilteredComplex::build(entries);
    return out;
}

struct IntersectionReport {
    std::vector<int> index_set;
    int64_t eps2 = 0;       // doubled distance of the intersection to a point
    birth_t point_birth = 0;  // the optimal appearance time when finite
    std::string reason;       // failure description when eps2 is infinite
};

struct AcyclicityReport {
    std::vector<IntersectionReport> intersections;
    int64_t eps2 = 0;  // doubled cover quality: max over all intersections
    int nerve_dim = -1;
    int ambient_dim = -1;

    int degree_cap() const { return std::min(nerve_dim, ambient_dim); }
    bool acyclic() const { return eps2 == 0; }
    const IntersectionReport* worst() const {
        const IntersectionReport* w = nullptr;
        for (const auto& r : intersections)
            if (!w || r.eps2 > w->eps2) w = &r;
        return w;
    }
};

// Full scan over every nonempty intersection (never capped: the bounds need
// all of them, not just the simplices of a truncated nerve).
inline AcyclicityReport acyclicity(const FilteredCover& cover, const Field& F = Field(2)) {
    AcyclicityReport out;
    out.ambient_dim = cover.ambient().dim();
    for (const auto& I : nonempty_index_sets(cover)) {
        FilteredComplex u = cover.intersection(I);
        out.nerve_dim = std::max(out.nerve_dim, static_cast<int>(I.size()) - 1);
        Barcode bc = barcode(u, u.dim(), F);
        PointDistance pd = point_distance(bc);
        IntersectionReport rep;
        rep.index_set = I;
        rep.eps2 = pd.eps2;
        rep.point_birth = pd.point_birth;
        rep.reason = pd.reason;
        if (rep.eps2 == kInfCost || out.eps2 == kInfCost)
            out.eps2 = kInfCost;
        else
            out.eps2 = std::max(out.eps2, rep.eps2);
        out.intersections.push_back(std::move(rep));
    }
    return out;
}

}  // namespace mvnerve

#endif

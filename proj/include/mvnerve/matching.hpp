// Bottleneck distance between integer barcodes, exact over doubled units.
//
// All distances are reported as doubled integers (a value of 2e means a
// bottleneck distance of e): matching two bars costs twice the max birth /
// death offset, and deleting a bar [b, d) costs its length d - b (twice the
// half-length radius).  This keeps every candidate value integral, so the
// optimum is found by a decision procedure over the finite candidate set
// rather than by floating-point search.

#ifndef MVNERVE_MATCHING_HPP
#define MVNERVE_MATCHING_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "mvnerve/persistence.hpp"
#include "mvnerve/tower.hpp"

namespace mvnerve {

struct MatchEdge {
    std::optional<Interval> left;   // absent: right bar deleted to the diagonal
    std::optional<Interval> right;  // absent: left bar deleted to the diagonal
};

struct Matching {
    int64_t cost2 = 0;  // doubled bottleneck cost achieved by these edges
    std::vector<MatchEdge> edges;
};

namespace detail {

inline int64_t pair_cost2(const Interval& a, const Interval& b) {
    if (a.essential() != b.essential()) return kInfCost;
    int64_t db = 2 * static_cast<int64_t>(std::llabs(a.birth - b.birth));
    if (a.essential()) return db;
    return std::max(db, 2 * static_cast<int64_t>(std::llabs(a.death - b.death)));
}

// Kuhn's augmenting-path matching on the deletion-augmented bipartite graph.
// Left nodes: finite bars of A then one diagonal slot per bar of B; right
// nodes: finite bars of B then one diagonal slot per bar of A.  A perfect
// matching at threshold c exists iff the barcodes are within doubled
// distance c on their finite parts.
struct Feasibility {
    const std::vector<Interval>& a;
    const std::vector<Interval>& b;
    int64_t c;
    std::vector<int> match_right;  // right node -> left node or -1
    std::vector<int> match_left;

    bool edge(int l, int r) const {
        int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
        bool l_real = l < na, r_real = r < nb;
        if (l_real && r_real) return pair_cost2(a[l], b[r]) <= c;
        if (l_real && !r_real) return (r - nb) == l && a[l].death - a[l].birth <= c;
        if (!l_real && r_real) return (l - na) == r && b[r].death - b[r].birth <= c;
        return true;  // diagonal to diagonal is free
    }

    bool augment(int l, std::vector<char>& seen) {
        int nb = static_cast<int>(b.size());
        int total_right = nb + static_cast<int>(a.size());
        for (int r = 0; r < total_right; ++r) {
            if (seen[r] || !edge(l, r)) continue;
            seen[r] = 1;
            if (match_right[r] < 0 || augment(match_right[r], seen)) {
                match_right[r] = l;
                match_left[l] = r;
                return true;
            }
        }
        return false;
    }

    bool run() {
        int total = static_cast<int>(a.size() + b.size());
        match_right.assign(total, -1);
        match_left.assign(total, -1);
        for (int l = 0; l < total; ++l) {
            std::vector<char> seen(total, 0);
            if (!augment(l, seen)) return false;
        }
        return true;
    }
};

}  // namespace detail

// Doubled bottleneck distance with an optimal matching as witness.  Distance
// is kInfCost exactly when the essential classes cannot be matched (their
// counts differ).
inline Matching bottleneck_matching(const DegreeBarcode& lhs, const DegreeBarcode& rhs) {
    std::vector<Interval> ae, af, be, bf;
    for (const auto& iv : lhs) (iv.essential() ? ae : af).push_back(iv);
    for (const auto& iv : rhs) (iv.essential() ? be : bf).push_back(iv);
    Matching out;
    if (ae.size() != be.size()) {
        out.cost2 = kInfCost;
        return out;
    }
    std::sort(ae.begin(), ae.end());
    std::sort(be.begin(), be.end());
    int64_t floor2 = 0;
    for (size_t i = 0; i < ae.size(); ++i)
        floor2 = std::max(floor2, 2 * static_cast<int64_t>(std::llabs(ae[i].birth - be[i].birth)));

    std::vector<int64_t> candidates{0, floor2};
    for (const auto& a : af) {
        candidates.push_back(a.death - a.birth);
        for (const auto& b : bf) candidates.push_back(detail::pair_cost2(a, b));
    }
    for (const auto& b : bf) candidates.push_back(b.death - b.birth);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    candidates.erase(candidates.begin(),
                     std::lower_bound(candidates.begin(), candidates.end(), floor2));

    detail::Feasibility probe{af, bf, 0, {}, {}};
    size_t lo = 0, hi = candidates.size() - 1;
    // Feasibility is monotone in the threshold, and the largest candidate
    // (delete everything unmatched) is always feasible.
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        probe.c = candidates[mid];
        if (probe.run())
            hi = mid;
        else
            lo = mid + 1;
    }
    probe.c = candidates[lo];
    probe.run();
    out.cost2 = candidates[lo];

    for (size_t i = 0; i < ae.size(); ++i) out.edges.push_back({ae[i], be[i]});
    int na = static_cast<int>(af.size()), nb = static_cast<int>(bf.size());
    for (int l = 0; l < na; ++l) {
        int r = probe.match_left[l];
        if (r < nb)
            out.edges.push_back({af[l], bf[r]});
        else
            out.edges.push_back({af[l], std::nullopt});
    }
    for (int r = 0; r < nb; ++r)
        if (probe.match_right[r] >= na) out.edges.push_back({std::nullopt, bf[r]});
    return out;
}

inline int64_t bottleneck(const DegreeBarcode& lhs, const DegreeBarcode& rhs) {
    return bottleneck_matching(lhs, rhs).cost2;
}

// Max over degrees; degrees missing on one side compare against the empty
// barcode.
inline int64_t bottleneck(const Barcode& lhs, const Barcode& rhs) {
    size_t n = std::max(lhs.degrees.size(), rhs.degrees.size());
    int64_t worst = 0;
    for (size_t q = 0; q < n; ++q)
        worst = std::max(worst, bottleneck(lhs.at(static_cast<int>(q)), rhs.at(static_cast<int>(q))));
    return worst;
}

// Distance from a barcode to the barcode of a single point born at time a
// (one essential degree-0 bar, nothing else), minimized over a.  Finite iff
// degree 0 has exactly one essential class and no higher degree has any;
// then the optimum pins a to that class's birth and the cost is the longest
// finite bar.
struct PointDistance {
    int64_t eps2 = 0;        // doubled distance; kInfCost when no point is close
    birth_t point_birth = 0; // optimal a when finite
    std::string reason;      // set when eps2 is infinite
};

inline PointDistance point_distance(const Barcode& bc) {
    PointDistance out;
    size_t ess0 = 0;
    birth_t a = 0;
    bool any = false;
    for (const auto& iv : bc.at(0)) {
        any = true;
        if (iv.essential()) {
            ++ess0;
            a = iv.birth;
        }
    }
    for (size_t q = 1; q < bc.degrees.size(); ++q)
        for (const auto& iv : bc.degrees[q]) {
            any = true;
            if (iv.essential()) {
                out.eps2 = kInfCost;
                out.reason = "essential class in degree " + std::to_string(q);
                return out;
            }
        }
    if (!any) {
        out.eps2 = kInfCost;
        out.reason = "empty barcode";
        return out;
    }
    if (ess0 != 1) {
        out.eps2 = kInfCost;
        out.reason = "degree 0 has " + std::to_string(ess0) + " essential classes";
        return out;
    }
    out.point_birth = a;
    for (const auto& degree : bc.degrees)
        for (const auto& iv : degree)
            if (!iv.essential()) out.eps2 = std::max(out.eps2, iv.death - iv.birth);
    return out;
}

}  // namespace mvnerve

#endif

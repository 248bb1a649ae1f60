// Instance generators: the two sharp hand-built families, random filtered
// flag complexes with random covers, and subdivision-based good covers.

#ifndef MVNERVE_GENERATORS_HPP
#define MVNERVE_GENERATORS_HPP

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mvnerve/complex.hpp"
#include "mvnerve/persistence.hpp"

namespace mvnerve {

// Boundary-of-a-simplex family, dimension D >= 1.  Vertices 0..D+1; the
// complex holds every proper nonempty subset, born at twice the smallest
// absent vertex; member i is the full subcomplex avoiding vertex i.  Each
// member and every intersection is a simplex cone away from one slice, so
// the cover quality is one grid step while the ambient top class appears
// only at time 2(D+1): the configuration that makes the comparison bounds
// tight.
inline FilteredCover sphere_example(int D) {
    if (D < 1) throw std::invalid_argument("sphere_example needs D >= 1");
    int nv = D + 2;
    std::vector<std::pair<Simplex, birth_t>> entries;
    for (int mask = 1; mask < (1 << nv) - 1; ++mask) {
        Simplex s;
        for (int v = 0; v < nv; ++v)
            if (mask & (1 << v)) s.push_back(static_cast<vertex_t>(v));
        int absent = 0;
        while (mask & (1 << absent)) ++absent;
        entries.emplace_back(std::move(s), static_cast<birth_t>(2 * absent));
    }
    FilteredComplex ambient = FilteredComplex::build(entries);
    std::vector<std::vector<vertex_t>> members(nv);
    for (int i = 0; i < nv; ++i)
        for (int v = 0; v < nv; ++v)
            if (v != i) members[i].push_back(static_cast<vertex_t>(v));
    return vertex_induced_cover(ambient, members);
}

// Suspension family, dimension D >= 1.  Vertices 0..D+3: an equatorial
// sphere on 1..D+1 suspended by poles D+2, D+3, with vertex 0 attached
// early.  Births stage the equator closing at positive times while the
// poles are ancient, so the ambient D-cycle is born far in the past and
// dies at a positive time; the nerve is a full simplex on 0..D+1.  Realizes
// the matching lower bound for the stable-page comparison.
inline FilteredCover bipyramid_example(int D) {
    if (D < 1) throw std::invalid_argument("bipyramid_example needs D >= 1");
    int nv = D + 4;
    vertex_t pole_a = static_cast<vertex_t>(D + 2), pole_b = static_cast<vertex_t>(D + 3);
    std::vector<std::pair<Simplex, birth_t>> entries;
    for (int mask = 1; mask < (1 << nv); ++mask) {
        Simplex s;
        for (int v = 0; v < nv; ++v)
            if (mask & (1 << v)) s.push_back(static_cast<vertex_t>(v));
        bool has_equator = true;
        for (int v = 1; v <= D + 1; ++v)
            if (!(mask & (1 << v))) has_equator = false;
        bool has_both_poles = (mask & (1 << pole_a)) && (mask & (1 << pole_b));
        if (has_equator || has_both_poles) continue;
        birth_t b;
        if (!(mask & 1)) {
            b = static_cast<birth_t>(-2 * D);
        } else if (!(mask & (1 << pole_a))) {
            b = 0;
        } else {
            int gap = 1;
            while (mask & (1 << gap)) ++gap;
            b = static_cast<birth_t>(2 * gap);
        }
        entries.emplace_back(std::move(s), b);
    }
    FilteredComplex ambient = FilteredComplex::build(entries);
    std::vector<std::vector<vertex_t>> members(D + 2);
    for (int v = 0; v < nv; ++v)
        if (v != pole_a) members[0].push_back(static_cast<vertex_t>(v));
    for (int i = 1; i <= D + 1; ++i)
        for (int v = 0; v <= D + 2; ++v)
            if (v != i) members[i].push_back(static_cast<vertex_t>(v));
    return vertex_induced_cover(ambient, members);
}

struct RandomComplexParams {
    int vertices = 10;
    double edge_probability = 0.35;
    int max_dim = 3;
    birth_t vertex_birth_min = 0;
    birth_t vertex_birth_max = 8;
    int monotone_jitter = 2;     // random extra delay added above the faces
    size_t max_simplices = 300;  // rejection cap; density is lowered to fit
};

// Filtered flag complex of a random graph.  Births start from a random
// vertex function extended by lower stars, then each positive-dimensional
// simplex is delayed by a random amount above the latest of its faces, so
// the filtration is monotone but not vertex-determined.
inline FilteredComplex random_complex(std::mt19937_64& rng, const RandomComplexParams& par) {
    double p = par.edge_probability;
    for (int attempt = 0;; ++attempt, p *= 0.8) {
        std::vector<std::vector<char>> adj(par.vertices, std::vector<char>(par.vertices, 0));
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for (int a = 0; a < par.vertices; ++a)
            for (int b = a + 1; b < par.vertices; ++b)
                if (coin(rng) < p) adj[a][b] = adj[b][a] = 1;
        // Enumerate cliques up to the dimension cap by extension.
        std::vector<Simplex> cliques;
        for (int v = 0; v < par.vertices; ++v) cliques.push_back({static_cast<vertex_t>(v)});
        size_t frontier_begin = 0;
        bool too_big = false;
        while (!too_big) {
            size_t frontier_end = cliques.size();
            if (frontier_begin == frontier_end) break;
            if (static_cast<int>(cliques[frontier_begin].size()) > par.max_dim) break;
            for (size_t i = frontier_begin; i < frontier_end && !too_big; ++i) {
                for (int v = cliques[i].back() + 1; v < par.vertices; ++v) {
                    bool ok = true;
                    for (vertex_t u : cliques[i])
                        if (!adj[u][v]) ok = false;
                    if (!ok) continue;
                    Simplex next = cliques[i];
                    next.push_back(static_cast<vertex_t>(v));
                    cliques.push_back(std::move(next));
                    if (cliques.size() > par.max_simplices) too_big = true;
                }
            }
            frontier_begin = frontier_end;
        }
        if (too_big) continue;

        std::map<vertex_t, birth_t> vertex_birth;
        std::uniform_int_distribution<birth_t> vb(par.vertex_birth_min, par.vertex_birth_max);
        for (int v = 0; v < par.vertices; ++v) vertex_birth[static_cast<vertex_t>(v)] = vb(rng);
        std::map<Simplex, birth_t> births;
        std::sort(cliques.begin(), cliques.end(), [](const Simplex& a, const Simplex& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        std::uniform_int_distribution<int> jitter(0, par.monotone_jitter);
        for (const Simplex& s : cliques) {
            birth_t b = vertex_birth[s.front()];
            for (vertex_t v : s) b = std::max(b, vertex_birth[v]);
            if (s.size() > 1) {
                for (size_t k = 0; k < s.size(); ++k) {
                    Simplex face;
                    for (size_t t = 0; t < s.size(); ++t)
                        if (t != k) face.push_back(s[t]);
                    b = std::max(b, births.at(face));
                }
                b += jitter(rng);
            }
            births[s] = b;
        }
        std::vector<std::pair<Simplex, birth_t>> entries(births.begin(), births.end());
        return FilteredComplex::build(entries);
    }
}

inline std::vector<Simplex> maximal_simplices(const FilteredComplex& x) {
    std::vector<Simplex> maximal;
    for (const auto& c : x.cells()) {
        const Simplex& s = c.vertices;
        bool is_max = true;
        for (const auto& d : x.cells()) {
            if (d.vertices.size() != s.size() + 1) continue;
            if (std::includes(d.vertices.begin(), d.vertices.end(), s.begin(), s.end())) {
                is_max = false;
                break;
            }
        }
        if (is_max) maximal.push_back(s);
    }
    return maximal;
}

namespace detail {

// Downward-close each part's simplex list and build the induced cover.
inline FilteredCover cover_from_parts(const FilteredComplex& x,
                                      const std::vector<std::vector<Simplex>>& assigned) {
    std::vector<std::vector<Simplex>> members(assigned.size());
    for (size_t i = 0; i < assigned.size(); ++i) {
        std::vector<Simplex> closed;
        for (const Simplex& top : assigned[i])
            for (int mask = 1; mask < (1 << top.size()); ++mask) {
                Simplex s;
                for (size_t t = 0; t < top.size(); ++t)
                    if (mask & (1 << t)) s.push_back(top[t]);
                closed.push_back(std::move(s));
            }
        std::sort(closed.begin(), closed.end());
        closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
        members[i] = std::move(closed);
    }
    return induced_cover(x, members);
}

}  // namespace detail

// Cover by downward closures of the maximal simplices, randomly assigned to
// `parts` members (each part seeded with at least one maximal simplex) with
// a chance of double membership so members overlap.
inline FilteredCover random_cover(std::mt19937_64& rng, const FilteredComplex& x, int parts,
                                  double second_membership = 0.35) {
    if (parts < 1) throw std::invalid_argument("random_cover needs at least one part");
    std::vector<Simplex> maximal = maximal_simplices(x);
    int m = std::min<int>(parts, static_cast<int>(maximal.size()));
    std::vector<std::vector<Simplex>> assigned(m);
    std::uniform_int_distribution<int> pick(0, m - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (size_t i = 0; i < maximal.size(); ++i) {
        int first = i < static_cast<size_t>(m) ? static_cast<int>(i) : pick(rng);
        assigned[first].push_back(maximal[i]);
        if (m > 1 && coin(rng) < second_membership) {
            int second = pick(rng);
            if (second != first) assigned[second].push_back(maximal[i]);
        }
    }
    return detail::cover_from_parts(x, assigned);
}

// Like random_cover, but each part grows by attaching maximal simplices that
// share a vertex with it, so every member is connected in its final slice.
// Covers built this way usually have finite quality.
inline FilteredCover random_connected_cover(std::mt19937_64& rng, const FilteredComplex& x,
                                            int parts, double second_membership = 0.35) {
    if (parts < 1) throw std::invalid_argument("random_connected_cover needs at least one part");
    std::vector<Simplex> maximal = maximal_simplices(x);
    std::shuffle(maximal.begin(), maximal.end(), rng);
    int m = std::min<int>(parts, static_cast<int>(maximal.size()));
    std::vector<std::vector<Simplex>> assigned(m);
    std::vector<std::set<vertex_t>> part_verts(m);
    for (int i = 0; i < m; ++i) {
        assigned[i].push_back(maximal[i]);
        part_verts[i].insert(maximal[i].begin(), maximal[i].end());
    }
    std::vector<Simplex> remaining(maximal.begin() + m, maximal.end());
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    auto touches = [&](int part, const Simplex& s) {
        return std::any_of(s.begin(), s.end(),
                           [&](vertex_t v) { return part_verts[part].count(v) > 0; });
    };
    auto attach = [&](int part, const Simplex& s) {
        assigned[part].push_back(s);
        part_verts[part].insert(s.begin(), s.end());
    };
    while (!remaining.empty()) {
        bool progressed = false;
        for (size_t i = 0; i < remaining.size(); ++i) {
            std::vector<int> hits;
            for (int part = 0; part < m; ++part)
                if (touches(part, remaining[i])) hits.push_back(part);
            if (hits.empty()) continue;
            std::uniform_int_distribution<size_t> pick(0, hits.size() - 1);
            size_t first = pick(rng);
            attach(hits[first], remaining[i]);
            if (hits.size() > 1 && coin(rng) < second_membership) {
                size_t second = pick(rng);
                if (second != first) attach(hits[second], remaining[i]);
            }
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
            progressed = true;
            break;
        }
        if (!progressed) {
            // No part shares a vertex with any leftover simplex (the complex
            // itself is disconnected): fall back to an arbitrary part.
            std::uniform_int_distribution<int> pick(0, m - 1);
            attach(pick(rng), remaining.back());
            remaining.pop_back();
        }
    }
    return detail::cover_from_parts(x, assigned);
}

// Order complex of the face poset, filtered by the top element of each
// chain, covered by "contains vertex v" stars.  Every intersection is a
// cone (quality 0), the nerve reproduces the model complex filtration-
// exactly, and the subdivision has the model's barcode: the canonical
// zero-defect instance.
struct GoodCoverInstance {
    FilteredCover cover;      // cover of the subdivided complex
    FilteredComplex model;    // the nerve should match this exactly
};

inline GoodCoverInstance good_cover_instance(const FilteredComplex& model) {
    std::vector<std::pair<Simplex, birth_t>> chains;
    // Chain vertices are model cell ids; chains are sorted id lists that
    // are totally ordered under face inclusion (ids respect dimension).
    std::vector<Simplex> frontier;
    index_t n = static_cast<index_t>(model.size());
    auto strictly_contains = [&](index_t big, index_t small) {
        const Simplex& a = model.cell(big).vertices;
        const Simplex& b = model.cell(small).vertices;
        return a.size() > b.size() && std::includes(a.begin(), a.end(), b.begin(), b.end());
    };
    for (index_t c = 0; c < n; ++c) frontier.push_back({static_cast<vertex_t>(c)});
    while (!frontier.empty()) {
        std::vector<Simplex> next;
        for (const Simplex& chain : frontier) {
            index_t top = static_cast<index_t>(chain.back());
            chains.emplace_back(chain, model.cell(top).birth);
            // Faces sort before cofaces in the cell order (earlier birth, or
            // equal birth and lower dimension), so extending past the current
            // top by a strict coface always appends a larger id and every
            // chain is produced exactly once.
            for (index_t c = top + 1; c < n; ++c) {
                if (!strictly_contains(c, top)) continue;
                Simplex longer = chain;
                longer.push_back(static_cast<vertex_t>(c));
                next.push_back(std::move(longer));
            }
        }
        frontier = std::move(next);
    }
    FilteredComplex subdivided = FilteredComplex::build(chains);
    std::vector<std::vector<vertex_t>> members;
    for (vertex_t v : model.vertex_set()) {
        std::vector<vertex_t> star;
        for (index_t c = 0; c < n; ++c) {
            const Simplex& s = model.cell(c).vertices;
            if (std::binary_search(s.begin(), s.end(), v)) star.push_back(static_cast<vertex_t>(c));
        }
        members.push_back(std::move(star));
    }
    return GoodCoverInstance{vertex_induced_cover(subdivided, members), model};
}

// Random single-degree barcode for metric tests.
inline DegreeBarcode random_barcode(std::mt19937_64& rng, int bars, birth_t lo, birth_t hi,
                                    double essential_probability = 0.2) {
    std::uniform_int_distribution<birth_t> pos(lo, hi);
    std::uniform_int_distribution<birth_t> len(1, std::max<birth_t>(1, (hi - lo) / 2));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    DegreeBarcode bc;
    for (int i = 0; i < bars; ++i) {
        birth_t b = pos(rng);
        if (coin(rng) < essential_probability)
            bc.push_back({b, kInfDeath});
        else
            bc.push_back({b, b + len(rng)});
    }
    std::sort(bc.begin(), bc.end());
    return bc;
}

}  // namespace mvnerve

#endif

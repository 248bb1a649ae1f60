// Z-filtered simplicial complexes and filtered covers.
//
// A filtered complex assigns each simplex an integer birth degree, monotone
// under the face relation, so slice j is the subcomplex of simplices with
// birth <= j.  A filtered cover is an indexed family of filtered subcomplexes
// whose slice-wise union reproduces every ambient slice (equivalently, the
// ambient birth of each simplex is the min of its births in the members that
// contain it).  Vertex order is ascending identifier order and cover-index
// order is declaration order; both are fixed for the lifetime of a value so
// boundary signs are deterministic.

#ifndef MVNERVE_COMPLEX_HPP
#define MVNERVE_COMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvnerve/fp.hpp"

namespace mvnerve {

using birth_t = int64_t;
using vertex_t = int32_t;
using Simplex = std::vector<vertex_t>;  // strictly ascending vertex ids

inline std::string simplex_name(const Simplex& s) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "}";
    return os.str();
}

// Immutable-after-build filtered complex.  Simplices are interned and sorted
// by (birth, dimension, lexicographic vertex tuple); that order is reused as
// the column order of every boundary reduction.
class FilteredComplex {
public:
    FilteredComplex() = default;

    // Accepts an arbitrary monotone set of (simplex, birth) pairs and closes
    // it under faces; a face that was never listed receives the minimum birth
    // of its listed cofaces.  Listing a face explicitly with a birth larger
    // than one of its cofaces is rejected (monotonicity violation), as is
    // listing the same simplex twice with different births.
    static FilteredComplex build(const std::vector<std::pair<Simplex, birth_t>>& simplices) {
        std::map<Simplex, birth_t> births;
        std::map<Simplex, bool> explicit_entry;
        for (const auto& [raw, b] : simplices) {
            Simplex s = checked_simplex(raw);
            auto it = births.find(s);
            if (it != births.end()) {
                if (it->second != b)
                    throw std::invalid_argument("duplicate simplex " + simplex_name(s) +
                                                " with conflicting births " +
                                                std::to_string(it->second) + " and " +
                                                std::to_string(b));
                continue;
            }
            births[s] = b;
            explicit_entry[s] = true;
        }
        // Close under faces, propagating min-of-cofaces births downwards.
        // Iterate from high dimension so each step only adds codim-1 faces.
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<std::pair<Simplex, birth_t>> to_add;
            for (const auto& [s, b] : births) {
                if (s.size() == 1) continue;
                for (size_t k = 0; k < s.size(); ++k) {
                    Simplex face = s;
                    face.erase(face.begin() + static_cast<long>(k));
                    auto it = births.find(face);
                    if (it == births.end()) {
                        to_add.emplace_back(face, b);
                    } else if (it->second > b) {
                        if (explicit_entry.count(face) && explicit_entry[face])
                            throw std::invalid_argument(
                                "monotonicity violation: face " + simplex_name(face) + " born " +
                                std::to_string(it->second) + " after coface " + simplex_name(s) +
                                " born " + std::to_string(b));
                        it->second = b;
                        changed = true;
                    }
                }
            }
            for (const auto& [f, b] : to_add) {
                auto it = births.find(f);
                if (it == births.end() || it->second > b) {
                    births[f] = b;
                    changed = true;
                }
            }
        }
        return FilteredComplex(std::move(births));
    }

    static FilteredComplex from_births(std::map<Simplex, birth_t> births) {
        // Trusted path for internally constructed complexes; still validates.
        return FilteredComplex(std::move(births));
    }

    size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    int dim() const {
        int d = -1;
        for (const auto& c : cells_) d = std::max(d, static_cast<int>(c.vertices.size()) - 1);
        return d;
    }

    birth_t min_birth() const {
        birth_t b = std::numeric_limits<birth_t>::max();
        for (const auto& c : cells_) b = std::min(b, c.birth);
        return b;
    }
    birth_t max_birth() const {
        birth_t b = std::numeric_limits<birth_t>::min();
        for (const auto& c : cells_) b = std::max(b, c.birth);
        return b;
    }

    struct Cell {
        Simplex vertices;
        birth_t birth;
    };

    // Cells in (birth, dim, lex) order.
    const std::vector<Cell>& cells() const { return cells_; }

    const Cell& cell(index_t id) const { return cells_[static_cast<size_t>(id)]; }

    std::optional<index_t> id_of(const Simplex& s) const {
        auto it = id_.find(s);
        if (it == id_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Simplex& s) const { return id_.count(s) > 0; }

    std::optional<birth_t> birth_of(const Simplex& s) const {
        auto it = id_.find(s);
        if (it == id_.end()) return std::nullopt;
        return cells_[static_cast<size_t>(it->second)].birth;
    }

    std::vector<vertex_t> vertex_set() const {
        std::vector<vertex_t> vs;
        for (const auto& c : cells_)
            if (c.vertices.size() == 1) vs.push_back(c.vertices[0]);
        std::sort(vs.begin(), vs.end());
        return vs;
    }

    // Number of simplices alive at slice j, per dimension (for Euler checks).
    std::vector<int64_t> slice_counts(birth_t j) const {
        std::vector<int64_t> counts(static_cast<size_t>(std::max(0, dim()) + 1), 0);
        for (const auto& c : cells_)
            if (c.birth <= j) ++counts[c.vertices.size() - 1];
        return counts;
    }

    static Simplex checked_simplex(const Simplex& raw) {
        if (raw.empty()) throw std::invalid_argument("empty vertex tuple");
        Simplex s = raw;
        std::sort(s.begin(), s.end());
        for (size_t i = 1; i < s.size(); ++i)
            if (s[i] == s[i - 1])
                throw std::invalid_argument("repeated vertex in simplex " + simplex_name(raw));
        return s;
    }

private:
    explicit FilteredComplex(std::map<Simplex, birth_t> births) {
        // Validate closure + monotonicity, then intern in filtration order.
        for (const auto& [s, b] : births) {
            if (s.size() > 1)
                for (size_t k = 0; k < s.size(); ++k) {
                    Simplex face = s;
                    face.erase(face.begin() + static_cast<long>(k));
                    auto it = births.find(face);
                    if (it == births.end())
                        throw std::invalid_argument("not face-closed: missing " + simplex_name(face));
                    if (it->second > b)
                        throw std::invalid_argument("monotonicity violation at " + simplex_name(face) +
                                                    " < " + simplex_name(s));
                }
        }
        cells_.reserve(births.size());
        for (auto& [s, b] : births) cells_.push_back(Cell{s, b});
        std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
            if (a.birth != b.birth) return a.birth < b.birth;
            if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
            return a.vertices < b.vertices;
        });
        for (index_t i = 0; i < static_cast<index_t>(cells_.size()); ++i) id_[cells_[i].vertices] = i;
    }

    std::vector<Cell> cells_;
    std::map<Simplex, index_t> id_;
};

// Lower-star filtration over the unfiltered simplex set of `base`: each
// simplex is born at the max of its vertex values.
inline FilteredComplex lower_star(const FilteredComplex& base,
                                  const std::map<vertex_t, birth_t>& vertex_values) {
    std::map<Simplex, birth_t> births;
    for (const auto& c : base.cells()) {
        birth_t b = std::numeric_limits<birth_t>::min();
        for (vertex_t v : c.vertices) {
            auto it = vertex_values.find(v);
            if (it == vertex_values.end())
                throw std::invalid_argument("missing value for vertex " + std::to_string(v));
            b = std::max(b, it->second);
        }
        births[c.vertices] = b;
    }
    return FilteredComplex::from_births(std::move(births));
}

// Floor-based discretization of real-valued births onto an integer grid:
// r maps to floor((r - origin) / epsilon).  Floor is monotone, so the result
// is again a filtration; it is idempotent on already-aligned values.
struct GridMap {
    double epsilon;
    double origin = 0.0;

    explicit GridMap(double eps, double orig = 0.0) : epsilon(eps), origin(orig) {
        if (!(eps > 0)) throw std::invalid_argument("grid step must be positive");
    }

    birth_t index_of(double r) const {
        return static_cast<birth_t>(std::floor((r - origin) / epsilon));
    }
    double value_of(birth_t k) const { return origin + static_cast<double>(k) * epsilon; }
};

inline FilteredComplex discretize(const std::vector<std::pair<Simplex, double>>& real_births,
                                  const GridMap& grid) {
    std::vector<std::pair<Simplex, birth_t>> births;
    births.reserve(real_births.size());
    for (const auto& [s, r] : real_births) births.emplace_back(s, grid.index_of(r));
    return FilteredComplex::build(births);
}

// Indexed family of filtered subcomplexes covering the ambient complex.
class FilteredCover {
public:
    FilteredCover(FilteredComplex ambient, std::vector<FilteredComplex> members)
        : ambient_(std::move(ambient)), members_(std::move(members)) {
        validate();
    }

    const FilteredComplex& ambient() const { return ambient_; }
    const std::vector<FilteredComplex>& members() const { return members_; }
    size_t arity() const { return members_.size(); }

    // Intersection of the members indexed by I, with birth(sigma) = max of
    // the member births (a simplex is in every member's slice j exactly when
    // its latest member birth is <= j).  Legitimately empty for disjoint I.
    FilteredComplex intersection(const std::vector<int>& I) const {
        if (I.empty()) throw std::invalid_argument("intersection over empty index set");
        for (int i : I)
            if (i < 0 || static_cast<size_t>(i) >= members_.size())
                throw std::invalid_argument("cover index out of range: " + std::to_string(i));
        std::map<Simplex, birth_t> births;
        const FilteredComplex& first = members_[static_cast<size_t>(I[0])];
        for (const auto& c : first.cells()) {
            birth_t b = c.birth;
            bool in_all = true;
            for (size_t k = 1; k < I.size(); ++k) {
                auto mb = members_[static_cast<size_t>(I[k])].birth_of(c.vertices);
                if (!mb) {
                    in_all = false;
                    break;
                }
                b = std::max(b, *mb);
            }
            if (in_all) births[c.vertices] = b;
        }
        if (births.empty()) return FilteredComplex();
        return FilteredComplex::from_births(std::move(births));
    }

private:
    void validate() const {
        if (members_.empty()) throw std::invalid_argument("cover must have at least one member");
        // Members are subcomplexes with births no earlier than ambient.
        for (size_t i = 0; i < members_.size(); ++i)
            for (const auto& c : members_[i].cells()) {
                auto ab = ambient_.birth_of(c.vertices);
                if (!ab)
                    throw std::invalid_argument("cover member " + std::to_string(i) +
                                                " contains simplex " + simplex_name(c.vertices) +
                                                " absent from the ambient complex");
                if (c.birth < *ab)
                    throw std::invalid_argument("cover member " + std::to_string(i) + " births " +
                                                simplex_name(c.vertices) + " at " +
                                                std::to_string(c.birth) + " before ambient " +
                                                std::to_string(*ab));
            }
        // Slice-wise union property: ambient birth = min over members.
        for (const auto& c : ambient_.cells()) {
            birth_t best = std::numeric_limits<birth_t>::max();
            for (const auto& m : members_) {
                auto mb = m.birth_of(c.vertices);
                if (mb) best = std::min(best, *mb);
            }
            if (best != c.birth)
                throw std::invalid_argument(
                    "cover does not reproduce ambient slices at " + simplex_name(c.vertices) +
                    ": ambient birth " + std::to_string(c.birth) + ", min member birth " +
                    (best == std::numeric_limits<birth_t>::max() ? std::string("none")
                                                                 : std::to_string(best)));
        }
    }

    FilteredComplex ambient_;
    std::vector<FilteredComplex> members_;
};

// Cover whose members inherit ambient births (member slice = member ∩ ambient
// slice).  Each assignment entry is a face-closed set of ambient simplices;
// together they must exhaust the ambient complex.
inline FilteredCover induced_cover(const FilteredComplex& ambient,
                                   const std::vector<std::vector<Simplex>>& assignment) {
    std::vector<FilteredComplex> members;
    std::vector<bool> covered(ambient.size(), false);
    for (const auto& part : assignment) {
        std::map<Simplex, birth_t> births;
        for (const auto& raw : part) {
            Simplex s = FilteredComplex::checked_simplex(raw);
            auto b = ambient.birth_of(s);
            if (!b)
                throw std::invalid_argument("assignment names simplex " + simplex_name(s) +
                                            " absent from the ambient complex");
            births[s] = *b;
            covered[static_cast<size_t>(*ambient.id_of(s))] = true;
        }
        members.push_back(births.empty() ? FilteredComplex()
                                         : FilteredComplex::from_births(std::move(births)));
    }
    std::vector<std::string> uncovered;
    for (size_t i = 0; i < covered.size(); ++i)
        if (!covered[i]) uncovered.push_back(simplex_name(ambient.cells()[i].vertices));
    if (!uncovered.empty()) {
        std::string msg = "assignment does not cover the ambient complex; uncovered:";
        for (const auto& s : uncovered) msg += " " + s;
        throw std::invalid_argument(msg);
    }
    return FilteredCover(ambient, std::move(members));
}

// Convenience form: members are the full subcomplexes on given vertex sets.
inline FilteredCover vertex_induced_cover(const FilteredComplex& ambient,
                                          const std::vector<std::vector<vertex_t>>& vertex_sets) {
    std::vector<std::vector<Simplex>> assignment;
    for (const auto& vs : vertex_sets) {
        std::vector<vertex_t> sorted = vs;
        std::sort(sorted.begin(), sorted.end());
        std::vector<Simplex> part;
        for (const auto& c : ambient.cells())
            if (std::includes(sorted.begin(), sorted.end(), c.vertices.begin(), c.vertices.end()))
                part.push_back(c.vertices);
        assignment.push_back(std::move(part));
    }
    return induced_cover(ambient, assignment);
}

}  // namespace mvnerve

#endif

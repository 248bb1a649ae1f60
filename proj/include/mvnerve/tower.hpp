// Algebra of concretely presented graded k[t]-modules.
//
// A PersistenceTower is a k[t]-module given degree-wise; a TowerMorphism is a
// degree-0 module map, i.e. a slice-wise family of matrices making every
// square with the transition maps commute.  Kernels, cokernels and images
// are computed slice by slice with their induced transitions, which keeps
// every construction exact (no interval bookkeeping, only linear algebra).

#ifndef MVNERVE_TOWER_HPP
#define MVNERVE_TOWER_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvnerve/fp.hpp"
#include "mvnerve/persistence.hpp"

namespace mvnerve {

constexpr int64_t kInfCost = std::numeric_limits<int64_t>::max();

struct TowerMorphism {
    PersistenceTower source;
    PersistenceTower target;
    std::vector<Mat> comp;  // comp[k]: target.dims[k] x source.dims[k]

    TowerMorphism(PersistenceTower src, PersistenceTower tgt, std::vector<Mat> components)
        : source(std::move(src)), target(std::move(tgt)), comp(std::move(components)) {
        validate();
    }

    void validate() const {
        source.check_shapes();
        target.check_shapes();
        if (source.j_min != target.j_min || source.j_max != target.j_max)
            throw std::invalid_argument("tower morphism requires a shared window");
        if (comp.size() != source.slices())
            throw std::invalid_argument("tower morphism needs one component per slice");
        Field F(source.prime);
        if (source.prime != target.prime)
            throw std::invalid_argument("tower morphism across different fields");
        for (size_t k = 0; k < comp.size(); ++k)
            if (comp[k].rows() != target.dims[k] || comp[k].cols() != source.dims[k])
                throw std::invalid_argument("component shape mismatch at slice offset " +
                                            std::to_string(k));
        for (size_t k = 0; k + 1 < comp.size(); ++k) {
            Mat lhs = matmul(target.maps[k], comp[k], F);
            Mat rhs = matmul(comp[k + 1], source.maps[k], F);
            if (!(lhs == rhs))
                throw std::invalid_argument("naturality square fails between slices " +
                                            std::to_string(source.j_min + static_cast<birth_t>(k)) +
                                            " and " +
                                            std::to_string(source.j_min + static_cast<birth_t>(k) + 1));
        }
    }
};

namespace detail {

// Shared pattern for kernel/cokernel/image/homology: per slice a numerator
// span and denominator span inside a per-slice ambient space, transitions
// given by the ambient tower's maps.
inline PersistenceTower slice_subquotient(const std::vector<Mat>& numerator,
                                          const std::vector<Mat>& denominator,
                                          const std::vector<Mat>& transitions, birth_t j_min,
                                          coeff_t prime) {
    SliceFamily fam;
    fam.numerator = numerator;
    fam.denominator = denominator;
    fam.transitions = transitions;
    return quotient_tower(fam, j_min, prime);
}

}  // namespace detail

inline PersistenceTower kernel(const TowerMorphism& f) {
    Field F(f.source.prime);
    size_t S = f.source.slices();
    std::vector<Mat> num(S), den(S);
    for (size_t k = 0; k < S; ++k) {
        num[k] = kernel_basis(f.comp[k], F);
        den[k] = Mat(f.source.dims[k], 0);
    }
    return detail::slice_subquotient(num, den, f.source.maps, f.source.j_min, f.source.prime);
}

inline PersistenceTower image(const TowerMorphism& f) {
    size_t S = f.source.slices();
    std::vector<Mat> num(S), den(S);
    for (size_t k = 0; k < S; ++k) {
        num[k] = f.comp[k];
        den[k] = Mat(f.target.dims[k], 0);
    }
    return detail::slice_subquotient(num, den, f.target.maps, f.target.j_min, f.target.prime);
}

inline PersistenceTower cokernel(const TowerMorphism& f) {
    size_t S = f.source.slices();
    std::vector<Mat> num(S), den(S);
    for (size_t k = 0; k < S; ++k) {
        num[k] = Mat::identity(f.target.dims[k]);
        den[k] = f.comp[k];
    }
    return detail::slice_subquotient(num, den, f.target.maps, f.target.j_min, f.target.prime);
}

// Homology ker(g)/im(f) of a composable pair with g∘f = 0, as a tower over
// the middle module's slices.
inline PersistenceTower homology_of(const TowerMorphism& f, const TowerMorphism& g) {
    Field F(f.source.prime);
    if (f.target.dims != g.source.dims || f.target.j_min != g.source.j_min)
        throw std::invalid_argument("homology_of: middle towers disagree");
    size_t S = g.source.slices();
    std::vector<Mat> num(S), den(S);
    for (size_t k = 0; k < S; ++k) {
        Mat comp = matmul(g.comp[k], f.comp[k], F);
        for (index_t i = 0; i < comp.rows(); ++i)
            for (index_t j = 0; j < comp.cols(); ++j)
                if (comp(i, j) != 0)
                    throw std::invalid_argument("homology_of: composition not zero at slice offset " +
                                                std::to_string(k));
        num[k] = kernel_basis(g.comp[k], F);
        den[k] = f.comp[k];
    }
    return detail::slice_subquotient(num, den, g.source.maps, g.source.j_min, g.source.prime);
}

// Minimal doubled 2ε with t^{2ε} · M = 0: the longest bar length, infinite
// when an essential class exists, 0 exactly for the zero module.
inline int64_t eps_trivial(const DegreeBarcode& bars) {
    int64_t worst = 0;
    for (const auto& iv : bars) {
        if (iv.essential()) return kInfCost;
        worst = std::max(worst, iv.death - iv.birth);
    }
    return worst;
}

inline int64_t eps_trivial(const PersistenceTower& t) { return eps_trivial(barcode_of_tower(t)); }

// Reindexing M(s)_j = M_{j+s}; bars translate by -s.
inline PersistenceTower shift(PersistenceTower t, birth_t s) {
    t.j_min -= s;
    t.j_max -= s;
    return t;
}

// Interval-decomposed tower realizing a single-degree barcode.  Columns are
// ordered by the sorted intervals; transition maps are identity on the bars
// alive on both sides.
inline PersistenceTower tower_from_barcode(DegreeBarcode bars, coeff_t prime, birth_t lo,
                                           birth_t hi) {
    std::sort(bars.begin(), bars.end());
    PersistenceTower t;
    t.prime = prime;
    t.j_min = lo;
    t.j_max = hi;
    auto alive = [&](const Interval& iv, birth_t j) { return iv.birth <= j && (iv.essential() || j < iv.death); };
    for (birth_t j = lo; j <= hi; ++j) {
        index_t d = 0;
        for (const auto& iv : bars)
            if (alive(iv, j)) ++d;
        t.dims.push_back(d);
    }
    for (birth_t j = lo; j < hi; ++j) {
        Mat m(t.dims[static_cast<size_t>(j + 1 - lo)], t.dims[static_cast<size_t>(j - lo)]);
        index_t col = 0;
        for (const auto& iv : bars) {
            if (!alive(iv, j)) continue;
            if (alive(iv, j + 1)) {
                index_t row = 0;
                for (const auto& other : bars) {
                    if (&other == &iv) break;
                    if (alive(other, j + 1)) ++row;
                }
                m(row, col) = 1;
            }
            ++col;
        }
        t.maps.push_back(std::move(m));
    }
    t.check_shapes();
    return t;
}

// Window defaults to the tightest range covering every birth and finite death.
inline PersistenceTower tower_from_barcode(DegreeBarcode bars, coeff_t prime) {
    PersistenceTower empty;
    empty.prime = prime;
    if (bars.empty()) return empty;
    birth_t lo = bars.front().birth, hi = bars.front().birth;
    for (const auto& iv : bars) {
        lo = std::min(lo, iv.birth);
        hi = std::max(hi, iv.birth);
        if (!iv.essential()) hi = std::max(hi, iv.death);
    }
    return tower_from_barcode(std::move(bars), prime, lo, hi);
}

// Basis of the vector space of tower morphisms M -> N, found by solving all
// naturality squares as one linear system.  Each basis element is the list
// of slice components.
inline std::vector<std::vector<Mat>> hom_space_basis(const PersistenceTower& m,
                                                     const PersistenceTower& n) {
    m.check_shapes();
    n.check_shapes();
    if (m.j_min != n.j_min || m.j_max != n.j_max)
        throw std::invalid_argument("hom space requires a shared window");
    Field F(m.prime);
    size_t S = m.slices();
    // Unknown layout: for slice k, entry (i, j) of comp[k] at offset[k] + i*m.dims[k] + j.
    std::vector<index_t> offset(S + 1, 0);
    for (size_t k = 0; k < S; ++k)
        offset[k + 1] = offset[k] + n.dims[k] * m.dims[k];
    index_t total = offset[S];
    index_t eq_count = 0;
    for (size_t k = 0; k + 1 < S; ++k) eq_count += n.dims[k + 1] * m.dims[k];
    Mat sys(eq_count, total);
    index_t row = 0;
    for (size_t k = 0; k + 1 < S; ++k) {
        // N.maps[k] * X_k - X_{k+1} * M.maps[k] = 0, entry (a, b).
        for (index_t a = 0; a < n.dims[k + 1]; ++a)
            for (index_t b = 0; b < m.dims[k]; ++b) {
                for (index_t i = 0; i < n.dims[k]; ++i)
                    sys(row, offset[k] + i * m.dims[k] + b) =
                        F.add(sys(row, offset[k] + i * m.dims[k] + b), n.maps[k](a, i));
                for (index_t j = 0; j < m.dims[k + 1]; ++j)
                    sys(row, offset[k + 1] + a * m.dims[k + 1] + j) =
                        F.sub(sys(row, offset[k + 1] + a * m.dims[k + 1] + j), m.maps[k](j, b));
                ++row;
            }
    }
    Mat ker = kernel_basis(sys, F);
    std::vector<std::vector<Mat>> basis;
    for (index_t v = 0; v < ker.cols(); ++v) {
        std::vector<Mat> comps(S);
        for (size_t k = 0; k < S; ++k) {
            comps[k] = Mat(n.dims[k], m.dims[k]);
            for (index_t i = 0; i < n.dims[k]; ++i)
                for (index_t j = 0; j < m.dims[k]; ++j)
                    comps[k](i, j) = ker(offset[k] + i * m.dims[k] + j, v);
        }
        basis.push_back(std::move(comps));
    }
    return basis;
}

inline index_t hom_dimension(const PersistenceTower& m, const PersistenceTower& n) {
    return static_cast<index_t>(hom_space_basis(m, n).size());
}

inline bool is_injective(const TowerMorphism& f) {
    Field F(f.source.prime);
    for (size_t k = 0; k < f.comp.size(); ++k)
        if (rank(f.comp[k], F) != f.source.dims[k]) return false;
    return true;
}

inline bool is_surjective(const TowerMorphism& f) {
    Field F(f.source.prime);
    for (size_t k = 0; k < f.comp.size(); ++k)
        if (rank(f.comp[k], F) != f.target.dims[k]) return false;
    return true;
}

// Validates that 0 -> A -f-> B -g-> C -> 0 is exact slice-wise.
inline void verify_ses(const TowerMorphism& f, const TowerMorphism& g) {
    if (f.target.dims != g.source.dims)
        throw std::invalid_argument("short exact sequence: middle towers disagree");
    Field F(f.source.prime);
    if (!is_injective(f)) throw std::invalid_argument("short exact sequence: first map not injective");
    if (!is_surjective(g)) throw std::invalid_argument("short exact sequence: last map not surjective");
    for (size_t k = 0; k < f.comp.size(); ++k) {
        Mat comp = matmul(g.comp[k], f.comp[k], F);
        for (index_t i = 0; i < comp.rows(); ++i)
            for (index_t j = 0; j < comp.cols(); ++j)
                if (comp(i, j) != 0)
                    throw std::invalid_argument("short exact sequence: composite not zero");
        if (rank(f.comp[k], F) + rank(g.comp[k], F) != f.target.dims[k])
            throw std::invalid_argument("short exact sequence: not exact at the middle");
    }
}

// Interleaving witnesses are only checked, never searched for: the caller
// supplies the short exact sequence, and we report the doubled triviality of
// its end (quotient, resp. sub) term.
inline int64_t left_witness_triviality(const TowerMorphism& f, const TowerMorphism& g) {
    verify_ses(f, g);
    return eps_trivial(g.target);
}

inline int64_t right_witness_triviality(const TowerMorphism& f, const TowerMorphism& g) {
    verify_ses(f, g);
    return eps_trivial(f.source);
}

}  // namespace mvnerve

#endif

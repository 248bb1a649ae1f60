// Persistent homology of filtered chain complexes over F_p.
//
// Two complementary pipelines are provided:
//  * barcode():         sparse column reduction with the clearing shortcut,
//                       over any based filtered chain complex (simplicial
//                       complexes and the blown-up cover complex both fit);
//  * tower_homology():  slice-wise homology spaces with induced transition
//                       maps, decoded into intervals by barcode_of_tower().
// The second pipeline is slower but exposes bases and maps, which the
// spectral-sequence machinery needs; the first serves as its oracle.

#ifndef MVNERVE_PERSISTENCE_HPP
#define MVNERVE_PERSISTENCE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "mvnerve/complex.hpp"
#include "mvnerve/fp.hpp"

namespace mvnerve {

constexpr birth_t kInfDeath = std::numeric_limits<birth_t>::max();

// Half-open interval [birth, death), death == kInfDeath for essential bars.
struct Interval {
    birth_t birth;
    birth_t death;

    bool essential() const { return death == kInfDeath; }
    // Doubled length (2x), the natural unit for exact half-integer distances.
    int64_t length() const { return essential() ? kInfDeath : death - birth; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.birth == b.birth && a.death == b.death;
    }
    friend bool operator<(const Interval& a, const Interval& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    }
};

using DegreeBarcode = std::vector<Interval>;  // kept sorted

// Per-homological-degree multiset of intervals.
struct Barcode {
    std::vector<DegreeBarcode> degrees;

    DegreeBarcode& at(size_t q) {
        if (q >= degrees.size()) degrees.resize(q + 1);
        return degrees[q];
    }
    const DegreeBarcode& at(size_t q) const {
        static const DegreeBarcode empty;
        return q < degrees.size() ? degrees[q] : empty;
    }

    void normalize() {
        for (auto& d : degrees) std::sort(d.begin(), d.end());
        while (!degrees.empty() && degrees.back().empty()) degrees.pop_back();
    }

    size_t max_degree() const { return degrees.empty() ? 0 : degrees.size() - 1; }

    friend bool operator==(const Barcode& a, const Barcode& b) {
        size_t n = std::max(a.degrees.size(), b.degrees.size());
        for (size_t q = 0; q < n; ++q)
            if (a.at(q) != b.at(q)) return false;
        return true;
    }
};

inline Barcode shift_barcode(Barcode bc, birth_t s) {
    for (auto& deg : bc.degrees)
        for (auto& iv : deg) {
            iv.birth -= s;
            if (!iv.essential()) iv.death -= s;
        }
    return bc;
}

// A based filtered chain complex: cells with a birth, a degree, and a sparse
// boundary (entries reference strictly lower-degree cells born no later).
// `order` positions cells by (birth, degree, tiebreak id); it is the global
// row/column order of the reduction.
struct ChainData {
    struct Entry {
        index_t cell;
        coeff_t coeff;
    };

    std::vector<birth_t> birth;
    std::vector<int> degree;
    std::vector<std::vector<Entry>> boundary;

    size_t size() const { return birth.size(); }

    int max_cell_degree() const {
        int d = 0;
        for (int q : degree) d = std::max(d, q);
        return d;
    }

    birth_t min_birth() const {
        birth_t b = std::numeric_limits<birth_t>::max();
        for (birth_t x : birth) b = std::min(b, x);
        return b;
    }
    birth_t max_birth() const {
        birth_t b = std::numeric_limits<birth_t>::min();
        for (birth_t x : birth) b = std::max(b, x);
        return b;
    }

    // Filtration positions: cells sorted by (birth, degree, id).
    std::vector<index_t> filtration_order() const {
        std::vector<index_t> ord(size());
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](index_t a, index_t b) {
            if (birth[a] != birth[b]) return birth[a] < birth[b];
            if (degree[a] != degree[b]) return degree[a] < degree[b];
            return a < b;
        });
        return ord;
    }

    void validate() const {
        for (size_t c = 0; c < size(); ++c)
            for (const auto& e : boundary[c]) {
                if (degree[static_cast<size_t>(e.cell)] != degree[c] - 1)
                    throw std::invalid_argument("boundary entry crosses more than one degree");
                if (birth[static_cast<size_t>(e.cell)] > birth[c])
                    throw std::invalid_argument("boundary entry born after its coface");
            }
    }
};

// Simplicial chain complex of a filtered complex, with boundary signs
// (-1)^k from the ascending vertex order.
inline ChainData chain_data(const FilteredComplex& x) {
    ChainData cd;
    size_t n = x.size();
    cd.birth.resize(n);
    cd.degree.resize(n);
    cd.boundary.resize(n);
    for (index_t i = 0; i < static_cast<index_t>(n); ++i) {
        const auto& cell = x.cell(i);
        cd.birth[static_cast<size_t>(i)] = cell.birth;
        cd.degree[static_cast<size_t>(i)] = static_cast<int>(cell.vertices.size()) - 1;
        if (cell.vertices.size() > 1) {
            coeff_t sign = 1;
            for (size_t k = 0; k < cell.vertices.size(); ++k) {
                Simplex face = cell.vertices;
                face.erase(face.begin() + static_cast<long>(k));
                cd.boundary[static_cast<size_t>(i)].push_back(
                    ChainData::Entry{*x.id_of(face), sign});
                sign = -sign;
            }
        }
    }
    return cd;
}

namespace detail {

// Sparse F_p column keyed by filtration position, entries ascending; the
// pivot is the last entry.
using SparseCol = std::vector<std::pair<index_t, coeff_t>>;

inline void add_scaled(SparseCol& dst, const SparseCol& src, coeff_t lambda, const Field& F) {
    SparseCol out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            coeff_t v = F.mul(F.normalize(lambda), F.normalize(src[j].second));
            if (v != 0) out.emplace_back(src[j].first, v);
            ++j;
        } else {
            coeff_t v = F.add(F.normalize(dst[i].second),
                              F.mul(F.normalize(lambda), F.normalize(src[j].second)));
            if (v != 0) out.emplace_back(dst[i].first, v);
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

}  // namespace detail

// Persistence barcode of a filtered chain complex by column reduction with
// clearing: degrees are processed top-down, and a cell that became a pivot
// row during the degree above has a column known to reduce to zero, so it is
// skipped.  Output is independent of tie-breaking as a multiset.
inline Barcode barcode(const ChainData& cd, int max_degree, const Field& F) {
    cd.validate();
    size_t n = cd.size();
    std::vector<index_t> order = cd.filtration_order();
    std::vector<index_t> pos(n);
    for (index_t k = 0; k < static_cast<index_t>(n); ++k) pos[static_cast<size_t>(order[k])] = k;

    std::vector<bool> paired_as_row(n, false);
    std::vector<bool> column_zero(n, false);
    Barcode bc;
    int top = cd.max_cell_degree();

    for (int q = top; q >= 1; --q) {
        // Columns of degree q in filtration order.
        std::vector<index_t> cols;
        for (index_t k = 0; k < static_cast<index_t>(n); ++k)
            if (cd.degree[static_cast<size_t>(order[k])] == q) cols.push_back(order[k]);

        std::vector<detail::SparseCol> reduced;  // stored by pivot
        std::vector<index_t> pivot_owner(n, -1); // pivot position -> index into `reduced`

        for (index_t c : cols) {
            if (paired_as_row[static_cast<size_t>(c)]) {
                column_zero[static_cast<size_t>(c)] = true;  // cleared
                continue;
            }
            detail::SparseCol col;
            for (const auto& e : cd.boundary[static_cast<size_t>(c)])
                col.emplace_back(pos[static_cast<size_t>(e.cell)], F.normalize(e.coeff));
            std::sort(col.begin(), col.end());
            while (!col.empty()) {
                index_t piv = col.back().first;
                index_t owner = pivot_owner[static_cast<size_t>(piv)];
                if (owner < 0) break;
                coeff_t lambda =
                    F.neg(F.mul(col.back().second, F.inv(reduced[static_cast<size_t>(owner)].back().second)));
                detail::add_scaled(col, reduced[static_cast<size_t>(owner)], lambda, F);
            }
            if (col.empty()) {
                column_zero[static_cast<size_t>(c)] = true;
            } else {
                index_t piv = col.back().first;
                index_t row_cell = order[static_cast<size_t>(piv)];
                pivot_owner[static_cast<size_t>(piv)] = static_cast<index_t>(reduced.size());
                reduced.push_back(std::move(col));
                paired_as_row[static_cast<size_t>(row_cell)] = true;
                birth_t b = cd.birth[static_cast<size_t>(row_cell)];
                birth_t d = cd.birth[static_cast<size_t>(c)];
                if (b != d && q - 1 <= max_degree) bc.at(static_cast<size_t>(q - 1)).push_back({b, d});
            }
        }
    }
    for (size_t c = 0; c < n; ++c) {
        int q = cd.degree[c];
        bool cycle = (q == 0) || column_zero[c];
        if (cycle && !paired_as_row[c] && q <= max_degree)
            bc.at(static_cast<size_t>(q)).push_back({cd.birth[c], kInfDeath});
    }
    bc.normalize();
    return bc;
}

inline Barcode barcode(const FilteredComplex& x, int max_degree, const Field& F) {
    return barcode(chain_data(x), max_degree, F);
}

// A graded k[t]-module presented concretely: vector spaces over a window of
// consecutive slices with transition matrices for the t-action.  The module
// is zero before the window and constant (identity maps) after it.
struct PersistenceTower {
    birth_t j_min = 0;
    birth_t j_max = -1;
    std::vector<index_t> dims;  // size j_max - j_min + 1 (empty allowed)
    std::vector<Mat> maps;      // maps[k]: slice j_min+k -> j_min+k+1
    std::vector<Mat> reps;      // optional: ambient representatives per slice
    coeff_t prime = 2;

    size_t slices() const { return dims.size(); }

    index_t dim_at(birth_t j) const {
        if (dims.empty() || j < j_min) return 0;
        if (j > j_max) return dims.back();
        return dims[static_cast<size_t>(j - j_min)];
    }

    bool is_zero() const {
        for (index_t d : dims)
            if (d != 0) return false;
        return true;
    }

    void check_shapes() const {
        if (!dims.empty() && maps.size() + 1 != dims.size())
            throw std::invalid_argument("tower must have one transition map per adjacent slice pair");
        for (size_t k = 0; k < maps.size(); ++k)
            if (maps[k].rows() != dims[k + 1] || maps[k].cols() != dims[k])
                throw std::invalid_argument("tower map shape mismatch at slice offset " +
                                            std::to_string(k));
    }
};

// Ranks of all composite maps V_a -> V_b, then inclusion–exclusion for the
// interval multiplicities.  Slices before the window count as rank 0; the
// stabilized contract makes r(a, j_max) the rank "at infinity".
inline DegreeBarcode barcode_of_tower(const PersistenceTower& t) {
    t.check_shapes();
    DegreeBarcode out;
    if (t.dims.empty()) return out;
    Field F(t.prime);
    size_t S = t.slices();
    // r[a][b] = rank of composite V_{j_min+a} -> V_{j_min+b}, a <= b.
    std::vector<std::vector<index_t>> r(S, std::vector<index_t>(S, 0));
    for (size_t a = 0; a < S; ++a) {
        Mat m = Mat::identity(t.dims[a]);
        r[a][a] = t.dims[a];
        for (size_t b = a + 1; b < S; ++b) {
            m = matmul(t.maps[b - 1], m, F);
            r[a][b] = rank(m, F);
        }
    }
    auto rk = [&](int64_t a, int64_t b) -> index_t {
        if (a < 0) return 0;
        return r[static_cast<size_t>(a)][static_cast<size_t>(b)];
    };
    int64_t last = static_cast<int64_t>(S) - 1;
    for (int64_t a = 0; a <= last; ++a) {
        for (int64_t b = a + 1; b <= last; ++b) {
            index_t mult = rk(a, b - 1) - rk(a - 1, b - 1) - rk(a, b) + rk(a - 1, b);
            for (index_t m = 0; m < mult; ++m)
                out.push_back({t.j_min + a, t.j_min + b});
        }
        index_t ess = rk(a, last) - rk(a - 1, last);
        for (index_t m = 0; m < ess; ++m) out.push_back({t.j_min + a, kInfDeath});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Generic subquotient tower: per slice j a numerator span N_j and denominator
// span D_j inside a slice space W_j, with transitions U_j: W_j -> W_{j+1}
// carrying N into N and D into D.  Produces span(N_j)/span(D_j + N∩...) --
// precisely, (span N_j + span D_j)/span D_j -- with induced maps, storing a
// representative basis per slice.
struct SliceFamily {
    std::vector<Mat> numerator;  // generators, need not be independent
    std::vector<Mat> denominator;
    std::vector<Mat> transitions;  // size slices-1, or empty for identity throughout
    std::vector<Mat> denom_basis;  // output: reduced denominator basis per slice
};

inline PersistenceTower quotient_tower(SliceFamily& fam, birth_t j_min, coeff_t prime) {
    Field F(prime);
    size_t S = fam.numerator.size();
    PersistenceTower t;
    t.prime = prime;
    t.j_min = j_min;
    t.j_max = j_min + static_cast<birth_t>(S) - 1;
    fam.denom_basis.assign(S, Mat());
    std::vector<Mat> reps(S);
    for (size_t k = 0; k < S; ++k) {
        const Mat& num = fam.numerator[k];
        const Mat& den = fam.denominator[k];
        Mat den_basis = column_space_basis(den, F);
        Mat all = hstack(den_basis, num);
        std::vector<index_t> indep = independent_cols(all, F);
        std::vector<index_t> added;
        for (index_t c : indep)
            if (c >= den_basis.cols()) added.push_back(c);
        reps[k] = all.select_cols(added);
        fam.denom_basis[k] = den_basis;
        t.dims.push_back(static_cast<index_t>(added.size()));
    }
    for (size_t k = 0; k + 1 < S; ++k) {
        // Express U_k * rep in the next slice's (reps | denominator) frame.
        Mat moved = reps[k];
        if (!fam.transitions.empty()) moved = matmul(fam.transitions[k], reps[k], F);
        Mat frame = hstack(reps[k + 1], fam.denom_basis[k + 1]);
        Mat x;
        if (frame.cols() == 0) {
            if (rank(moved, F) != 0)
                throw std::logic_error("quotient tower: numerator not carried into next slice");
            x = Mat(0, moved.cols());
        } else if (!solve(frame, moved, F, x)) {
            throw std::logic_error("quotient tower: numerator not carried into next slice");
        }
        Mat comp(t.dims[k + 1], t.dims[k]);
        for (index_t i = 0; i < comp.rows(); ++i)
            for (index_t j = 0; j < comp.cols(); ++j) comp(i, j) = x(i, j);
        t.maps.push_back(std::move(comp));
    }
    t.reps = std::move(reps);
    t.check_shapes();
    return t;
}

// Slice-wise homology tower H_q of a filtered chain complex: cycle spaces
// modulo boundary spaces per slice, transitions induced by inclusion.
// Window is [min birth - 1, max birth + 1] so the tower starts at zero and
// has stabilized by its last slice.
inline PersistenceTower tower_homology(const ChainData& cd, int q, const Field& F) {
    cd.validate();
    std::vector<index_t> cells_q, cells_q1;
    for (index_t i = 0; i < static_cast<index_t>(cd.size()); ++i) {
        if (cd.degree[static_cast<size_t>(i)] == q) cells_q.push_back(i);
        if (cd.degree[static_cast<size_t>(i)] == q + 1) cells_q1.push_back(i);
    }
    std::vector<index_t> rows;  // degree q-1 cells
    for (index_t i = 0; i < static_cast<index_t>(cd.size()); ++i)
        if (cd.degree[static_cast<size_t>(i)] == q - 1) rows.push_back(i);
    std::vector<index_t> row_pos(cd.size(), -1);
    for (index_t k = 0; k < static_cast<index_t>(rows.size()); ++k)
        row_pos[static_cast<size_t>(rows[k])] = k;
    std::vector<index_t> q_pos(cd.size(), -1);
    for (index_t k = 0; k < static_cast<index_t>(cells_q.size()); ++k)
        q_pos[static_cast<size_t>(cells_q[k])] = k;

    index_t nq = static_cast<index_t>(cells_q.size());
    Mat bd_q(static_cast<index_t>(rows.size()), nq);           // C_q -> C_{q-1}
    Mat bd_q1(nq, static_cast<index_t>(cells_q1.size()));      // C_{q+1} -> C_q
    for (index_t c = 0; c < nq; ++c)
        for (const auto& e : cd.boundary[static_cast<size_t>(cells_q[c])])
            bd_q(row_pos[static_cast<size_t>(e.cell)], c) = F.normalize(e.coeff);
    for (index_t c = 0; c < static_cast<index_t>(cells_q1.size()); ++c)
        for (const auto& e : cd.boundary[static_cast<size_t>(cells_q1[c])])
            bd_q1(q_pos[static_cast<size_t>(e.cell)], c) = F.normalize(e.coeff);

    birth_t lo = cd.size() ? cd.min_birth() - 1 : 0;
    birth_t hi = cd.size() ? cd.max_birth() + 1 : 0;
    size_t S = static_cast<size_t>(hi - lo + 1);

    SliceFamily fam;
    fam.numerator.resize(S);
    fam.denominator.resize(S);
    for (size_t k = 0; k < S; ++k) {
        birth_t j = lo + static_cast<birth_t>(k);
        std::vector<index_t> live_q, live_q1;
        for (index_t c = 0; c < nq; ++c)
            if (cd.birth[static_cast<size_t>(cells_q[c])] <= j) live_q.push_back(c);
        for (index_t c = 0; c < static_cast<index_t>(cells_q1.size()); ++c)
            if (cd.birth[static_cast<size_t>(cells_q1[c])] <= j) live_q1.push_back(c);
        // Cycles: kernel of the boundary restricted to live columns, embedded
        // back into full C_q coordinates.
        Mat restricted = bd_q.select_cols(live_q);
        Mat ker = kernel_basis(restricted, F);
        Mat cycles(nq, ker.cols());
        for (index_t jj = 0; jj < ker.cols(); ++jj)
            for (index_t ii = 0; ii < static_cast<index_t>(live_q.size()); ++ii)
                cycles(live_q[static_cast<size_t>(ii)], jj) = ker(ii, jj);
        fam.numerator[k] = std::move(cycles);
        fam.denominator[k] = bd_q1.select_cols(live_q1);
    }
    return quotient_tower(fam, lo, F.p);
}

inline PersistenceTower tower_homology(const FilteredComplex& x, int q, const Field& F) {
    return tower_homology(chain_data(x), q, F);
}

// Full barcode through the tower pipeline (oracle cross-check target).
inline Barcode barcode_via_towers(const FilteredComplex& x, int max_degree, const Field& F) {
    Barcode bc;
    ChainData cd = chain_data(x);
    for (int q = 0; q <= max_degree; ++q) bc.at(static_cast<size_t>(q)) = barcode_of_tower(tower_homology(cd, q, F));
    bc.normalize();
    return bc;
}

}  // namespace mvnerve

#endif

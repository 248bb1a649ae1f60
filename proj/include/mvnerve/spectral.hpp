// Double complex of a filtered cover and its column-filtration spectral
// sequence, computed exactly.
//
// Cells are pairs (simplex, index set) with the simplex inside the
// intersection of the named cover members; the total differential combines
// the simplex boundary (sign-twisted per column) with the index-set
// boundary.  Pages are never obtained by iterated homology: each E^r cell
// is presented directly as a subquotient of the total complex via
//   Z^s_p(n, j) = { x in F_p C_n, born by j : Dx in F_{p-s} C_{n-1} },
//   E^r_{p,q} = Z^r_p / (Z^{r-1}_{p-1} + D Z^{r-1}_{p+r-1}),
// which makes every page a concrete tower with chain-level representatives
// and lets the differentials be solved (and verified) in those frames.  The
// iterated-homology description is enforced as a tested invariant instead.

#ifndef MVNERVE_SPECTRAL_HPP
#define MVNERVE_SPECTRAL_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "mvnerve/complex.hpp"
#include "mvnerve/fp.hpp"
#include "mvnerve/nerve.hpp"
#include "mvnerve/persistence.hpp"
#include "mvnerve/tower.hpp"

namespace mvnerve {

struct DoubleCell {
    int subset;            // index into DoubleComplex::subsets()
    index_t ambient_cell;  // simplex id in the ambient complex
    birth_t birth;         // max of the member births over the index set
    int p;                 // |index set| - 1
    int q;                 // simplex dimension
};

class DoubleComplex {
  public:
    // Always builds over every nonempty intersection: the exactness of the
    // total complex (and hence everything downstream) needs all of them.
    static DoubleComplex build(const FilteredCover& cover) {
        DoubleComplex dc(cover);
        dc.subsets_ = nonempty_index_sets(cover);
        const FilteredComplex& ambient = cover.ambient();
        for (int s = 0; s < static_cast<int>(dc.subsets_.size()); ++s) {
            dc.subset_index_[dc.subsets_[s]] = s;
            FilteredComplex u = cover.intersection(dc.subsets_[s]);
            for (const auto& uc : u.cells()) {
                DoubleCell cell;
                cell.subset = s;
                cell.ambient_cell = *ambient.id_of(uc.vertices);
                cell.birth = uc.birth;
                cell.p = static_cast<int>(dc.subsets_[s].size()) - 1;
                cell.q = static_cast<int>(uc.vertices.size()) - 1;
                dc.cell_index_[{cell.subset, cell.ambient_cell}] =
                    static_cast<index_t>(dc.cells_.size());
                dc.cells_.push_back(std::move(cell));
            }
        }
        if (dc.cells_.empty()) throw std::invalid_argument("double complex of an empty cover");
        dc.birth_min_ = dc.cells_.front().birth;
        dc.birth_max_ = dc.cells_.front().birth;
        for (const auto& c : dc.cells_) {
            dc.max_p_ = std::max(dc.max_p_, c.p);
            dc.max_q_ = std::max(dc.max_q_, c.q);
            dc.birth_min_ = std::min(dc.birth_min_, c.birth);
            dc.birth_max_ = std::max(dc.birth_max_, c.birth);
        }
        dc.build_boundary();
        return dc;
    }

    const FilteredCover& cover() const { return cover_; }
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }
    const std::vector<DoubleCell>& cells() const { return cells_; }
    const std::vector<std::vector<ChainData::Entry>>& boundary() const { return boundary_; }
    index_t size() const { return static_cast<index_t>(cells_.size()); }
    int max_p() const { return max_p_; }
    int max_q() const { return max_q_; }
    birth_t birth_min() const { return birth_min_; }
    birth_t birth_max() const { return birth_max_; }

    index_t cell_index(int subset, index_t ambient_cell) const {
        auto it = cell_index_.find({subset, ambient_cell});
        return it == cell_index_.end() ? index_t{-1} : it->second;
    }

    ChainData to_chain_data() const {
        ChainData cd;
        cd.birth.reserve(cells_.size());
        cd.degree.reserve(cells_.size());
        for (const auto& c : cells_) {
            cd.birth.push_back(c.birth);
            cd.degree.push_back(c.p + c.q);
        }
        cd.boundary = boundary_;
        cd.validate();
        return cd;
    }

  private:
    explicit DoubleComplex(FilteredCover cover) : cover_(std::move(cover)) {}

    void build_boundary() {
        const FilteredComplex& ambient = cover_.ambient();
        Simplex face;
        boundary_.resize(cells_.size());
        for (index_t id = 0; id < size(); ++id) {
            const DoubleCell& c = cells_[id];
            const Simplex& sigma = ambient.cell(c.ambient_cell).vertices;
            std::vector<ChainData::Entry>& col = boundary_[id];
            // Simplex boundary, twisted by the column parity so the two
            // differentials anticommute and D squares to zero.
            coeff_t twist = (c.p % 2 == 0) ? 1 : -1;
            for (size_t k = 0; k < sigma.size() && sigma.size() > 1; ++k) {
                face.clear();
                for (size_t t = 0; t < sigma.size(); ++t)
                    if (t != k) face.push_back(sigma[t]);
                index_t tgt = cell_index(c.subset, *ambient.id_of(face));
                if (tgt < 0) throw std::logic_error("intersection not closed under faces");
                coeff_t sign = (k % 2 == 0) ? twist : -twist;
                col.push_back({tgt, sign});
            }
            // Index-set boundary: drop one cover index (only when two or
            // more remain); the simplex survives into the larger
            // intersection.
            const std::vector<int>& I = subsets_[c.subset];
            if (I.size() > 1) {
                std::vector<int> J(I.size() - 1);
                for (size_t l = 0; l < I.size(); ++l) {
                    size_t w = 0;
                    for (size_t t = 0; t < I.size(); ++t)
                        if (t != l) J[w++] = I[t];
                    auto it = subset_index_.find(J);
                    if (it == subset_index_.end())
                        throw std::logic_error("index sets not closed under subsets");
                    index_t tgt = cell_index(it->second, c.ambient_cell);
                    if (tgt < 0) throw std::logic_error("simplex missing from larger intersection");
                    coeff_t sign = (l % 2 == 0) ? 1 : -1;
                    col.push_back({tgt, sign});
                }
            }
            std::sort(col.begin(), col.end(),
                      [](const ChainData::Entry& a, const ChainData::Entry& b) { return a.cell < b.cell; });
        }
    }

    FilteredCover cover_;
    std::vector<std::vector<int>> subsets_;
    std::map<std::vector<int>, int> subset_index_;
    std::vector<DoubleCell> cells_;
    std::map<std::pair<int, index_t>, index_t> cell_index_;
    std::vector<std::vector<ChainData::Entry>> boundary_;
    int max_p_ = 0, max_q_ = 0;
    birth_t birth_min_ = 0, birth_max_ = 0;
};

// Barcode of the total complex, by the same clearing reduction used for
// plain filtered complexes.
inline Barcode total_barcode(const DoubleComplex& dc, int max_degree, const Field& F) {
    return barcode(dc.to_chain_data(), max_degree, F);
}

struct PageCell {
    int p = 0, q = 0;
    PersistenceTower tower;        // with chain-level representatives per slice
    std::vector<Mat> denom_basis;  // per-slice basis of the divided-out span
    DegreeBarcode bars;
};

struct SpectralPage {
    int r = 0;
    birth_t j_min = 0, j_max = 0;
    std::map<std::pair<int, int>, PageCell> cells;
    // Differentials (p, q) -> (p - r, q + r - 1), keyed by source.
    std::map<std::pair<int, int>, TowerMorphism> differentials;

    const PageCell* cell(int p, int q) const {
        auto it = cells.find({p, q});
        return it == cells.end() ? nullptr : &it->second;
    }
    DegreeBarcode bars_at(int p, int q) const {
        const PageCell* c = cell(p, q);
        return c ? c->bars : DegreeBarcode{};
    }
    // Bottom row as a degree-indexed barcode: degree p holds cell (p, 0).
    Barcode bottom_row() const {
        Barcode bc;
        for (const auto& [key, c] : cells)
            if (key.second == 0 && !c.bars.empty()) bc.at(key.first) = c.bars;
        bc.normalize();
        return bc;
    }
    bool no_nonzero_differential() const {
        for (const auto& [key, d] : differentials)
            for (const auto& m : d.comp)
                for (index_t i = 0; i < m.rows(); ++i)
                    for (index_t j = 0; j < m.cols(); ++j)
                        if (m(i, j) != 0) return false;
        return true;
    }
};

class SpectralSequence {
  public:
    SpectralSequence(DoubleComplex dc, const Field& F) : dc_(std::move(dc)), F_(F) {
        int n_max = dc_.max_p() + dc_.max_q();
        deg_cells_.resize(n_max + 1);
        local_.assign(dc_.size(), -1);
        for (index_t id = 0; id < dc_.size(); ++id) {
            int n = dc_.cells()[id].p + dc_.cells()[id].q;
            local_[id] = static_cast<index_t>(deg_cells_[n].size());
            deg_cells_[n].push_back(id);
        }
        dmat_.resize(n_max + 1);
        for (int n = 0; n <= n_max; ++n) {
            index_t rows = n == 0 ? 0 : static_cast<index_t>(deg_cells_[n - 1].size());
            Mat d(rows, static_cast<index_t>(deg_cells_[n].size()));
            for (index_t c = 0; c < d.cols(); ++c)
                for (const auto& e : dc_.boundary()[deg_cells_[n][c]])
                    d(local_[e.cell], c) = F_.normalize(e.coeff);
            dmat_[n] = std::move(d);
        }
    }

    const DoubleComplex& dc() const { return dc_; }
    birth_t j_min() const { return dc_.birth_min(); }
    birth_t j_max() const { return dc_.birth_max() + 1; }

    // First page index at which nothing can move any more.
    int stable_r() const { return std::min(dc_.max_p(), dc_.cover().ambient().dim()) + 2; }

    SpectralPage page(int r) {
        if (r < 0) throw std::invalid_argument("page index must be nonnegative");
        SpectralPage out;
        out.r = r;
        out.j_min = j_min();
        out.j_max = j_max();
        // Cells with support, plus the targets their differentials may hit.
        set_keys_.clear();
        for (const auto& c : dc_.cells()) set_keys_.insert({c.p, c.q});
        std::vector<std::pair<int, int>> keys(set_keys_.begin(), set_keys_.end());
        for (const auto& [p, q] : keys)
            if (p - r >= 0 && q + r - 1 >= 0) set_keys_.insert({p - r, q + r - 1});
        for (const auto& key : set_keys_) out.cells.emplace(key, make_cell(r, key.first, key.second));
        for (const auto& [key, src] : out.cells) {
            auto [p, q] = key;
            std::pair<int, int> tkey{p - r, q + r - 1};
            auto tgt = out.cells.find(tkey);
            if (tgt == out.cells.end()) continue;
            out.differentials.emplace(key, make_differential(src, tgt->second));
        }
        return out;
    }

    SpectralPage infinity() { return page(stable_r()); }

    // Independent oracle for the abutment: for each column p the tower
    //   (cycles in F_p + boundaries) / (cycles in F_{p-1} + boundaries)
    // of total degree n, which must match the stable page cell (p, n - p).
    std::vector<PersistenceTower> column_quotients(int n) {
        if (n < 0 || n >= static_cast<int>(deg_cells_.size()))
            throw std::invalid_argument("column_quotients: no cells in this degree");
        size_t S = static_cast<size_t>(j_max() - j_min()) + 1;
        index_t m = dmat_[n].cols();
        bool has_up = n + 1 < static_cast<int>(deg_cells_.size());
        std::vector<PersistenceTower> out;
        for (int p = 0; p <= std::min(n, dc_.max_p()); ++p) {
            SliceFamily fam;
            fam.numerator.resize(S);
            fam.denominator.resize(S);
            for (size_t k = 0; k < S; ++k) {
                birth_t j = j_min() + static_cast<birth_t>(k);
                Mat bnd(m, 0);
                if (has_up) {
                    std::vector<index_t> live;
                    for (index_t c = 0; c < dmat_[n + 1].cols(); ++c)
                        if (dc_.cells()[deg_cells_[n + 1][c]].birth <= j) live.push_back(c);
                    bnd = dmat_[n + 1].select_cols(live);
                }
                fam.numerator[k] = hstack(cycles(n, p, j), bnd);
                fam.denominator[k] = hstack(cycles(n, p - 1, j), bnd);
            }
            out.push_back(quotient_tower(fam, j_min(), F_.p));
        }
        return out;
    }

  private:
    // Kernel of D on the live columns of filtration level <= p (s = big).
    Mat cycles(int n, int p, birth_t j) { return z_basis(n + 2, p, n, j); }

    // Basis of Z^s_p in total degree n at slice j, in the local coordinates
    // of that degree.  Computed once per (s, p, n) over all births, then cut
    // down to each slice by forcing the not-yet-born coordinates to zero.
    const Mat& z_basis(int s, int p, int n, birth_t j) {
        auto key = std::make_tuple(s, p, n, j);
        auto it = z_slice_.find(key);
        if (it != z_slice_.end()) return it->second;
        const Mat& full = z_full(s, p, n);
        std::vector<index_t> dead;
        for (index_t c = 0; c < dmat_[n].cols(); ++c)
            if (dc_.cells()[deg_cells_[n][c]].birth > j) dead.push_back(c);
        Mat restricted;
        if (dead.empty()) {
            restricted = full;
        } else {
            Mat rows(static_cast<index_t>(dead.size()), full.cols());
            for (index_t i = 0; i < rows.rows(); ++i)
                for (index_t c = 0; c < full.cols(); ++c) rows(i, c) = full(dead[i], c);
            restricted = matmul(full, kernel_basis(rows, F_), F_);
        }
        return z_slice_.emplace(key, std::move(restricted)).first->second;
    }

    const Mat& z_full(int s, int p, int n) {
        auto key = std::make_tuple(s, p, n);
        auto it = z_full_.find(key);
        if (it != z_full_.end()) return it->second;
        index_t m = dmat_[n].cols();
        std::vector<index_t> cols;
        for (index_t c = 0; c < m; ++c)
            if (dc_.cells()[deg_cells_[n][c]].p <= p) cols.push_back(c);
        // Constrained rows: target cells above filtration level p - s.
        std::vector<index_t> rows;
        for (index_t rw = 0; rw < dmat_[n].rows(); ++rw)
            if (dc_.cells()[deg_cells_[n - 1][rw]].p > p - s) rows.push_back(rw);
        Mat a(static_cast<index_t>(rows.size()), static_cast<index_t>(cols.size()));
        for (index_t i = 0; i < a.rows(); ++i)
            for (index_t c = 0; c < a.cols(); ++c) a(i, c) = dmat_[n](rows[i], cols[c]);
        Mat small = kernel_basis(a, F_);
        Mat embedded(m, small.cols());
        for (index_t c = 0; c < static_cast<index_t>(cols.size()); ++c)
            for (index_t v = 0; v < small.cols(); ++v) embedded(cols[c], v) = small(c, v);
        return z_full_.emplace(key, std::move(embedded)).first->second;
    }

    PageCell make_cell(int r, int p, int q) {
        int n = p + q;
        size_t S = static_cast<size_t>(j_max() - j_min()) + 1;
        bool in_range = n >= 0 && n < static_cast<int>(deg_cells_.size());
        PageCell cell;
        cell.p = p;
        cell.q = q;
        SliceFamily fam;
        fam.numerator.resize(S);
        fam.denominator.resize(S);
        index_t m = in_range ? dmat_[n].cols() : 0;
        bool has_up = in_range && n + 1 < static_cast<int>(deg_cells_.size());
        for (size_t k = 0; k < S; ++k) {
            birth_t j = j_min() + static_cast<birth_t>(k);
            if (!in_range) {
                fam.numerator[k] = Mat(0, 0);
                fam.denominator[k] = Mat(0, 0);
                continue;
            }
            Mat hit(m, 0);
            if (has_up) {
                const Mat& src = z_basis(r - 1, p + r - 1, n + 1, j);
                hit = matmul(dmat_[n + 1], src, F_);
            }
            fam.numerator[k] = z_basis(r, p, n, j);
            fam.denominator[k] = hstack(z_basis(r - 1, p - 1, n, j), hit);
        }
        cell.tower = quotient_tower(fam, j_min(), F_.p);
        cell.denom_basis = std::move(fam.denom_basis);
        cell.bars = barcode_of_tower(cell.tower);
        return cell;
    }

    TowerMorphism make_differential(const PageCell& src, const PageCell& tgt) {
        int n = src.p + src.q;
        size_t S = src.tower.slices();
        std::vector<Mat> comps(S);
        for (size_t k = 0; k < S; ++k) {
            index_t sd = src.tower.dims[k], td = tgt.tower.dims[k];
            Mat frame = hstack(tgt.tower.reps[k], tgt.denom_basis[k]);
            Mat images = matmul(dmat_[n], src.tower.reps[k], F_);
            Mat x;
            if (!solve(frame, images, F_, x))
                throw std::logic_error("page differential leaves the target cell");
            Mat comp(td, sd);
            for (index_t i = 0; i < td; ++i)
                for (index_t c = 0; c < sd; ++c) comp(i, c) = x(i, c);
            comps[k] = std::move(comp);
        }
        return TowerMorphism(src.tower, tgt.tower, std::move(comps));
    }

    DoubleComplex dc_;
    Field F_;
    std::vector<std::vector<index_t>> deg_cells_;
    std::vector<index_t> local_;
    std::vector<Mat> dmat_;
    std::map<std::tuple<int, int, int>, Mat> z_full_;
    std::map<std::tuple<int, int, int, birth_t>, Mat> z_slice_;
    std::set<std::pair<int, int>> set_keys_;
};

}  // namespace mvnerve

#endif

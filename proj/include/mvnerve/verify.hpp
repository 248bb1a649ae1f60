// Empirical certification: measures the barcode distance between a covered
// complex and its nerve and checks it against the proven bounds, all in
// exact doubled-integer arithmetic.
//
// For a cover of quality eps (doubled value eps2) with nerve dimension D,
// ambient dimension Delta and Q = min(D, Delta), the headline claim is
//   d(Dgm X, Dgm Nerve) <= 2 (Q + 1) eps,
// with the degree-sensitive refinement d(Dgm_q) <= 2 (q + 1) eps and the
// cruder consequence d <= (4 D + 2) eps.  With pages enabled the chain of
// intermediate comparisons is measured too: nerve vs the first derived
// page's bottom row (<= 2 eps), that page vs the stable page (<= 2 (D-1)
// eps, equal when D <= 1), and the stable page vs the ambient barcode
// degree-wise (<= min(2d | d <= D else 2(D+1), 2 Delta) eps).

#ifndef MVNERVE_VERIFY_HPP
#define MVNERVE_VERIFY_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "mvnerve/generators.hpp"
#include "mvnerve/matching.hpp"
#include "mvnerve/nerve.hpp"
#include "mvnerve/spectral.hpp"

namespace mvnerve {

struct CertifyOptions {
    coeff_t prime = 2;
    bool with_pages = false;  // also measure the page-by-page route
};

struct DegreeVerdict {
    int degree = 0;
    int64_t distance2 = 0;      // doubled bottleneck distance in this degree
    int64_t main_bound2 = 0;    // 2 (Q+1) * eps2
    int64_t degree_bound2 = 0;  // 2 (degree+1) * eps2
    int64_t easy_bound2 = 0;    // (4 D + 2) * eps2
    bool within = false;        // distance2 <= all three
};

struct StepwiseReport {
    bool computed = false;
    int64_t nerve_vs_page2_2 = 0;   // nerve vs first derived bottom row
    int64_t page2_bound2 = 0;       // 2 * eps2
    int64_t page2_vs_stable2 = 0;   // first derived vs stable bottom row
    int64_t stable_bound2 = 0;      // 2 (D-1) * eps2 (0 when D <= 1: equality)
    std::vector<DegreeVerdict> stable_vs_ambient;  // degree_bound2 reused for the min(...) bound
    bool pass = false;
};

struct BoundReport {
    int64_t eps2 = 0;  // doubled cover quality (kInfCost when unbounded)
    int nerve_dim = -1;
    int ambient_dim = -1;
    int degree_cap = -1;  // Q
    Barcode ambient_barcode;
    Barcode nerve_barcode;
    AcyclicityReport quality;
    std::vector<DegreeVerdict> degrees;
    StepwiseReport steps;
    std::string verdict;  // "pass" | "fail" | "vacuous"

    int64_t worst_distance2() const {
        int64_t w = 0;
        for (const auto& d : degrees) w = std::max(w, d.distance2);
        return w;
    }
};

namespace detail {

// Saturating multiply so infinite quality gives infinite (always satisfied)
// bounds.
inline int64_t bound_times(int64_t factor, int64_t eps2) {
    if (eps2 == kInfCost) return kInfCost;
    return factor * eps2;
}

}  // namespace detail

inline BoundReport certify(const FilteredCover& cover, const CertifyOptions& opt = {}) {
    Field F(opt.prime);
    BoundReport rep;
    rep.quality = acyclicity(cover, F);
    rep.eps2 = rep.quality.eps2;
    rep.nerve_dim = rep.quality.nerve_dim;
    rep.ambient_dim = rep.quality.ambient_dim;
    rep.degree_cap = rep.quality.degree_cap();

    rep.ambient_barcode = barcode(cover.ambient(), cover.ambient().dim(), F);
    NerveComplex nv = nerve(cover);
    rep.nerve_barcode = barcode(nv.complex, nv.dim(), F);

    int top = std::max(rep.nerve_dim, rep.ambient_dim);
    bool all_within = true;
    for (int d = 0; d <= top; ++d) {
        DegreeVerdict v;
        v.degree = d;
        v.distance2 = bottleneck(rep.ambient_barcode.at(d), rep.nerve_barcode.at(d));
        v.main_bound2 = detail::bound_times(2 * (rep.degree_cap + 1), rep.eps2);
        v.degree_bound2 = detail::bound_times(2 * (d + 1), rep.eps2);
        v.easy_bound2 = detail::bound_times(4 * rep.nerve_dim + 2, rep.eps2);
        v.within = v.distance2 <= v.main_bound2 && v.distance2 <= v.degree_bound2 &&
                   v.distance2 <= v.easy_bound2;
        all_within = all_within && v.within;
        rep.degrees.push_back(v);
    }

    if (opt.with_pages) {
        SpectralSequence ss(DoubleComplex::build(cover), F);
        Barcode page2 = ss.page(2).bottom_row();
        Barcode stable = ss.infinity().bottom_row();
        StepwiseReport& st = rep.steps;
        st.computed = true;
        st.nerve_vs_page2_2 = bottleneck(rep.nerve_barcode, page2);
        st.page2_bound2 = detail::bound_times(2, rep.eps2);
        st.page2_vs_stable2 = bottleneck(page2, stable);
        st.stable_bound2 =
            rep.nerve_dim <= 1 ? 0 : detail::bound_times(2 * (rep.nerve_dim - 1), rep.eps2);
        st.pass = st.nerve_vs_page2_2 <= st.page2_bound2 && st.page2_vs_stable2 <= st.stable_bound2;
        for (int d = 0; d <= top; ++d) {
            DegreeVerdict v;
            v.degree = d;
            v.distance2 = bottleneck(rep.ambient_barcode.at(d), stable.at(d));
            int64_t factor = d <= rep.nerve_dim ? 2 * d : 2 * (rep.nerve_dim + 1);
            factor = std::min<int64_t>(factor, 2 * rep.ambient_dim);
            v.degree_bound2 = detail::bound_times(factor, rep.eps2);
            v.main_bound2 = v.degree_bound2;
            v.easy_bound2 = v.degree_bound2;
            v.within = v.distance2 <= v.degree_bound2;
            st.pass = st.pass && v.within;
            st.stable_vs_ambient.push_back(v);
        }
    }

    if (rep.eps2 == kInfCost)
        rep.verdict = "vacuous";
    else
        rep.verdict = all_within ? "pass" : "fail";
    return rep;
}

// The three exact equalities realized by the hand-built families: the
// boundary-of-a-simplex cover attains the nerve-to-first-page gap (doubled
// value 4) and the first-to-stable-page gap (doubled 4 (D - 1)); the
// suspension cover attains the ambient-to-stable gap (doubled 4 D).
struct SharpnessReport {
    int D = 0;
    int64_t sphere_nerve_gap2 = -1;     // expected 4
    int64_t sphere_page_gap2 = -1;      // expected 4 (D - 1)
    int64_t bipyramid_total_gap2 = -1;  // expected 4 D
    bool pass = false;
};

inline SharpnessReport sharpness_suite(int D, coeff_t prime = 2) {
    Field F(prime);
    SharpnessReport rep;
    rep.D = D;
    {
        FilteredCover cover = sphere_example(D);
        NerveComplex nv = nerve(cover);
        Barcode nerve_bc = barcode(nv.complex, nv.dim(), F);
        SpectralSequence ss(DoubleComplex::build(cover), F);
        Barcode page2 = ss.page(2).bottom_row();
        Barcode stable = ss.infinity().bottom_row();
        rep.sphere_nerve_gap2 = bottleneck(page2, nerve_bc);
        rep.sphere_page_gap2 = bottleneck(page2, stable);
    }
    {
        FilteredCover cover = bipyramid_example(D);
        Barcode ambient = barcode(cover.ambient(), cover.ambient().dim(), F);
        SpectralSequence ss(DoubleComplex::build(cover), F);
        Barcode stable = ss.infinity().bottom_row();
        rep.bipyramid_total_gap2 = bottleneck(ambient.at(D), stable.at(D));
    }
    rep.pass = rep.sphere_nerve_gap2 == 4 && rep.sphere_page_gap2 == 4 * (D - 1) &&
               rep.bipyramid_total_gap2 == 4 * D;
    return rep;
}

}  // namespace mvnerve

#endif

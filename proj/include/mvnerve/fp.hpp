// Dense linear algebra over a prime field F_p.
//
// Everything downstream (homology towers, spectral-sequence slices, quotient
// modules) reduces to a handful of exact kernel/solve/extend operations on
// small dense matrices, collected here.  Entries are stored normalized to
// [0, p); the prime is a runtime value so the same code serves F_2 and odd
// primes (signs only matter for the latter).

#ifndef MVNERVE_FP_HPP
#define MVNERVE_FP_HPP

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mvnerve {

using index_t = int32_t;
using coeff_t = int64_t;

// Arithmetic mod a prime, with inverses by extended Euclid.
struct Field {
    coeff_t p;

    explicit Field(coeff_t prime) : p(prime) {
        if (!is_prime(prime))
            throw std::invalid_argument("field characteristic must be prime, got " +
                                        std::to_string(prime));
    }

    static bool is_prime(coeff_t n) {
        if (n < 2) return false;
        for (coeff_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    coeff_t normalize(coeff_t a) const {
        a %= p;
        return a < 0 ? a + p : a;
    }
    coeff_t add(coeff_t a, coeff_t b) const { return (a + b) % p; }
    coeff_t sub(coeff_t a, coeff_t b) const { return normalize(a - b); }
    coeff_t mul(coeff_t a, coeff_t b) const { return (a * b) % p; }
    coeff_t neg(coeff_t a) const { return normalize(-a); }

    coeff_t inv(coeff_t a) const {
        a = normalize(a);
        if (a == 0) throw std::invalid_argument("no inverse of zero in a field");
        coeff_t t = 0, new_t = 1, r = p, new_r = a;
        while (new_r != 0) {
            coeff_t q = r / new_r;
            t -= q * new_t;
            std::swap(t, new_t);
            r -= q * new_r;
            std::swap(r, new_r);
        }
        return normalize(t);
    }
};

// Row-major dense matrix with entries in [0, p).  Columns are the natural
// unit here: bases of subspaces are stored as column collections.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(index_t rows, index_t cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

    static Mat identity(index_t n) {
        Mat m(n, n);
        for (index_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }

    coeff_t& operator()(index_t i, index_t j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }
    coeff_t operator()(index_t i, index_t j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    // Columns `sel` of this matrix, in the given order.
    Mat select_cols(const std::vector<index_t>& sel) const {
        Mat out(rows_, static_cast<index_t>(sel.size()));
        for (index_t j = 0; j < out.cols(); ++j)
            for (index_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, sel[j]);
        return out;
    }

    std::vector<coeff_t> col(index_t j) const {
        std::vector<coeff_t> v(rows_);
        for (index_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_col(index_t j, const std::vector<coeff_t>& v) {
        assert(static_cast<index_t>(v.size()) == rows_);
        for (index_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

private:
    index_t rows_, cols_;
    std::vector<coeff_t> a_;
};

// [A | B] by columns; row counts must agree.
inline Mat hstack(const Mat& a, const Mat& b) {
    assert(a.rows() == b.rows() || a.cols() == 0 || b.cols() == 0);
    index_t rows = a.cols() > 0 ? a.rows() : b.rows();
    Mat out(rows, a.cols() + b.cols());
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < rows; ++i) out(i, j) = a(i, j);
    for (index_t j = 0; j < b.cols(); ++j)
        for (index_t i = 0; i < rows; ++i) out(i, a.cols() + j) = b(i, j);
    return out;
}

inline Mat matmul(const Mat& a, const Mat& b, const Field& F) {
    assert(a.cols() == b.rows());
    Mat out(a.rows(), b.cols());
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t k = 0; k < a.cols(); ++k) {
            coeff_t aik = a(i, k);
            if (aik == 0) continue;
            for (index_t j = 0; j < b.cols(); ++j) {
                coeff_t v = out(i, j) + aik * b(k, j);
                out(i, j) = v % F.p;
            }
        }
    return out;
}

inline std::vector<coeff_t> matvec(const Mat& a, const std::vector<coeff_t>& x, const Field& F) {
    assert(static_cast<index_t>(x.size()) == a.cols());
    std::vector<coeff_t> y(a.rows(), 0);
    for (index_t j = 0; j < a.cols(); ++j) {
        if (x[j] == 0) continue;
        for (index_t i = 0; i < a.rows(); ++i) y[i] = (y[i] + a(i, j) * x[j]) % F.p;
    }
    return y;
}

// In-place reduction of A to reduced row-echelon form.  The same row
// operations are applied to *rhs when given.  Returns the pivot column list.
inline std::vector<index_t> rref(Mat& a, Mat* rhs, const Field& F) {
    std::vector<index_t> pivots;
    index_t r = 0;
    for (index_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        index_t pivot_row = -1;
        for (index_t i = r; i < a.rows(); ++i)
            if (a(i, c) != 0) {
                pivot_row = i;
                break;
            }
        if (pivot_row < 0) continue;
        if (pivot_row != r) {
            for (index_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(pivot_row, j));
            if (rhs)
                for (index_t j = 0; j < rhs->cols(); ++j) std::swap((*rhs)(r, j), (*rhs)(pivot_row, j));
        }
        coeff_t s = F.inv(a(r, c));
        if (s != 1) {
            for (index_t j = 0; j < a.cols(); ++j) a(r, j) = F.mul(a(r, j), s);
            if (rhs)
                for (index_t j = 0; j < rhs->cols(); ++j) (*rhs)(r, j) = F.mul((*rhs)(r, j), s);
        }
        for (index_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            coeff_t f = a(i, c);
            for (index_t j = 0; j < a.cols(); ++j) a(i, j) = F.sub(a(i, j), F.mul(f, a(r, j)));
            if (rhs)
                for (index_t j = 0; j < rhs->cols(); ++j)
                    (*rhs)(i, j) = F.sub((*rhs)(i, j), F.mul(f, (*rhs)(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline index_t rank(Mat a, const Field& F) {
    return static_cast<index_t>(rref(a, nullptr, F).size());
}

// Basis of the null space of A, as columns of the result.
inline Mat kernel_basis(Mat a, const Field& F) {
    index_t n = a.cols();
    std::vector<index_t> pivots = rref(a, nullptr, F);
    std::vector<bool> is_pivot(n, false);
    for (index_t c : pivots) is_pivot[c] = true;
    std::vector<index_t> free_cols;
    for (index_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat ker(n, static_cast<index_t>(free_cols.size()));
    for (index_t k = 0; k < ker.cols(); ++k) {
        index_t fc = free_cols[k];
        ker(fc, k) = 1;
        for (index_t r = 0; r < static_cast<index_t>(pivots.size()); ++r)
            ker(pivots[r], k) = F.neg(a(r, fc));
    }
    return ker;
}

// Solve A X = B for X (any solution).  Returns false when inconsistent.
inline bool solve(Mat a, Mat b, const Field& F, Mat& x) {
    assert(a.rows() == b.rows());
    index_t n = a.cols();
    std::vector<index_t> pivots = rref(a, &b, F);
    index_t r = static_cast<index_t>(pivots.size());
    for (index_t i = r; i < a.rows(); ++i)
        for (index_t j = 0; j < b.cols(); ++j)
            if (b(i, j) != 0) return false;
    x = Mat(n, b.cols());
    for (index_t k = 0; k < r; ++k)
        for (index_t j = 0; j < b.cols(); ++j) x(pivots[k], j) = b(k, j);
    return true;
}

// Indices of a maximal independent subset of A's columns, greedy left to
// right (so columns known independent can be listed first and are kept).
inline std::vector<index_t> independent_cols(Mat a, const Field& F) {
    std::vector<index_t> pivots = rref(a, nullptr, F);
    return pivots;
}

// A basis of the column space of A, using A's own columns.
inline Mat column_space_basis(const Mat& a, const Field& F) {
    return a.select_cols(independent_cols(a, F));
}

// Membership test: does v lie in the column span of A?
inline bool in_span(const Mat& a, const std::vector<coeff_t>& v, const Field& F) {
    Mat b(a.rows(), 1);
    b.set_col(0, v);
    Mat x;
    return solve(a, b, F, x);
}

}  // namespace mvnerve

#endif

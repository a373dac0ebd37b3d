#include "bicx/linalg.hpp"

#include <sstream>

#include "bicx/errors.hpp"

namespace bicx {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

bool Mat::is_zero() const {
    for (const Scalar& s : a_)
        if (!s.is_zero()) return false;
    return true;
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(rows_);
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Mat Mat::conjugate() const {
    Mat c(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) c.at(i, j) = at(i, j).conj();
    return c;
}

Mat Mat::col(int j) const {
    Mat v(rows_, 1);
    for (int i = 0; i < rows_; ++i) v.at(i, 0) = at(i, j);
    return v;
}

void Mat::set_col(int j, const Mat& v) {
    if (v.rows() != rows_ || v.cols() != 1)
        throw dimension_error("set_col: shape mismatch");
    for (int i = 0; i < rows_; ++i) at(i, j) = v.at(i, 0);
}

Mat Mat::hcat(const Mat& other) const {
    if (other.rows_ != rows_)
        throw dimension_error("hcat: row count mismatch");
    Mat m(rows_, cols_ + other.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (int j = 0; j < other.cols_; ++j) m.at(i, cols_ + j) = other.at(i, j);
    }
    return m;
}

Mat Mat::select_cols(const std::vector<int>& js) const {
    Mat m(rows_, int(js.size()));
    for (int j = 0; j < int(js.size()); ++j)
        for (int i = 0; i < rows_; ++i) m.at(i, j) = at(i, js[j]);
    return m;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw dimension_error("matrix addition: shape mismatch");
    Mat m(a.rows_, a.cols_);
    for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = a.a_[k] + b.a_[k];
    return m;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw dimension_error("matrix subtraction: shape mismatch");
    Mat m(a.rows_, a.cols_);
    for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = a.a_[k] - b.a_[k];
    return m;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_)
        throw dimension_error("matrix product: inner dimension mismatch");
    Mat m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                if (b.at(k, j).is_zero()) continue;
                m.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    return m;
}

Mat operator*(const Scalar& s, Mat m) {
    for (Scalar& x : m.a_) x *= s;
    return m;
}

std::string Mat::str() const {
    std::ostringstream out;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) out << ' ';
            out << at(i, j).str();
        }
        out << '\n';
    }
    return out.str();
}

Echelon echelon(const Mat& m) {
    Echelon e{m, {}};
    Mat& a = e.rref;
    int r = 0;
    for (int j = 0; j < a.cols() && r < a.rows(); ++j) {
        int piv = -1;
        for (int i = r; i < a.rows(); ++i)
            if (!a.at(i, j).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        // rows at or below r are zero left of column j, so swaps and
        // eliminations skip that range; zero entries skip the arithmetic
        if (piv != r)
            for (int k = j; k < a.cols(); ++k) std::swap(a.at(piv, k), a.at(r, k));
        if (!a.at(r, j).is_one()) {
            Scalar inv = Scalar(1) / a.at(r, j);
            for (int k = j; k < a.cols(); ++k)
                if (!a.at(r, k).is_zero()) a.at(r, k) *= inv;
        }
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, j).is_zero()) continue;
            Scalar f = a.at(i, j);
            for (int k = j; k < a.cols(); ++k)
                if (!a.at(r, k).is_zero()) a.at(i, k) -= f * a.at(r, k);
        }
        e.pivot_cols.push_back(j);
        ++r;
    }
    return e;
}

int rank(const Mat& m) { return int(echelon(m).pivot_cols.size()); }

Mat kernel_basis(const Mat& m) {
    Echelon e = echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int j : e.pivot_cols) is_pivot[j] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);

    Mat k(m.cols(), int(free_cols.size()));
    for (int t = 0; t < int(free_cols.size()); ++t) {
        int f = free_cols[t];
        k.at(f, t) = Scalar(1);
        for (int r = 0; r < int(e.pivot_cols.size()); ++r)
            k.at(e.pivot_cols[r], t) = -e.rref.at(r, f);
    }
    return k;
}

Mat image_basis(const Mat& m) {
    // Column echelon form of m: echelonize the transpose, transpose back,
    // keeping only the nonzero columns.  Canonical for a given column span.
    Echelon e = echelon(m.transpose());
    Mat t = e.rref.transpose();
    std::vector<int> keep;
    for (int j = 0; j < int(e.pivot_cols.size()); ++j) keep.push_back(j);
    return t.select_cols(keep);
}

std::optional<Mat> solve(const Mat& m, const Mat& b) {
    if (b.rows() != m.rows() || b.cols() != 1)
        throw dimension_error("solve: right-hand side shape mismatch");
    Echelon e = echelon(m.hcat(b));
    for (int j : e.pivot_cols)
        if (j == m.cols()) return std::nullopt;
    Mat x(m.cols(), 1);
    for (int r = 0; r < int(e.pivot_cols.size()); ++r)
        x.at(e.pivot_cols[r], 0) = e.rref.at(r, m.cols());
    return x;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    Echelon e = echelon(m.hcat(Mat::identity(m.rows())));
    if (int(e.pivot_cols.size()) != m.rows()) return std::nullopt;
    for (int j : e.pivot_cols)
        if (j >= m.cols()) return std::nullopt;
    Mat inv(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) inv.at(i, j) = e.rref.at(i, m.cols() + j);
    return inv;
}

Subspace Subspace::span(const Mat& gens) {
    Subspace s(gens.rows());
    s.basis_ = image_basis(gens);
    return s;
}

bool Subspace::contains(const Mat& v) const {
    if (v.rows() != ambient_ || v.cols() != 1)
        throw dimension_error("contains: vector shape mismatch");
    return solve(basis_, v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_)
        throw dimension_error("contains: ambient dimension mismatch");
    if (other.dim() == 0) return true;
    // adjoining the other basis adds no new pivots exactly when it is inside
    return rank(basis_.hcat(other.basis_)) == dim();
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient())
        throw dimension_error("sum: ambient dimension mismatch");
    return Subspace::span(a.basis().hcat(b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient())
        throw dimension_error("intersect: ambient dimension mismatch");
    // x in both spans iff x = A u = B w; kernel of [A | B] yields the pairs
    // (u, -w), and A u runs over the intersection.
    Mat k = kernel_basis(a.basis().hcat(b.basis()));
    Mat u(a.dim(), k.cols());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < k.cols(); ++j) u.at(i, j) = k.at(i, j);
    return Subspace::span(a.basis() * u);
}

Subspace apply(const Mat& f, const Subspace& v) {
    if (f.cols() != v.ambient())
        throw dimension_error("apply: source dimension mismatch");
    return Subspace::span(f * v.basis());
}

Subspace preimage(const Mat& f, const Subspace& v) {
    if (f.rows() != v.ambient())
        throw dimension_error("preimage: target dimension mismatch");
    // f x = V y for some y; kernel of [f | -V], first block of coordinates.
    Mat k = kernel_basis(f.hcat(Scalar(-1) * v.basis()));
    Mat x(f.cols(), k.cols());
    for (int i = 0; i < f.cols(); ++i)
        for (int j = 0; j < k.cols(); ++j) x.at(i, j) = k.at(i, j);
    return Subspace::span(x);
}

int quotient_dim(const Subspace& v, const Subspace& w) {
    if (v.ambient() != w.ambient())
        throw dimension_error("quotient_dim: ambient dimension mismatch");
    if (!v.contains(w))
        throw not_a_subquotient("quotient_dim: denominator is not contained in numerator");
    return v.dim() - w.dim();
}

} // namespace bicx

#ifndef BICX_LINALG_HPP
#define BICX_LINALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "bicx/scalar.hpp"

namespace bicx {

/// Dense matrix over the Gaussian rationals.
///
/// A matrix represents a linear map in the column convention: an r x c
/// matrix maps a c-dimensional source into an r-dimensional target.
/// Zero rows or columns are legal; such matrices carry no entries but
/// still compose with the expected shape rules.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool is_zero() const;
    bool is_identity() const;

    Mat transpose() const;
    Mat conjugate() const;

    Mat col(int j) const;
    void set_col(int j, const Mat& v);
    /// Concatenates columns: [this | other].
    Mat hcat(const Mat& other) const;
    /// Keeps the listed columns, in order.
    Mat select_cols(const std::vector<int>& js) const;

    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator*(const Scalar& s, Mat m);
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    std::string str() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Scalar> a_;
};

/// Row-reduced echelon form together with the pivot columns.
struct Echelon {
    Mat rref;
    std::vector<int> pivot_cols;
};

Echelon echelon(const Mat& m);

int rank(const Mat& m);

/// Columns span ker m; the basis is in column echelon form.
Mat kernel_basis(const Mat& m);

/// Columns span im m; the basis is in column echelon form.
Mat image_basis(const Mat& m);

/// One solution x of m x = b, if any.
std::optional<Mat> solve(const Mat& m, const Mat& b);

/// Inverse of a square matrix, if it exists.
std::optional<Mat> inverse(const Mat& m);

/// Subspace of a fixed ambient coordinate space, stored as a column
/// echelon basis.  The representation is canonical, so equal subspaces
/// compare equal as objects.
class Subspace {
public:
    explicit Subspace(int ambient) : ambient_(ambient), basis_(ambient, 0) {}

    /// Span of the columns of gens (need not be independent).
    static Subspace span(const Mat& gens);
    static Subspace zero(int ambient) { return Subspace(ambient); }
    static Subspace full(int ambient) { return span(Mat::identity(ambient)); }

    int ambient() const { return ambient_; }
    int dim() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }

    bool contains(const Mat& v) const;
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    int ambient_;
    Mat basis_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// Image of v under f:  f(v) inside the target of f.
Subspace apply(const Mat& f, const Subspace& v);

/// Preimage f^{-1}(v) inside the source of f.
Subspace preimage(const Mat& f, const Subspace& v);

/// dim(v / w); requires w contained in v.
int quotient_dim(const Subspace& v, const Subspace& w);

} // namespace bicx

#endif

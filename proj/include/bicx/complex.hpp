#ifndef BICX_COMPLEX_HPP
#define BICX_COMPLEX_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "bicx/linalg.hpp"

namespace bicx {

struct Bidegree {
    int p = 0;
    int q = 0;
    auto operator<=>(const Bidegree&) const = default;
    int total() const { return p + q; }
    std::string str() const {
        return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
};

/// Direction of a differential: H raises p, V raises q.
enum class Dir { H, V };

inline char dir_char(Dir d) { return d == Dir::H ? 'h' : 'v'; }

struct ValidationIssue {
    enum Kind { HSquare, VSquare, Anticommute } kind;
    Bidegree at; // source bidegree of the failing composite
    std::string str() const;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string str() const;
};

/// Bounded double complex of finite-dimensional spaces with two
/// anticommuting differentials d1 (raises p) and d2 (raises q).
///
/// Spaces and maps are stored sparsely: a bidegree without a record has
/// dimension zero, and an absent map is the zero map.  Matrices follow
/// the column convention (target dim x source dim).
class DoubleComplex {
public:
    DoubleComplex(int pmin, int pmax, int qmin, int qmax);

    int pmin() const { return pmin_; }
    int pmax() const { return pmax_; }
    int qmin() const { return qmin_; }
    int qmax() const { return qmax_; }
    bool in_box(Bidegree b) const {
        return b.p >= pmin_ && b.p <= pmax_ && b.q >= qmin_ && b.q <= qmax_;
    }

    int dim(Bidegree b) const;
    int total_dim() const;
    void set_dim(Bidegree b, int dim);

    const std::vector<std::string>& labels(Bidegree b) const;
    void set_labels(Bidegree b, std::vector<std::string> labels);

    /// Returns the stored map, or a zero matrix of the right shape.
    Mat map(Dir dir, Bidegree source) const;
    void set_map(Dir dir, Bidegree source, Mat m);
    bool has_map(Dir dir, Bidegree source) const;

    static Bidegree target_of(Dir dir, Bidegree source) {
        return dir == Dir::H ? Bidegree{source.p + 1, source.q}
                             : Bidegree{source.p, source.q + 1};
    }

    /// Checks d1 d1 = 0, d2 d2 = 0 and d1 d2 + d2 d1 = 0 everywhere.
    ValidationReport validate() const;

    /// Bidegrees with nonzero dimension, ordered by (p, q).
    std::vector<Bidegree> support() const;

    static DoubleComplex direct_sum(const DoubleComplex& a, const DoubleComplex& b);

private:
    int pmin_, pmax_, qmin_, qmax_;
    std::map<Bidegree, int> dims_;
    std::map<Bidegree, std::vector<std::string>> labels_;
    std::map<std::pair<Bidegree, Dir>, Mat> maps_;

    void check_in_box(Bidegree b, const char* what) const;
};

/// Total complex K^k = direct sum of the spaces of total degree k,
/// blocks ordered by ascending p, with d = d1 + d2.
struct TotalComplex {
    int kmin = 0;
    int kmax = 0;
    std::vector<int> dims;             // indexed by k - kmin
    std::vector<Mat> d;                // d[k - kmin] : K^k -> K^{k+1}
    std::vector<std::vector<std::pair<Bidegree, int>>> layout; // (block, offset)

    int dim(int k) const {
        return (k < kmin || k > kmax) ? 0 : dims[size_t(k - kmin)];
    }
};

TotalComplex totalize(const DoubleComplex& dc);

/// Serializes to the "bicomplex v1" document; deterministic byte-for-byte.
std::string write_document(const DoubleComplex& dc);

/// Parses a "bicomplex v1" document; throws parse_error with a line number.
DoubleComplex read_document(const std::string& text);

} // namespace bicx

#endif

#ifndef BICX_DECOMPOSE_HPP
#define BICX_DECOMPOSE_HPP

#include <map>
#include <string>
#include <vector>

#include "bicx/complex.hpp"
#include "bicx/spectral.hpp"

namespace bicx {

/// Indecomposable summand shape: a square (four cells, four arrows) or a
/// zigzag (a staircase path of cells joined by alternating h/v arrows).
///
/// Cells are listed in traversal order.  For zigzags the traversal starts
/// at the lexicographically smaller endpoint and arrow_word records the
/// step letters 'h'/'v' between consecutive cells (arrow direction within
/// a step follows from the bidegrees).  For squares the cell order is
/// bottom-left, bottom-right, top-left, top-right and arrow_word is empty.
struct Shape {
    enum class Kind { Zigzag, Square };
    Kind kind = Kind::Zigzag;
    std::vector<Bidegree> cells;
    std::string arrow_word;

    int length() const { return int(cells.size()); }

    /// Cell with the lowest total degree, ties broken by lowest p.
    Bidegree anchor() const;

    /// "L3" for a length-3 zigzag, "square" for a square.
    std::string family() const;

    /// One-line rendering, e.g. "L3 (0,1)->(1,1)<-(1,0)".
    std::string str() const;

    /// Checks internal consistency (adjacency, alternation, word).
    bool well_formed() const;

    friend bool operator<(const Shape& a, const Shape& b);
    friend bool operator==(const Shape& a, const Shape& b);
};

/// Multiset of shapes.
struct Census {
    std::map<Shape, int> counts;

    int zigzags_of_length(int len) const;
    int squares() const;
    int total_summands() const;

    /// Aggregated one-line form, e.g. "36 × L1, 12 × L2, 1 × square".
    std::string summary() const;

    friend bool operator==(const Census& a, const Census& b) {
        return a.counts == b.counts;
    }
};

/// One summand: its shape plus a generating vector per cell, each a column
/// in the original coordinates of that cell's bidegree.
struct Summand {
    Shape shape;
    std::vector<Mat> vectors;
};

struct Decomposition {
    std::vector<Summand> summands;

    Census census() const;

    /// Per-bidegree change of basis: columns are the summand vectors in
    /// summand order.  Each matrix is square and invertible when the
    /// decomposition is genuine.
    std::map<Bidegree, Mat> witness() const;
};

/// Splits a validated bounded double complex into squares and zigzags.
Decomposition decompose(const DoubleComplex& dc);

/// Re-derives everything from scratch: witness invertibility, and that the
/// conjugated differentials are supported exactly on the declared arrows.
/// On failure, writes a description to *why when why is non-null.
bool verify(const DoubleComplex& dc, const Decomposition& dec, std::string* why = nullptr);

/// The model complex of a shape: one-dimensional spaces at its cells, unit
/// arrows (with one -1 on a square's top edge to anticommute).
DoubleComplex shape_complex(const Shape& shape);

/// Page and cohomology tables implied by a census, derived by running the
/// engine on each shape's model complex and adding up multiplicities.
struct CensusTables {
    std::vector<PageTable> pages;
    int degeneration = 1;
    CohomologyTable de_rham, dolbeault, bott_chern, aeppli;
};

CensusTables census_tables(const Census& census);

/// Direct counting rule for the Dolbeault table: drop the v-arrows of
/// every zigzag and count the cells left unpaired; squares contribute
/// nothing.  Independent of the engine-based route in census_tables.
std::map<Bidegree, int> census_dolbeault_counts(const Census& census);

/// Graphviz rendering of a decomposition, dots positioned on the (p,q) grid.
std::string export_dot(const DoubleComplex& dc, const Decomposition& dec);

/// Plain-text rendering: per-cell counts and one line per summand shape.
std::string export_ascii(const DoubleComplex& dc, const Decomposition& dec);

} // namespace bicx

#endif

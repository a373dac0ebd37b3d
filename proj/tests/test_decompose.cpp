#include "doctest.h"

#include <map>
#include <string>
#include <vector>

#include "bicx/catalog.hpp"
#include "bicx/decompose.hpp"
#include "bicx/errors.hpp"
#include "bicx/linalg.hpp"
#include "bicx/reference.hpp"
#include "bicx/spectral.hpp"

using namespace bicx;

namespace {

Shape zigzag(std::vector<Bidegree> cells) {
    Shape s;
    s.kind = Shape::Kind::Zigzag;
    if (cells.size() > 1 && cells.back() < cells.front())
        std::reverse(cells.begin(), cells.end());
    for (size_t k = 0; k + 1 < cells.size(); ++k)
        s.arrow_word += cells[k].p != cells[k + 1].p ? 'h' : 'v';
    s.cells = std::move(cells);
    return s;
}

Shape square_at(Bidegree b) {
    Shape s;
    s.kind = Shape::Kind::Square;
    s.cells = {b, {b.p + 1, b.q}, {b.p, b.q + 1}, {b.p + 1, b.q + 1}};
    return s;
}

/// Rebuilds the complex in a new basis: the columns of t[b] are the new
/// basis vectors of the cell at b, written in the old coordinates.
DoubleComplex conjugate(const DoubleComplex& dc, const std::map<Bidegree, Mat>& t) {
    DoubleComplex out(dc.pmin(), dc.pmax(), dc.qmin(), dc.qmax());
    for (Bidegree b : dc.support()) out.set_dim(b, dc.dim(b));
    for (Bidegree b : dc.support())
        for (Dir dir : {Dir::H, Dir::V}) {
            Bidegree tb = DoubleComplex::target_of(dir, b);
            if (dc.dim(tb) == 0) continue;
            Mat m = dc.map(dir, b);
            auto src = t.find(b);
            if (src != t.end()) m = m * src->second;
            auto tgt = t.find(tb);
            if (tgt != t.end()) m = *inverse(tgt->second) * m;
            out.set_map(dir, b, m);
        }
    return out;
}

/// Unit upper triangular, so always invertible.
Mat shear(int n) {
    Mat m = Mat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m.at(i, j) = 1 + ((i + j) % 2);
    return m;
}

Census census_of(const std::vector<Shape>& shapes) {
    Census c;
    for (const Shape& s : shapes) ++c.counts[s];
    return c;
}

} // namespace

TEST_SUITE("decompose") {

TEST_CASE("shape well-formedness") {
    CHECK(zigzag({{0, 0}}).well_formed());
    CHECK(zigzag({{0, 0}, {1, 0}}).well_formed());
    CHECK(zigzag({{0, 1}, {1, 1}, {1, 0}, {2, 0}}).well_formed());
    CHECK(square_at({1, 1}).well_formed());

    Shape bad = zigzag({{0, 0}, {1, 0}});
    bad.arrow_word = "v"; // wrong arrow letter
    CHECK(!bad.well_formed());
    bad.arrow_word = "hh"; // wrong length
    CHECK(!bad.well_formed());

    Shape skip;
    skip.kind = Shape::Kind::Zigzag;
    skip.cells = {{0, 0}, {2, 0}};
    skip.arrow_word = "h"; // cells not adjacent
    CHECK(!skip.well_formed());

    Shape reversed;
    reversed.kind = Shape::Kind::Zigzag;
    reversed.cells = {{1, 0}, {0, 0}};
    reversed.arrow_word = "h"; // not in canonical orientation
    CHECK(!reversed.well_formed());

    Shape straight;
    straight.kind = Shape::Kind::Zigzag;
    straight.cells = {{0, 0}, {1, 0}, {2, 0}};
    straight.arrow_word = "hh"; // arrows must alternate direction
    CHECK(!straight.well_formed());

    Shape sq = square_at({0, 0});
    sq.cells[3] = {2, 2};
    CHECK(!sq.well_formed());
}

TEST_CASE("shape naming") {
    Shape s = zigzag({{0, 1}, {1, 1}, {1, 0}});
    CHECK(s.family() == "L3");
    CHECK(s.anchor() == Bidegree{1, 0});
    CHECK(s.str() == "L3 (0,1)->(1,1)<-(1,0)");
    CHECK(square_at({2, 0}).str() == "square at (2,0)");
    CHECK(square_at({2, 0}).anchor() == Bidegree{2, 0});
}

TEST_CASE("single shapes decompose to themselves") {
    std::vector<Shape> shapes = {
        zigzag({{1, 1}}),
        zigzag({{0, 0}, {1, 0}}),
        zigzag({{0, 0}, {0, 1}}),
        zigzag({{0, 1}, {1, 1}, {1, 0}}),
        zigzag({{1, 0}, {1, 1}, {0, 1}}), // same cells, written backwards
        zigzag({{0, 1}, {1, 1}, {1, 0}, {2, 0}}),
        zigzag({{0, 2}, {1, 2}, {1, 1}, {2, 1}, {2, 0}}),
        square_at({0, 0}),
    };
    for (const Shape& s : shapes) {
        CAPTURE(s.str());
        REQUIRE(s.well_formed());
        DoubleComplex dc = shape_complex(s);
        CHECK(dc.validate().ok());
        Decomposition dec = decompose(dc);
        REQUIRE(dec.summands.size() == 1);
        CHECK(dec.summands[0].shape == s);
        std::string why;
        CHECK_MESSAGE(verify(dc, dec, &why), why);
    }
}

TEST_CASE("preset censuses match the recorded multiplicities") {
    for (const Preset& p : builtin_presets()) {
        CAPTURE(p.name);
        const ReferenceEntry& ref = reference_for(p.name);
        Decomposition dec = decompose(build_preset(p.name));
        Census census = dec.census();
        CHECK(census.squares() == ref.squares);
        int zigzag_cells = 0;
        for (int len = 1; len <= 13; ++len) {
            auto it = ref.zigzags.find(len);
            CHECK(census.zigzags_of_length(len) ==
                  (it == ref.zigzags.end() ? 0 : it->second));
            zigzag_cells += len * census.zigzags_of_length(len);
        }
        CHECK(zigzag_cells + 4 * census.squares() == 64);
    }
}

TEST_CASE("the twelve length-2 zigzags of the Heisenberg preset split evenly") {
    Census census = decompose(build_preset("iwasawa")).census();
    int horizontal = 0, vertical = 0;
    for (const auto& [s, n] : census.counts)
        if (s.kind == Shape::Kind::Zigzag && s.length() == 2)
            (s.arrow_word == "h" ? horizontal : vertical) += n;
    CHECK(horizontal == 6);
    CHECK(vertical == 6);
}

TEST_CASE("census summaries") {
    CHECK(decompose(build_preset("torus")).census().summary() == "64 × L1");
    CHECK(decompose(build_preset("iwasawa")).census().summary() ==
          "36 × L1, 12 × L2, 1 × square");
    CHECK(Census{}.summary() == "empty");
}

TEST_CASE("decompositions verify and their witnesses are invertible") {
    for (const char* name : {"iwasawa", "deform-c"}) {
        CAPTURE(name);
        DoubleComplex dc = build_preset(name);
        Decomposition dec = decompose(dc);
        std::string why;
        CHECK_MESSAGE(verify(dc, dec, &why), why);
        for (const auto& [b, w] : dec.witness()) {
            CHECK(w.rows() == dc.dim(b));
            CHECK(w.cols() == dc.dim(b));
            CHECK(inverse(w).has_value());
        }
    }
}

TEST_CASE("verification notices a tampered summand") {
    DoubleComplex dc = build_preset("torus");
    Decomposition dec = decompose(dc);
    dec.summands[0].vectors[0] = dec.summands[1].vectors[0];
    std::string why;
    CHECK(!verify(dc, dec, &why));
    CHECK(!why.empty());
}

TEST_CASE("the census is invariant under a change of basis") {
    std::vector<Shape> shapes = {
        zigzag({{0, 1}, {1, 1}, {1, 0}}),
        square_at({0, 0}),
        zigzag({{1, 1}}),
        zigzag({{0, 0}, {1, 0}}),
    };
    DoubleComplex dc = shape_complex(shapes[0]);
    for (size_t k = 1; k < shapes.size(); ++k)
        dc = DoubleComplex::direct_sum(dc, shape_complex(shapes[k]));
    REQUIRE(dc.validate().ok());

    std::map<Bidegree, Mat> t;
    for (Bidegree b : dc.support()) t.emplace(b, shear(dc.dim(b)));
    DoubleComplex mixed = conjugate(dc, t);
    REQUIRE(mixed.validate().ok());

    Census expected = census_of(shapes);
    CHECK(decompose(dc).census() == expected);
    CHECK(decompose(mixed).census() == expected);
    std::string why;
    Decomposition dec = decompose(mixed);
    CHECK_MESSAGE(verify(mixed, dec, &why), why);
}

TEST_CASE("census-derived tables agree with the direct engine") {
    DoubleComplex dc = build_preset("iwasawa");
    Census census = decompose(dc).census();
    CensusTables ct = census_tables(census);

    auto direct = pages(dc, 0);
    CHECK(ct.degeneration == int(direct.size()));
    REQUIRE(ct.pages.size() >= direct.size());
    for (size_t k = 0; k < direct.size(); ++k)
        CHECK(ct.pages[k].dims == direct[k].dims);

    CHECK(ct.de_rham.by_degree == cohomology(dc, Theory::DeRham).by_degree);
    CHECK(ct.dolbeault.by_bidegree ==
          cohomology(dc, Theory::Dolbeault).by_bidegree);
    CHECK(ct.bott_chern.by_bidegree ==
          cohomology(dc, Theory::BottChern).by_bidegree);
    CHECK(ct.aeppli.by_bidegree == cohomology(dc, Theory::Aeppli).by_bidegree);

    CHECK(census_dolbeault_counts(census) ==
          cohomology(dc, Theory::Dolbeault).by_bidegree);
}

TEST_CASE("diagram exports are deterministic") {
    DoubleComplex dc = build_preset("deform-b");
    Decomposition dec = decompose(dc);
    std::string dot = export_dot(dc, dec);
    CHECK(dot == export_dot(dc, dec));
    CHECK(dot.find("digraph") != std::string::npos);
    std::string ascii = export_ascii(dc, dec);
    CHECK(ascii == export_ascii(dc, dec));
    CHECK(ascii.find("L5") != std::string::npos);
}

TEST_CASE("only validated complexes are decomposed") {
    DoubleComplex bad(0, 1, 0, 1);
    for (int p = 0; p <= 1; ++p)
        for (int q = 0; q <= 1; ++q) bad.set_dim({p, q}, 1);
    Mat one(1, 1);
    one.at(0, 0) = 1;
    bad.set_map(Dir::H, {0, 0}, one);
    bad.set_map(Dir::V, {0, 0}, one);
    bad.set_map(Dir::V, {1, 0}, one);
    bad.set_map(Dir::H, {0, 1}, one); // commutes instead of anticommuting
    CHECK_THROWS_AS(decompose(bad), invalid_complex);
}

} // TEST_SUITE

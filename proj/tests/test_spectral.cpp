#include "doctest.h"

#include <map>
#include <string>

#include "bicx/catalog.hpp"
#include "bicx/decompose.hpp"
#include "bicx/errors.hpp"
#include "bicx/reference.hpp"
#include "bicx/spectral.hpp"

using namespace bicx;

namespace {

std::vector<Bidegree> box_cells(const DoubleComplex& dc) {
    std::vector<Bidegree> cells;
    for (int p = dc.pmin(); p <= dc.pmax(); ++p)
        for (int q = dc.qmin(); q <= dc.qmax(); ++q) cells.push_back({p, q});
    return cells;
}

int grid_dim(const std::map<Bidegree, int>& grid, Bidegree b) {
    auto it = grid.find(b);
    return it == grid.end() ? 0 : it->second;
}

Shape vertical_l2(Bidegree base) {
    Shape s;
    s.kind = Shape::Kind::Zigzag;
    s.cells = {base, {base.p, base.q + 1}};
    s.arrow_word = "v";
    return s;
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("first page and degeneration of the torus grid") {
    DoubleComplex dc = build_preset("torus");
    PageTable e1 = page(dc, 1);
    const ReferenceEntry& ref = reference_for("torus");
    for (Bidegree b : box_cells(dc)) CHECK(e1.dim(b) == grid_dim(ref.e1, b));
    CHECK(degeneration_page(dc) == 1);
    CHECK(e1.no_differentials());
    CHECK(pages(dc, 0).size() == 1);
}

TEST_CASE("page tables match the recorded values for every preset") {
    for (const Preset& p : builtin_presets()) {
        CAPTURE(p.name);
        const ReferenceEntry& ref = reference_for(p.name);
        DoubleComplex dc = build_preset(p.name);
        auto pgs = pages(dc, 0);
        CHECK(int(pgs.size()) == ref.degeneration);
        CHECK(degeneration_page(dc) == ref.degeneration);
        for (Bidegree b : box_cells(dc)) {
            CHECK(pgs.front().dim(b) == grid_dim(ref.e1, b));
            CHECK(pgs.back().dim(b) == grid_dim(ref.einf, b));
        }
    }
}

TEST_CASE("the first page is Dolbeault cohomology") {
    for (const Preset& p : builtin_presets()) {
        CAPTURE(p.name);
        DoubleComplex dc = build_preset(p.name);
        PageTable e1 = page(dc, 1);
        CohomologyTable dol = cohomology(dc, Theory::Dolbeault);
        for (Bidegree b : box_cells(dc)) CHECK(e1.dim(b) == dol.dim(b));
    }
}

TEST_CASE("page dimensions drop by the ranks of the differentials") {
    for (const char* name : {"iwasawa", "deform-b", "deform-c"}) {
        CAPTURE(name);
        DoubleComplex dc = build_preset(name);
        auto pgs = pages(dc, 3);
        for (size_t k = 0; k + 1 < pgs.size(); ++k) {
            const PageTable& cur = pgs[k];
            const PageTable& nxt = pgs[k + 1];
            int r = cur.r;
            for (Bidegree b : box_cells(dc)) {
                int in = cur.dr_rank({b.p - r, b.q + r - 1});
                CHECK(nxt.dim(b) == cur.dim(b) - cur.dr_rank(b) - in);
            }
        }
    }
}

TEST_CASE("pages are stationary past the degeneration page") {
    DoubleComplex dc = build_preset("iwasawa");
    auto pgs = pages(dc, 5);
    REQUIRE(pgs.size() == 5);
    for (Bidegree b : box_cells(dc)) {
        CHECK(pgs[2].dim(b) == pgs[1].dim(b));
        CHECK(pgs[4].dim(b) == pgs[1].dim(b));
    }
    CHECK(pgs[2].no_differentials());
    CHECK(page(dc, 9).dims == pgs[1].dims);
}

TEST_CASE("euler characteristic is conserved across pages") {
    for (const Preset& p : builtin_presets()) {
        CAPTURE(p.name);
        DoubleComplex dc = build_preset(p.name);
        auto pgs = pages(dc, 4);
        for (const PageTable& t : pgs) CHECK(t.euler() == 0);
    }
}

TEST_CASE("the limit recovers the cohomology of the total complex") {
    for (const Preset& p : builtin_presets()) {
        CAPTURE(p.name);
        const ReferenceEntry& ref = reference_for(p.name);
        DoubleComplex dc = build_preset(p.name);
        PageTable last = pages(dc, 0).back();
        CohomologyTable dr = cohomology(dc, Theory::DeRham);
        for (int k = 0; k <= 6; ++k) {
            int sum = 0;
            for (Bidegree b : box_cells(dc))
                if (b.total() == k) sum += last.dim(b);
            CHECK(sum == dr.dim(k));
            CHECK(dr.dim(k) == ref.betti.at(k));
        }
    }
}

TEST_CASE("hand-checked cohomology of the elementary pieces") {
    // A square has vanishing cohomology in every theory.
    Shape sq;
    sq.kind = Shape::Kind::Square;
    sq.cells = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    DoubleComplex square = shape_complex(sq);
    for (Theory t : {Theory::DeRham, Theory::Dolbeault, Theory::BottChern,
                     Theory::Aeppli})
        CHECK(cohomology(square, t).total() == 0);

    // A vertical length-2 zigzag: one Bott-Chern class at the head, one
    // Aeppli class at the tail, nothing elsewhere.
    DoubleComplex l2 = shape_complex(vertical_l2({0, 0}));
    CHECK(cohomology(l2, Theory::DeRham).total() == 0);
    CHECK(cohomology(l2, Theory::Dolbeault).total() == 0);
    CohomologyTable bc = cohomology(l2, Theory::BottChern);
    CHECK(bc.total() == 1);
    CHECK(bc.dim({0, 1}) == 1);
    CohomologyTable ae = cohomology(l2, Theory::Aeppli);
    CHECK(ae.total() == 1);
    CHECK(ae.dim({0, 0}) == 1);

    // A single dot has a one-dimensional class in all four theories.
    Shape dot;
    dot.kind = Shape::Kind::Zigzag;
    dot.cells = {{1, 1}};
    DoubleComplex point = shape_complex(dot);
    for (Theory t : {Theory::Dolbeault, Theory::BottChern, Theory::Aeppli})
        CHECK(cohomology(point, t).dim({1, 1}) == 1);
    CHECK(cohomology(point, Theory::DeRham).dim(2) == 1);
}

TEST_CASE("serre symmetry of every page") {
    for (const Preset& p : builtin_presets()) {
        CAPTURE(p.name);
        DoubleComplex dc = build_preset(p.name);
        for (const PageTable& t : pages(dc, 0))
            for (Bidegree b : box_cells(dc))
                CHECK(t.dim(b) == t.dim({3 - b.p, 3 - b.q}));
    }
}

TEST_CASE("invalid complexes are rejected before any page computation") {
    DoubleComplex bad(0, 2, 0, 0);
    for (int p = 0; p <= 2; ++p) bad.set_dim({p, 0}, 1);
    Mat one(1, 1);
    one.at(0, 0) = 1;
    bad.set_map(Dir::H, {0, 0}, one);
    bad.set_map(Dir::H, {1, 0}, one);
    CHECK_THROWS_AS(page(bad, 1), invalid_complex);
    CHECK_THROWS_AS(cohomology(bad, Theory::Dolbeault), invalid_complex);
    CHECK_THROWS_AS(page(build_preset("torus"), 0), error);
}

} // TEST_SUITE

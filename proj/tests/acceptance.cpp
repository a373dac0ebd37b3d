// Acceptance gate: nine numbered criteria, one pass/FAIL line each.
//
//   acceptance --criterion N    runs criterion N (1..9), exit 0/1
//   acceptance                  runs all nine
//
// Expected tables and censuses are transcribed here independently of
// src/reference.cpp so the two copies guard each other.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bicx/catalog.hpp"
#include "bicx/decompose.hpp"
#include "bicx/errors.hpp"
#include "bicx/spectral.hpp"

using namespace bicx;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string& note) {
        pass = false;
        notes.push_back(note);
    }
    void expect(long long expected, long long computed, const std::string& what) {
        if (expected != computed)
            fail(what + ": expected " + std::to_string(expected) + ", computed " +
                 std::to_string(computed));
    }
};

// Grid written top row first (q = 3) down to q = 0, columns p = 0..3.
using Grid = int[4][4];

int grid_at(const Grid& g, Bidegree b) { return g[3 - b.q][b.p]; }

// The fourteen interior bidegrees of the published tables, column by
// column; the (0,0) and (3,3) corners are always one-dimensional.
const std::vector<Bidegree>& printed_cells() {
    static const std::vector<Bidegree> cells = {
        {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1},
        {1, 2}, {0, 3}, {3, 1}, {2, 2}, {1, 3}, {3, 2}, {2, 3},
    };
    return cells;
}

const Grid kIwasawaE1 = {{1, 3, 3, 1}, {2, 6, 6, 2}, {2, 6, 6, 2}, {1, 3, 3, 1}};
const Grid kIwasawaE2 = {{1, 2, 2, 1}, {2, 4, 4, 2}, {2, 4, 4, 2}, {1, 2, 2, 1}};
const Grid kDeformBE1 = {{1, 2, 2, 1}, {2, 5, 5, 2}, {2, 5, 5, 2}, {1, 2, 2, 1}};
const Grid kDeformCDE1 = {{1, 1, 2, 1}, {2, 4, 5, 2}, {2, 5, 4, 2}, {1, 2, 1, 1}};

void check_rows(Outcome& o, const std::string& name, const PageTable& table,
                const Grid& expected) {
    for (Bidegree b : printed_cells())
        o.expect(grid_at(expected, b), table.dim(b),
                 name + " E" + std::to_string(table.r) + " at " + b.str());
}

Outcome criterion_1() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    DoubleComplex dc = build_preset("iwasawa");
    std::vector<PageTable> pgs = pages(dc, 2);
    check_rows(o, "iwasawa", pgs[0], kIwasawaE1);
    check_rows(o, "iwasawa", pgs[1], kIwasawaE2);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (ms >= 1000) o.fail("took " + std::to_string(ms) + " ms, limit is 1000");
    return o;
}

Outcome criterion_2() {
    Outcome o;
    DoubleComplex dc = build_preset("deform-b");
    std::vector<PageTable> pgs = pages(dc, 2);
    check_rows(o, "deform-b", pgs[0], kDeformBE1);
    check_rows(o, "deform-b", pgs[1], kIwasawaE2);
    o.expect(2, degeneration_page(dc), "deform-b degeneration page");
    return o;
}

Outcome criterion_3() {
    Outcome o;
    for (const char* name : {"deform-c", "deform-d"}) {
        DoubleComplex dc = build_preset(name);
        check_rows(o, name, page(dc, 1), kDeformCDE1);
        o.expect(1, degeneration_page(dc), std::string(name) + " degeneration page");
    }
    return o;
}

Outcome criterion_4() {
    Outcome o;
    struct Expected {
        const char* name;
        std::map<int, int> zigzags; // length -> multiplicity
        int squares;
    };
    // deform-c and deform-d singleton counts are regression values frozen
    // after the first verified run; the rest are recorded multiplicities.
    const std::vector<Expected> expected = {
        {"iwasawa", {{1, 36}, {2, 12}}, 1},
        {"deform-b", {{1, 28}, {2, 4}, {3, 4}, {5, 2}}, 1},
        {"deform-c", {{1, 26}, {3, 8}, {5, 2}}, 1},
        {"deform-d", {{1, 24}, {3, 12}}, 1},
        {"torus", {{1, 64}}, 0},
    };
    for (const Expected& e : expected) {
        Census census = decompose(build_preset(e.name)).census();
        for (int len = 1; len <= 8; ++len) {
            auto it = e.zigzags.find(len);
            o.expect(it == e.zigzags.end() ? 0 : it->second,
                     census.zigzags_of_length(len),
                     std::string(e.name) + " L" + std::to_string(len) + " count");
        }
        o.expect(e.squares, census.squares(), std::string(e.name) + " square count");
    }
    if (!o.pass)
        o.notes.push_back(
            "the recorded deform-b counts (28 L1 + 4 L2 + 4 L3 + 2 L5 + 1 square) "
            "cover 28+8+12+10+4 = 62 basis vectors, but the complex has total "
            "dimension 64; any census containing 4 L2 + 4 L3 + 2 L5 + 1 square "
            "must therefore contain 64-34 = 30 singletons, and the computed "
            "decomposition (which verifies and reproduces every cohomology "
            "table) finds exactly that");
    return o;
}

Outcome criterion_5() {
    Outcome o;
    for (const Preset& p : builtin_presets()) {
        DoubleComplex dc = build_preset(p.name);
        for (const PageTable& table : pages(dc, 0))
            for (int q = 0; q <= 3; ++q)
                for (int pp = 0; pp <= 3; ++pp)
                    o.expect(table.dim({3 - pp, 3 - q}), table.dim({pp, q}),
                             p.name + " E" + std::to_string(table.r) + " mirror of " +
                                 Bidegree{pp, q}.str());
    }
    return o;
}

Outcome criterion_6() {
    Outcome o;
    PageTable iw2 = page(build_preset("iwasawa"), 2);
    PageTable dc1 = page(build_preset("deform-c"), 1);
    o.expect(2, iw2.dim({2, 0}), "iwasawa E2 at (2,0)");
    o.expect(1, dc1.dim({2, 0}), "deform-c E1 at (2,0)");
    o.expect(4, iw2.dim({1, 1}), "iwasawa E2 at (1,1)");
    o.expect(5, dc1.dim({1, 1}), "deform-c E1 at (1,1)");
    if (!(iw2.dim({2, 0}) > dc1.dim({2, 0})))
        o.fail("expected a downward jump at (2,0) across the deformation");
    if (!(iw2.dim({1, 1}) < dc1.dim({1, 1})))
        o.fail("expected an upward jump at (1,1) across the deformation");
    for (const Preset& p : builtin_presets()) {
        DoubleComplex dc = build_preset(p.name);
        int d = degeneration_page(dc);
        PageTable settled = page(dc, d);
        for (int r = d; r <= d + 3; ++r) {
            PageTable later = page(dc, r);
            if (later.dims != settled.dims)
                o.fail(p.name + ": E" + std::to_string(r) + " differs from E" +
                       std::to_string(d) + " past the degeneration page");
            if (!later.no_differentials())
                o.fail(p.name + ": d" + std::to_string(r) +
                       " is nonzero past the degeneration page");
        }
    }
    return o;
}

// Zigzags are windows of the down-right staircase: each step either raises
// p or lowers q, alternating.  Both step parities at every length (plus
// squares) are reachable below.
Shape random_shape(std::mt19937& rng) {
    auto pick = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    if (pick(0, 4) == 0) {
        Shape s;
        s.kind = Shape::Kind::Square;
        Bidegree b{pick(0, 2), pick(0, 2)};
        s.cells = {b, {b.p + 1, b.q}, {b.p, b.q + 1}, {b.p + 1, b.q + 1}};
        return s;
    }
    int len = pick(1, 6);
    bool first_h = len == 1 || pick(0, 1) == 1;
    int h_steps = 0, v_steps = 0;
    for (int k = 0, h = first_h; k < len - 1; ++k, h = !h) ++(h ? h_steps : v_steps);
    std::vector<Bidegree> cells{{pick(0, 3 - h_steps), pick(v_steps, 3)}};
    for (int k = 0, h = first_h; k < len - 1; ++k, h = !h) {
        Bidegree next = cells.back();
        (h ? next.p : next.q) += h ? 1 : -1;
        cells.push_back(next);
    }
    Shape s;
    s.kind = Shape::Kind::Zigzag;
    if (cells.back() < cells.front()) std::reverse(cells.begin(), cells.end());
    for (size_t k = 0; k + 1 < cells.size(); ++k)
        s.arrow_word += cells[k].p != cells[k + 1].p ? 'h' : 'v';
    s.cells = std::move(cells);
    return s;
}

// Unit lower times unit upper triangular with small entries: invertible.
Mat random_basis(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> entry(-2, 2);
    Mat lo = Mat::identity(n), up = Mat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i > j) lo.at(i, j) = entry(rng);
            if (i < j) up.at(i, j) = entry(rng);
        }
    return lo * up;
}

DoubleComplex conjugate(const DoubleComplex& dc, const std::map<Bidegree, Mat>& t) {
    DoubleComplex out(dc.pmin(), dc.pmax(), dc.qmin(), dc.qmax());
    for (Bidegree b : dc.support()) out.set_dim(b, dc.dim(b));
    for (Bidegree b : dc.support())
        for (Dir dir : {Dir::H, Dir::V}) {
            Bidegree tb = DoubleComplex::target_of(dir, b);
            if (dc.dim(tb) == 0) continue;
            Mat m = dc.map(dir, b) * t.at(b);
            out.set_map(dir, b, *inverse(t.at(tb)) * m);
        }
    return out;
}

void check_against_engine(Outcome& o, const std::string& name,
                          const DoubleComplex& dc, const Census& census) {
    CensusTables ct = census_tables(census);
    std::vector<PageTable> direct = pages(dc, 0);
    o.expect(int(direct.size()), ct.degeneration, name + " degeneration page");
    for (size_t k = 0; k < direct.size() && k < ct.pages.size(); ++k)
        if (ct.pages[k].dims != direct[k].dims)
            o.fail(name + ": census E" + std::to_string(k + 1) +
                   " differs from the direct computation");
    if (ct.de_rham.by_degree != cohomology(dc, Theory::DeRham).by_degree)
        o.fail(name + ": census de Rham table differs");
    if (ct.dolbeault.by_bidegree != cohomology(dc, Theory::Dolbeault).by_bidegree)
        o.fail(name + ": census Dolbeault table differs");
    if (ct.bott_chern.by_bidegree != cohomology(dc, Theory::BottChern).by_bidegree)
        o.fail(name + ": census Bott-Chern table differs");
    if (ct.aeppli.by_bidegree != cohomology(dc, Theory::Aeppli).by_bidegree)
        o.fail(name + ": census Aeppli table differs");
    if (census_dolbeault_counts(census) !=
        cohomology(dc, Theory::Dolbeault).by_bidegree)
        o.fail(name + ": unpaired-cell Dolbeault counts differ");
}

Outcome criterion_7() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();

    for (const Preset& p : builtin_presets()) {
        DoubleComplex dc = build_preset(p.name);
        Decomposition dec = decompose(dc);
        std::string why;
        if (!verify(dc, dec, &why)) o.fail(p.name + ": " + why);
        check_against_engine(o, p.name, dc, dec.census());
    }

    std::mt19937 rng(987654321u);
    for (int trial = 0; trial < 100 && o.pass; ++trial) {
        std::string name = "trial " + std::to_string(trial);
        int count = std::uniform_int_distribution<int>(3, 6)(rng);
        Census expected;
        DoubleComplex dc(0, 3, 0, 3);
        bool first = true;
        for (int k = 0; k < count; ++k) {
            Shape s = random_shape(rng);
            ++expected.counts[s];
            dc = first ? shape_complex(s)
                       : DoubleComplex::direct_sum(dc, shape_complex(s));
            first = false;
        }
        std::map<Bidegree, Mat> t;
        for (Bidegree b : dc.support()) t.emplace(b, random_basis(dc.dim(b), rng));
        DoubleComplex mixed = conjugate(dc, t);

        if (!mixed.validate().ok()) {
            o.fail(name + ": conjugated complex fails validation");
            continue;
        }
        if (!(decompose(dc).census() == expected))
            o.fail(name + ": census of the plain sum differs from the sampled shapes");
        Decomposition dec = decompose(mixed);
        if (!(dec.census() == expected))
            o.fail(name + ": census changed under change of basis");
        std::string why;
        if (!verify(mixed, dec, &why)) o.fail(name + ": " + why);
        check_against_engine(o, name, mixed, expected);
    }

    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (ms >= 60000) o.fail("took " + std::to_string(ms) + " ms, limit is 60000");
    return o;
}

Outcome criterion_8() {
    Outcome o;
    for (const Preset& p : builtin_presets()) {
        DoubleComplex dc = build_preset(p.name);
        std::vector<PageTable> pgs = pages(dc, 0);
        for (const PageTable& table : pgs)
            o.expect(0, table.euler(),
                     p.name + " Euler characteristic of E" + std::to_string(table.r));
        CohomologyTable dr = cohomology(dc, Theory::DeRham);
        int chi = 0;
        for (const auto& [k, d] : dr.by_degree) chi += k % 2 ? -d : d;
        o.expect(0, chi, p.name + " de Rham Euler characteristic");
        const PageTable& last = pgs.back();
        std::map<int, int> by_total;
        for (const auto& [b, d] : last.dims) by_total[b.total()] += d;
        for (int k = 0; k <= 6; ++k) {
            auto it = by_total.find(k);
            o.expect(dr.dim(k), it == by_total.end() ? 0 : it->second,
                     p.name + " limit page total in degree " + std::to_string(k));
        }
    }
    return o;
}

Outcome criterion_9() {
    Outcome o;
    for (const Preset& p : builtin_presets()) {
        ValidationReport report = build_preset(p.name).validate();
        if (!report.ok()) o.fail(p.name + ": " + report.str());
    }

    DoubleComplex sq(0, 1, 0, 1);
    for (int p = 0; p <= 1; ++p)
        for (int q = 0; q <= 1; ++q) sq.set_dim({p, q}, 1);
    Mat one(1, 1);
    one.at(0, 0) = 1;
    sq.set_map(Dir::H, {0, 0}, one);
    sq.set_map(Dir::V, {0, 0}, one);
    sq.set_map(Dir::V, {1, 0}, one);
    sq.set_map(Dir::H, {0, 1}, one); // sign-broken: commutes instead
    ValidationReport report = sq.validate();
    if (report.ok()) {
        o.fail("sign-broken square passed validation");
        return o;
    }
    o.expect(1, int(report.issues.size()), "sign-broken square issue count");
    if (!report.issues.empty()) {
        if (report.issues[0].kind != ValidationIssue::Anticommute)
            o.fail("sign-broken square reported as " + report.issues[0].str() +
                   " rather than an anticommutation failure");
        if (!(report.issues[0].at == Bidegree{0, 0}))
            o.fail("sign-broken square flagged at " + report.issues[0].at.str() +
                   " rather than at (0,0)");
    }
    return o;
}

Outcome run(int n) {
    switch (n) {
        case 1: return criterion_1();
        case 2: return criterion_2();
        case 3: return criterion_3();
        case 4: return criterion_4();
        case 5: return criterion_5();
        case 6: return criterion_6();
        case 7: return criterion_7();
        case 8: return criterion_8();
        case 9: return criterion_9();
    }
    Outcome o;
    o.fail("no such criterion");
    return o;
}

int report(int n) {
    Outcome o;
    try {
        o = run(n);
    } catch (const std::exception& e) {
        o.fail(std::string("unexpected exception: ") + e.what());
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "pass" : "FAIL") << "\n";
    for (const std::string& note : o.notes) std::cout << "    " << note << "\n";
    return o.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    if (argc == 1) {
        int bad = 0;
        for (int n = 1; n <= 9; ++n) bad += report(n);
        return bad == 0 ? 0 : 1;
    }
    if (argc == 3 && std::string(argv[1]) == "--criterion") {
        int n = std::atoi(argv[2]);
        if (n >= 1 && n <= 9) return report(n);
    }
    std::cerr << "usage: acceptance [--criterion N]   (N in 1..9)\n";
    return 2;
}

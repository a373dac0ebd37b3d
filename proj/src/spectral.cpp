#include "bicx/spectral.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "bicx/errors.hpp"

namespace bicx {

namespace {

void require_valid(const DoubleComplex& dc) {
    ValidationReport report = dc.validate();
    if (!report.ok())
        throw invalid_complex("complex fails validation: " + report.issues.front().str());
}

// Column filtration machinery expressed inside the total complex.
struct Filtration {
    TotalComplex tc;

    int dim(int m) const { return tc.dim(m); }

    Mat d(int m) const {
        if (dim(m) == 0) return Mat(dim(m + 1), 0);
        return tc.d[size_t(m - tc.kmin)];
    }

    // F^p K^m: the blocks with block.p >= p span a trailing coordinate range.
    Subspace filt(int m, int p) const {
        int n = dim(m);
        if (n == 0) return Subspace::zero(0);
        std::vector<int> coords;
        const auto& layout = tc.layout[size_t(m - tc.kmin)];
        for (size_t bi = 0; bi < layout.size(); ++bi) {
            if (layout[bi].first.p < p) continue;
            int start = layout[bi].second;
            int stop = (bi + 1 < layout.size()) ? layout[bi + 1].second : n;
            for (int c = start; c < stop; ++c) coords.push_back(c);
        }
        Mat basis(n, int(coords.size()));
        for (int j = 0; j < int(coords.size()); ++j)
            basis.at(coords[size_t(j)], j) = Scalar(1);
        return Subspace::span(basis);
    }

};

// One spectral-sequence run.  Since F^{p+r} shrinks as r grows,
// Z_r = F^p cap d^{-1}(F^{p+r}) satisfies Z_r = Z_{r-1} cap d^{-1}(F^{p+r}),
// so the levels are computed incrementally and cached; the caches also
// share the numerator and denominator spaces between neighboring cells.
class Engine {
public:
    explicit Engine(const DoubleComplex& dc)
        : pmin_(dc.pmin()), pmax_(dc.pmax()), qmin_(dc.qmin()), qmax_(dc.qmax()),
          f_{totalize(dc)} {}

    PageTable page(int r) {
        PageTable table;
        table.r = r;
        for (int p = pmin_; p <= pmax_; ++p)
            for (int q = qmin_; q <= qmax_; ++q) {
                int m = p + q;
                if (f_.dim(m) == 0) continue;
                const Subspace& z = zr(p, m, r);
                const Subspace& b = boundary(p, m, r);
                if (!z.contains(b))
                    throw internal_error("spectral boundary escapes cycles at " +
                                         Bidegree{p, q}.str());
                int e = z.dim() - b.dim();
                if (e == 0) continue;
                table.dims[{p, q}] = e;

                // d_r lands at (p+r, q-r+1); its rank is measured inside E_r.
                if (f_.dim(m + 1) == 0) continue;
                Subspace image = apply(f_.d(m), z);
                const Subspace& tb = boundary(p + r, m + 1, r);
                int drr = sum(image, tb).dim() - tb.dim();
                if (drr > 0) table.dr[{p, q}] = drr;
            }
        return table;
    }

private:
    int pmin_, pmax_, qmin_, qmax_;
    Filtration f_;
    std::map<std::pair<int, int>, Subspace> filt_;
    std::map<std::array<int, 3>, Subspace> z_;
    std::map<std::array<int, 3>, Subspace> b_;

    const Subspace& filt(int m, int p) {
        auto it = filt_.find({m, p});
        if (it == filt_.end()) it = filt_.emplace(std::pair{m, p}, f_.filt(m, p)).first;
        return it->second;
    }

    // Z_level^{p, m-p} inside K^m; level 0 is F^p cap d^{-1}(F^p).
    const Subspace& zr(int p, int m, int level) {
        std::array<int, 3> key{p, m, level};
        auto it = z_.find(key);
        if (it != z_.end()) return it->second;
        Subspace z =
            f_.dim(m) == 0 ? Subspace::zero(0)
            : level == 0   ? intersect(filt(m, p), preimage(f_.d(m), filt(m + 1, p)))
                           : intersect(zr(p, m, level - 1),
                                       preimage(f_.d(m), filt(m + 1, p + level)));
        return z_.emplace(key, std::move(z)).first->second;
    }

    // Denominator  Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}  of E_r^{p,q}.
    const Subspace& boundary(int p, int m, int r) {
        std::array<int, 3> key{p, m, r};
        auto it = b_.find(key);
        if (it != b_.end()) return it->second;
        Subspace b = f_.dim(m) == 0
                         ? Subspace::zero(0)
                         : sum(zr(p + 1, m, r - 1),
                               apply(f_.d(m - 1), zr(p - r + 1, m - 1, r - 1)));
        return b_.emplace(key, std::move(b)).first->second;
    }
};

} // namespace

const char* theory_name(Theory t) {
    switch (t) {
        case Theory::DeRham: return "de-rham";
        case Theory::Dolbeault: return "dolbeault";
        case Theory::BottChern: return "bott-chern";
        default: return "aeppli";
    }
}

int CohomologyTable::total() const {
    int n = 0;
    for (const auto& [k, d] : by_degree) n += d;
    for (const auto& [b, d] : by_bidegree) n += d;
    return n;
}

PageTable page(const DoubleComplex& dc, int r) {
    if (r < 1) throw error("page index must be >= 1");
    require_valid(dc);
    Engine engine(dc);
    return engine.page(r);
}

std::vector<PageTable> pages(const DoubleComplex& dc, int count) {
    require_valid(dc);
    Engine engine(dc);
    // d_r vanishes identically once r exceeds the filtration span, so the
    // degeneration page is visible within the first span pages.
    int span = (dc.pmax() - dc.pmin()) + (dc.qmax() - dc.qmin()) + 1;
    std::vector<PageTable> out;
    int last_active = 0;
    for (int r = 1; r <= span; ++r) {
        out.push_back(engine.page(r));
        if (!out.back().no_differentials()) last_active = r;
    }
    int upto = std::max(count, std::max(1, last_active + 1));
    for (int r = span + 1; r <= upto; ++r) out.push_back(engine.page(r));
    out.resize(size_t(upto), PageTable{});
    return out;
}

int degeneration_page(const DoubleComplex& dc) {
    std::vector<PageTable> all = pages(dc, 0);
    return int(all.size());
}

CohomologyTable cohomology(const DoubleComplex& dc, Theory t) {
    require_valid(dc);
    CohomologyTable table;
    table.theory = t;

    if (t == Theory::DeRham) {
        TotalComplex tc = totalize(dc);
        for (int k = tc.kmin; k <= tc.kmax; ++k) {
            Mat dk = tc.d[size_t(k - tc.kmin)];
            Subspace cycles = Subspace::span(kernel_basis(dk));
            Subspace boundaries =
                k > tc.kmin ? Subspace::span(image_basis(tc.d[size_t(k - 1 - tc.kmin)]))
                            : Subspace::zero(tc.dim(k));
            int h = quotient_dim(cycles, boundaries);
            if (h > 0) table.by_degree[k] = h;
        }
        return table;
    }

    for (Bidegree b : dc.support()) {
        int h = 0;
        if (t == Theory::Dolbeault) {
            Subspace cycles = Subspace::span(kernel_basis(dc.map(Dir::V, b)));
            Subspace boundaries =
                Subspace::span(image_basis(dc.map(Dir::V, {b.p, b.q - 1})));
            h = quotient_dim(cycles, boundaries);
        } else if (t == Theory::BottChern) {
            Subspace cycles = intersect(Subspace::span(kernel_basis(dc.map(Dir::H, b))),
                                        Subspace::span(kernel_basis(dc.map(Dir::V, b))));
            Bidegree below{b.p - 1, b.q - 1};
            Mat corner = dc.map(Dir::H, {b.p - 1, b.q}) * dc.map(Dir::V, below);
            Subspace boundaries = Subspace::span(image_basis(corner));
            h = quotient_dim(cycles, boundaries);
        } else {
            Mat corner = dc.map(Dir::H, {b.p, b.q + 1}) * dc.map(Dir::V, b);
            Subspace cycles = Subspace::span(kernel_basis(corner));
            Subspace boundaries =
                sum(Subspace::span(image_basis(dc.map(Dir::H, {b.p - 1, b.q}))),
                    Subspace::span(image_basis(dc.map(Dir::V, {b.p, b.q - 1}))));
            h = quotient_dim(cycles, boundaries);
        }
        if (h > 0) table.by_bidegree[b] = h;
    }
    return table;
}

} // namespace bicx

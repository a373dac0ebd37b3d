#ifndef BICX_SPECTRAL_HPP
#define BICX_SPECTRAL_HPP

#include <map>
#include <vector>

#include "bicx/complex.hpp"

namespace bicx {

/// One page of the column-filtration spectral sequence.  Zero entries are
/// not stored.
struct PageTable {
    int r = 1;
    std::map<Bidegree, int> dims;     // dim E_r^{p,q}
    std::map<Bidegree, int> dr;       // rank of d_r out of (p,q)

    int dim(Bidegree b) const {
        auto it = dims.find(b);
        return it == dims.end() ? 0 : it->second;
    }
    int dr_rank(Bidegree b) const {
        auto it = dr.find(b);
        return it == dr.end() ? 0 : it->second;
    }
    int total() const {
        int n = 0;
        for (const auto& [b, d] : dims) n += d;
        return n;
    }
    bool no_differentials() const { return dr.empty(); }
    int euler() const {
        int chi = 0;
        for (const auto& [b, d] : dims) chi += (b.total() % 2 ? -d : d);
        return chi;
    }
};

/// Page r >= 1 of the spectral sequence of the column filtration
/// F^p K = sum of the columns with first index >= p.  Validates first.
PageTable page(const DoubleComplex& dc, int r);

/// Pages 1..max(count, degeneration page).  Pass count = 0 for exactly the
/// pages up to degeneration.
std::vector<PageTable> pages(const DoubleComplex& dc, int count = 0);

/// Smallest r such that d_s = 0 for every s >= r.
int degeneration_page(const DoubleComplex& dc);

enum class Theory { DeRham, Dolbeault, BottChern, Aeppli };

const char* theory_name(Theory t);

struct CohomologyTable {
    Theory theory = Theory::DeRham;
    std::map<int, int> by_degree;        // de Rham only
    std::map<Bidegree, int> by_bidegree; // the other three

    int dim(Bidegree b) const {
        auto it = by_bidegree.find(b);
        return it == by_bidegree.end() ? 0 : it->second;
    }
    int dim(int k) const {
        auto it = by_degree.find(k);
        return it == by_degree.end() ? 0 : it->second;
    }
    int total() const;
};

CohomologyTable cohomology(const DoubleComplex& dc, Theory t);

} // namespace bicx

#endif

#ifndef BICX_REFERENCE_HPP
#define BICX_REFERENCE_HPP

#include <map>
#include <string>
#include <vector>

#include "bicx/complex.hpp"

namespace bicx {

/// Expected results for one preset: spectral tables, Betti numbers, and the
/// summand census aggregated by family (zigzag length / square).
struct ReferenceEntry {
    std::string preset;
    std::map<Bidegree, int> e1;
    std::map<Bidegree, int> einf;
    int degeneration = 1;
    std::map<int, int> betti;
    std::map<int, int> zigzags; // length -> count
    int squares = 0;
};

const std::vector<ReferenceEntry>& reference_catalog();

/// Entry for a preset name; throws error when the preset has no reference.
const ReferenceEntry& reference_for(const std::string& preset);

} // namespace bicx

#endif

#include "bicx/reference.hpp"

#include "bicx/errors.hpp"

namespace bicx {

namespace {

// Grids are written row by row from q = 3 down to q = 0, p ascending,
// matching the way the tables are usually displayed.
std::map<Bidegree, int> grid4(const int (&rows)[4][4]) {
    std::map<Bidegree, int> out;
    for (int q = 3; q >= 0; --q)
        for (int p = 0; p <= 3; ++p) {
            int d = rows[3 - q][p];
            if (d > 0) out[{p, q}] = d;
        }
    return out;
}

ReferenceEntry make_torus() {
    ReferenceEntry r;
    r.preset = "torus";
    r.e1 = grid4({{1, 3, 3, 1},
                  {3, 9, 9, 3},
                  {3, 9, 9, 3},
                  {1, 3, 3, 1}});
    r.einf = r.e1;
    r.degeneration = 1;
    r.betti = {{0, 1}, {1, 6}, {2, 15}, {3, 20}, {4, 15}, {5, 6}, {6, 1}};
    r.zigzags = {{1, 64}};
    r.squares = 0;
    return r;
}

ReferenceEntry make_iwasawa() {
    ReferenceEntry r;
    r.preset = "iwasawa";
    r.e1 = grid4({{1, 3, 3, 1},
                  {2, 6, 6, 2},
                  {2, 6, 6, 2},
                  {1, 3, 3, 1}});
    r.einf = grid4({{1, 2, 2, 1},
                    {2, 4, 4, 2},
                    {2, 4, 4, 2},
                    {1, 2, 2, 1}});
    r.degeneration = 2;
    r.betti = {{0, 1}, {1, 4}, {2, 8}, {3, 10}, {4, 8}, {5, 4}, {6, 1}};
    r.zigzags = {{1, 36}, {2, 12}};
    r.squares = 1;
    return r;
}

ReferenceEntry make_deform_b() {
    ReferenceEntry r;
    r.preset = "deform-b";
    r.e1 = grid4({{1, 2, 2, 1},
                  {2, 5, 5, 2},
                  {2, 5, 5, 2},
                  {1, 2, 2, 1}});
    r.einf = grid4({{1, 2, 2, 1},
                    {2, 4, 4, 2},
                    {2, 4, 4, 2},
                    {1, 2, 2, 1}});
    r.degeneration = 2;
    r.betti = {{0, 1}, {1, 4}, {2, 8}, {3, 10}, {4, 8}, {5, 4}, {6, 1}};
    r.zigzags = {{1, 30}, {2, 4}, {3, 4}, {5, 2}};
    r.squares = 1;
    return r;
}

ReferenceEntry make_deform_cd(const std::string& name, std::map<int, int> zigzags) {
    ReferenceEntry r;
    r.preset = name;
    r.e1 = grid4({{1, 1, 2, 1},
                  {2, 4, 5, 2},
                  {2, 5, 4, 2},
                  {1, 2, 1, 1}});
    r.einf = r.e1;
    r.degeneration = 1;
    r.betti = {{0, 1}, {1, 4}, {2, 8}, {3, 10}, {4, 8}, {5, 4}, {6, 1}};
    r.zigzags = std::move(zigzags);
    r.squares = 1;
    return r;
}

} // namespace

const std::vector<ReferenceEntry>& reference_catalog() {
    static const std::vector<ReferenceEntry> entries = {
        make_deform_b(),
        make_deform_cd("deform-c", {{1, 26}, {3, 8}, {5, 2}}),
        make_deform_cd("deform-d", {{1, 24}, {3, 12}}),
        make_iwasawa(),
        make_torus(),
    };
    return entries;
}

const ReferenceEntry& reference_for(const std::string& preset) {
    for (const ReferenceEntry& r : reference_catalog())
        if (r.preset == preset) return r;
    throw error("no reference record for preset '" + preset + "'");
}

} // namespace bicx

#include "bicx/decompose.hpp"

#include <algorithm>
#include <sstream>

#include "bicx/errors.hpp"

namespace bicx {

namespace {

Mat drop_first_row_col(const Mat& m, bool row, bool col) {
    Mat out(m.rows() - (row ? 1 : 0), m.cols() - (col ? 1 : 0));
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j)
            out.at(i, j) = m.at(i + (row ? 1 : 0), j + (col ? 1 : 0));
    return out;
}

Mat unit_col(int n, int k) {
    Mat e(n, 1);
    e.at(k, 0) = Scalar(1);
    return e;
}

/// Working state of the elimination: per-bidegree embeddings into the
/// original coordinates plus the differentials rewritten in the current
/// bases.  Maps are stored for every in-box source/target pair.
struct Working {
    int pmin, pmax, qmin, qmax;
    std::map<Bidegree, int> dim;
    std::map<Bidegree, Mat> emb;
    std::map<std::pair<Bidegree, Dir>, Mat> maps;

    explicit Working(const DoubleComplex& dc)
        : pmin(dc.pmin()), pmax(dc.pmax()), qmin(dc.qmin()), qmax(dc.qmax()) {
        for (int p = pmin; p <= pmax; ++p)
            for (int q = qmin; q <= qmax; ++q) {
                Bidegree b{p, q};
                dim[b] = dc.dim(b);
                emb[b] = Mat::identity(dc.dim(b));
                for (Dir d : {Dir::H, Dir::V}) {
                    Bidegree t = DoubleComplex::target_of(d, b);
                    if (in_box(t)) maps[{b, d}] = dc.map(d, b);
                }
            }
    }

    bool in_box(Bidegree b) const {
        return b.p >= pmin && b.p <= pmax && b.q >= qmin && b.q <= qmax;
    }

    Mat get(Dir d, Bidegree b) const {
        auto it = maps.find({b, d});
        if (it != maps.end()) return it->second;
        int src = in_box(b) ? dim.at(b) : 0;
        Bidegree t = DoubleComplex::target_of(d, b);
        int tgt = in_box(t) ? dim.at(t) : 0;
        return Mat(tgt, src);
    }

    std::vector<std::pair<Bidegree, Dir>> adjacent_keys(Bidegree b) const {
        std::vector<std::pair<Bidegree, Dir>> keys;
        for (Dir d : {Dir::H, Dir::V}) {
            if (maps.count({b, d})) keys.push_back({b, d});
            Bidegree left = d == Dir::H ? Bidegree{b.p - 1, b.q} : Bidegree{b.p, b.q - 1};
            if (maps.count({left, d})) keys.push_back({left, d});
        }
        return keys;
    }

    /// Rewrites the basis at b: new basis columns are t (invertible).
    void change_basis(Bidegree b, const Mat& t) {
        auto tinv = inverse(t);
        if (!tinv)
            throw internal_error("change of basis at " + b.str() + " is singular");
        emb[b] = emb[b] * t;
        for (auto key : adjacent_keys(b)) {
            Mat& m = maps[key];
            if (key.first == b) m = m * t;
            if (DoubleComplex::target_of(key.second, key.first) == b) m = *tinv * m;
        }
    }

    /// Removes coordinate 0 at b; callers must have decoupled it first.
    void drop_first(Bidegree b) {
        dim[b] -= 1;
        Mat& e = emb[b];
        e = drop_first_row_col(e, false, true);
        for (auto key : adjacent_keys(b)) {
            Mat& m = maps[key];
            bool col = key.first == b;
            bool row = DoubleComplex::target_of(key.second, key.first) == b;
            m = drop_first_row_col(m, row, col);
        }
    }
};

struct SquareSpec {
    Bidegree base;
    // cells in shape order: base, right, up, diagonal
    std::array<Bidegree, 4> cells() const {
        return {base, Bidegree{base.p + 1, base.q}, Bidegree{base.p, base.q + 1},
                Bidegree{base.p + 1, base.q + 1}};
    }
};

// Expected coefficient of the arrow between two square cells in the new
// basis, or 0 when there is no arrow.
int square_arrow_coef(int from, int to) {
    if (from == 0 && to == 1) return 1;  // h bottom
    if (from == 0 && to == 2) return 1;  // v left
    if (from == 1 && to == 3) return 1;  // v right
    if (from == 2 && to == 3) return -1; // h top
    return 0;
}

void check_square_decoupled(const Working& w, const SquareSpec& sq) {
    auto cells = sq.cells();
    auto cell_index = [&](Bidegree b) {
        for (int k = 0; k < 4; ++k)
            if (cells[size_t(k)] == b) return k;
        return -1;
    };
    for (int k = 0; k < 4; ++k) {
        Bidegree x = cells[size_t(k)];
        for (auto key : w.adjacent_keys(x)) {
            const Mat& m = w.maps.at(key);
            Bidegree src = key.first;
            Bidegree tgt = DoubleComplex::target_of(key.second, key.first);
            int si = cell_index(src);
            int ti = cell_index(tgt);
            if (si >= 0) {
                // column 0 must feed only the square's own arrow
                for (int i = (ti >= 0 ? 1 : 0); i < m.rows(); ++i)
                    if (!m.at(i, 0).is_zero())
                        throw internal_error("square extraction left a stray entry under " +
                                             src.str());
                if (ti >= 0 && m.at(0, 0) != Scalar(square_arrow_coef(si, ti)))
                    throw internal_error("square arrow has the wrong coefficient at " +
                                         src.str());
            }
            if (ti >= 0) {
                // row 0 must be fed only by the square's own arrow
                for (int j = (si >= 0 ? 1 : 0); j < m.cols(); ++j)
                    if (!m.at(0, j).is_zero())
                        throw internal_error("square extraction left an incoming entry at " +
                                             tgt.str());
            }
        }
    }
}

void peel_squares(Working& w, std::vector<Summand>& out) {
    for (;;) {
        bool found = false;
        SquareSpec sq;
        Mat s;
        for (int p = w.pmin; p <= w.pmax && !found; ++p)
            for (int q = w.qmin; q <= w.qmax && !found; ++q) {
                Bidegree b{p, q};
                s = w.get(Dir::V, {p + 1, q}) * w.get(Dir::H, b);
                if (!s.is_zero()) {
                    sq.base = b;
                    found = true;
                }
            }
        if (!found) return;

        int pi = -1, pj = -1;
        for (int j = 0; j < s.cols() && pj < 0; ++j)
            for (int i = 0; i < s.rows(); ++i)
                if (!s.at(i, j).is_zero()) {
                    pi = i;
                    pj = j;
                    break;
                }
        Scalar inv_piv = Scalar(1) / s.at(pi, pj);

        auto cells = sq.cells();
        Bidegree b = cells[0], bh = cells[1], bv = cells[2], bd = cells[3];

        // Pivot functional at each corner; its kernel is the complement.
        auto row_functional = [&](const Mat& m, const Scalar& scale) {
            Mat f(1, m.cols());
            for (int j = 0; j < m.cols(); ++j) f.at(0, j) = scale * m.at(pi, j);
            return f;
        };
        Mat nu = row_functional(s, inv_piv);
        Mat mu1 = row_functional(w.get(Dir::V, bh), inv_piv);
        Mat mu2 = row_functional(w.get(Dir::H, bv), -inv_piv);
        Mat lambda(1, w.dim.at(bd));
        lambda.at(0, pi) = inv_piv;

        Mat u0 = unit_col(w.dim.at(b), pj);
        Mat u1 = w.get(Dir::H, b) * u0;
        Mat u2 = w.get(Dir::V, b) * u0;
        Mat u3 = s.col(pj);

        Summand summand;
        summand.shape.kind = Shape::Kind::Square;
        summand.shape.cells = {b, bh, bv, bd};
        summand.vectors = {w.emb.at(b) * u0, w.emb.at(bh) * u1, w.emb.at(bv) * u2,
                           w.emb.at(bd) * u3};
        out.push_back(std::move(summand));

        w.change_basis(b, u0.hcat(kernel_basis(nu)));
        w.change_basis(bh, u1.hcat(kernel_basis(mu1)));
        w.change_basis(bv, u2.hcat(kernel_basis(mu2)));
        w.change_basis(bd, u3.hcat(kernel_basis(lambda)));
        check_square_decoupled(w, sq);
        for (Bidegree x : cells) w.drop_first(x);
    }
}

// ---- zigzag extraction along one total degree ----

struct Interval {
    bool sink_born = false;
    int birth = 0; // line position: W(p) at 2p, U(p) at 2p+1
    std::vector<std::pair<Bidegree, Mat>> cells; // full current cell coordinates
    Mat frontier;                                // local coordinates at the frontier vertex
    bool extended = false;
};

// Order in which intervals may absorb earlier ones: source-born by
// ascending support length, then sink-born by descending support length.
std::pair<int, int> absorb_key(const Interval& iv) {
    return {iv.sink_born ? 1 : 0, iv.sink_born ? iv.birth : -iv.birth};
}

void apply_move(Interval& j, const Interval& p, const Scalar& c) {
    size_t nj = j.cells.size(), np = p.cells.size();
    if (np > nj && !j.sink_born)
        throw internal_error("invalid absorption between intervals");
    size_t t = std::min(nj, np);
    for (size_t k = 0; k < t; ++k) {
        auto& [bj, vj] = j.cells[nj - t + k];
        const auto& [bp, vp] = p.cells[np - t + k];
        if (bj != bp) throw internal_error("interval overlap misaligned");
        vj = vj + c * vp;
    }
    j.frontier = j.frontier + c * p.frontier;
}

void scale_interval(Interval& j, const Scalar& c) {
    for (auto& [b, v] : j.cells) v = c * v;
    j.frontier = c * j.frontier;
}

struct LineState {
    Working& w;
    std::map<Bidegree, int>& in_dim;
    std::vector<Interval> alive;
    std::vector<Interval> finished;

    int c_dim(Bidegree b) const {
        return w.in_box(b) ? w.dim.at(b) - in_dim.at(b) : 0;
    }
    int w_dim(Bidegree b) const { return w.in_box(b) ? in_dim.at(b) : 0; }

    Mat pad_u(Bidegree b, const Mat& local) const {
        Mat full(w.dim.at(b), 1);
        for (int r = 0; r < local.rows(); ++r) full.at(in_dim.at(b) + r, 0) = local.at(r, 0);
        return full;
    }
    Mat pad_w(Bidegree b, const Mat& local) const {
        Mat full(w.dim.at(b), 1);
        for (int r = 0; r < local.rows(); ++r) full.at(r, 0) = local.at(r, 0);
        return full;
    }

    // Local block of the differential from the C-part of u_cell into the
    // In-part of the target cell.
    Mat local_block(Dir dir, Bidegree u_cell) const {
        Bidegree t = DoubleComplex::target_of(dir, u_cell);
        int rows = w_dim(t);
        int cols = c_dim(u_cell);
        Mat full = w.get(dir, u_cell);
        Mat m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(i, j) = full.at(i, in_dim.at(u_cell) + j);
        return m;
    }

    // Completes the alive frontier vectors to a basis of the In-part of
    // w_cell; the missing coordinates become sink-born intervals.
    void complete_w(Bidegree w_cell, int line_pos) {
        int wd = w_dim(w_cell);
        if (wd == 0) {
            if (!alive.empty()) throw internal_error("intervals alive at an empty sink");
            return;
        }
        std::vector<bool> covered(size_t(wd), false);
        for (const Interval& iv : alive) {
            int lead = -1;
            for (int r = 0; r < wd; ++r)
                if (!iv.frontier.at(r, 0).is_zero()) {
                    lead = r;
                    break;
                }
            if (lead < 0 || covered[size_t(lead)])
                throw internal_error("frontier vectors fail to be in echelon");
            covered[size_t(lead)] = true;
        }
        for (int r = 0; r < wd; ++r) {
            if (covered[size_t(r)]) continue;
            Interval iv;
            iv.sink_born = true;
            iv.birth = line_pos;
            iv.frontier = unit_col(wd, r);
            iv.cells = {{w_cell, pad_w(w_cell, iv.frontier)}};
            alive.push_back(std::move(iv));
        }
        if (int(alive.size()) != wd)
            throw internal_error("alive intervals do not span the sink space");
    }

    void v_step(Bidegree u_cell, Bidegree w_cell, int line_pos_u) {
        int u = c_dim(u_cell);
        int wd = w_dim(w_cell);
        Mat v = local_block(Dir::V, u_cell);

        Mat x(wd, u);
        if (wd > 0) {
            Mat basis(wd, wd);
            for (int k = 0; k < wd; ++k) basis.set_col(k, alive[size_t(k)].frontier);
            auto binv = inverse(basis);
            if (!binv) throw internal_error("frontier basis is singular");
            x = *binv * v;
        }

        std::vector<Mat> ucol;
        for (int j = 0; j < u; ++j) ucol.push_back(unit_col(u, j));
        std::vector<Interval> newborn;
        std::vector<std::pair<int, int>> pivots; // (row, col)

        for (int j = 0; j < u; ++j) {
            for (auto [prow, pcol] : pivots) {
                Scalar c = x.at(prow, j);
                if (c.is_zero()) continue;
                for (int r = 0; r < wd; ++r) x.at(r, j) -= c * x.at(r, pcol);
                ucol[size_t(j)] = ucol[size_t(j)] - c * ucol[size_t(pcol)];
            }
            std::vector<int> hits;
            for (int r = 0; r < wd; ++r)
                if (!x.at(r, j).is_zero()) hits.push_back(r);
            if (hits.empty()) {
                Interval iv;
                iv.sink_born = false;
                iv.birth = line_pos_u;
                iv.frontier = ucol[size_t(j)];
                iv.cells = {{u_cell, pad_u(u_cell, iv.frontier)}};
                newborn.push_back(std::move(iv));
                continue;
            }
            int jstar = hits[0];
            for (int r : hits)
                if (absorb_key(alive[size_t(r)]) > absorb_key(alive[size_t(jstar)]) ||
                    (absorb_key(alive[size_t(r)]) == absorb_key(alive[size_t(jstar)]) && r > jstar))
                    jstar = r;
            for (int r : hits) {
                if (r == jstar) continue;
                Scalar c = x.at(r, j) / x.at(jstar, j);
                for (int k = 0; k < u; ++k) x.at(r, k) -= c * x.at(jstar, k);
                apply_move(alive[size_t(jstar)], alive[size_t(r)], c);
            }
            Scalar val = x.at(jstar, j);
            ucol[size_t(j)] = (Scalar(1) / val) * ucol[size_t(j)];
            for (int r = 0; r < wd; ++r) x.at(r, j) /= val;
            Interval& piv = alive[size_t(jstar)];
            piv.frontier = ucol[size_t(j)];
            piv.cells.push_back({u_cell, pad_u(u_cell, piv.frontier)});
            piv.extended = true;
            pivots.push_back({jstar, j});
        }

        std::vector<Interval> next;
        for (auto& iv : alive) {
            if (iv.extended) {
                iv.extended = false;
                next.push_back(std::move(iv));
            } else {
                if (iv.sink_born && iv.birth == line_pos_u - 1)
                    throw internal_error("sink vector born at " + w_cell.str() +
                                         " was never reached");
                finished.push_back(std::move(iv));
            }
        }
        for (auto& iv : newborn) next.push_back(std::move(iv));
        alive = std::move(next);
        if (int(alive.size()) != u)
            throw internal_error("alive intervals do not span the source space");
    }

    void h_step(Bidegree u_cell, Bidegree next_w) {
        int wd = w_dim(next_w);
        Mat h = local_block(Dir::H, u_cell);

        std::vector<int> order(alive.size());
        for (size_t k = 0; k < alive.size(); ++k) order[k] = int(k);
        std::stable_sort(order.begin(), order.end(), [&](int a, int bq) {
            return absorb_key(alive[size_t(a)]) < absorb_key(alive[size_t(bq)]);
        });

        struct Pivot {
            int lead;
            Mat img;
            int idx;
        };
        std::vector<Pivot> pivots;
        for (int idx : order) {
            Interval& iv = alive[size_t(idx)];
            Mat img = h * iv.frontier;
            for (const Pivot& piv : pivots) {
                Scalar c = img.at(piv.lead, 0);
                if (c.is_zero()) continue;
                img = img - c * piv.img;
                apply_move(iv, alive[size_t(piv.idx)], -c);
            }
            int lead = -1;
            for (int r = 0; r < wd; ++r)
                if (!img.at(r, 0).is_zero()) {
                    lead = r;
                    break;
                }
            if (lead < 0) {
                finished.push_back(std::move(iv));
                continue;
            }
            Scalar val = img.at(lead, 0);
            scale_interval(iv, Scalar(1) / val);
            img = (Scalar(1) / val) * img;
            pivots.push_back({lead, img, idx});
        }
        // Extend the survivors only now: the absorptions above need every
        // frontier (and every cell list) still ending at u_cell.
        std::vector<Interval> next;
        for (const Pivot& piv : pivots) {
            Interval& iv = alive[size_t(piv.idx)];
            iv.frontier = piv.img;
            iv.cells.push_back({next_w, pad_w(next_w, piv.img)});
            next.push_back(std::move(iv));
        }
        alive = std::move(next);
    }
};

Shape orient_zigzag(std::vector<Bidegree> cells, std::vector<Mat>& vectors) {
    if (cells.size() > 1 && cells.back() < cells.front()) {
        std::reverse(cells.begin(), cells.end());
        std::reverse(vectors.begin(), vectors.end());
    }
    Shape s;
    s.kind = Shape::Kind::Zigzag;
    for (size_t k = 0; k + 1 < cells.size(); ++k) {
        Bidegree a = cells[k], b = cells[k + 1];
        s.arrow_word += (a.p != b.p) ? 'h' : 'v';
    }
    s.cells = std::move(cells);
    return s;
}

void extract_zigzags(Working& w, std::vector<Summand>& out) {
    // Split every cell into the incoming-image part and a complement.
    std::map<Bidegree, int> in_dim;
    for (auto& [b, d] : w.dim) {
        Mat into = w.get(Dir::H, {b.p - 1, b.q}).hcat(w.get(Dir::V, {b.p, b.q - 1}));
        Mat in_basis = image_basis(into);
        in_dim[b] = in_basis.cols();
        if (d == 0) continue;
        // complement: unit vectors at the rows the echelon basis misses
        std::vector<bool> lead(size_t(d), false);
        for (int j = 0; j < in_basis.cols(); ++j)
            for (int r = 0; r < d; ++r)
                if (!in_basis.at(r, j).is_zero()) {
                    lead[size_t(r)] = true;
                    break;
                }
        Mat t = in_basis;
        for (int r = 0; r < d; ++r)
            if (!lead[size_t(r)]) t = t.hcat(unit_col(d, r));
        w.change_basis(b, t);
    }

    // Every differential must now land inside the In-part of its target
    // and kill the In-part of its source.
    for (const auto& [key, m] : w.maps) {
        Bidegree t = DoubleComplex::target_of(key.second, key.first);
        for (int i = in_dim.at(t); i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (!m.at(i, j).is_zero())
                    throw internal_error("image escapes the incoming part at " + t.str());
        for (int j = 0; j < in_dim.at(key.first); ++j)
            for (int i = 0; i < m.rows(); ++i)
                if (!m.at(i, j).is_zero())
                    throw internal_error("incoming part not closed at " + key.first.str());
    }

    int kmin = 0, kmax = -1;
    bool any = false;
    for (const auto& [b, d] : w.dim)
        if (d > 0) {
            if (!any) {
                kmin = kmax = b.total();
                any = true;
            } else {
                kmin = std::min(kmin, b.total());
                kmax = std::max(kmax, b.total());
            }
        }

    std::vector<Interval> all_finished;
    for (int m = kmin; m <= kmax && any; ++m) {
        LineState line{w, in_dim, {}, {}};
        for (int p = w.pmin; p <= w.pmax; ++p) {
            Bidegree w_cell{p, m + 1 - p};
            Bidegree u_cell{p, m - p};
            line.complete_w(w_cell, 2 * p);
            line.v_step(u_cell, w_cell, 2 * p + 1);
            line.h_step(u_cell, {p + 1, m - p});
        }
        if (!line.alive.empty())
            throw internal_error("intervals still alive at the end of the line");
        for (auto& iv : line.finished) all_finished.push_back(std::move(iv));
    }

    for (Interval& iv : all_finished) {
        Summand s;
        std::vector<Bidegree> cells;
        for (auto& [b, vec] : iv.cells) {
            cells.push_back(b);
            s.vectors.push_back(w.emb.at(b) * vec);
        }
        s.shape = orient_zigzag(std::move(cells), s.vectors);
        out.push_back(std::move(s));
    }
}

} // namespace

Bidegree Shape::anchor() const {
    // Lowest antidiagonal wins; on that antidiagonal, the bottom-most cell.
    Bidegree best = cells.front();
    for (Bidegree b : cells)
        if (b.total() < best.total() || (b.total() == best.total() && b.p > best.p))
            best = b;
    return best;
}

std::string Shape::family() const {
    return kind == Kind::Square ? "square" : "L" + std::to_string(length());
}

std::string Shape::str() const {
    std::string s = family();
    if (kind == Kind::Square) {
        s += " at " + cells.front().str();
        return s;
    }
    s += " ";
    for (size_t k = 0; k < cells.size(); ++k) {
        if (k) {
            Bidegree a = cells[k - 1], b = cells[k];
            bool forward = (b.p > a.p) || (b.q > a.q);
            s += forward ? "->" : "<-";
        }
        s += cells[k].str();
    }
    return s;
}

bool Shape::well_formed() const {
    if (cells.empty()) return false;
    if (kind == Kind::Square) {
        if (cells.size() != 4 || !arrow_word.empty()) return false;
        Bidegree b = cells[0];
        return cells[1] == Bidegree{b.p + 1, b.q} && cells[2] == Bidegree{b.p, b.q + 1} &&
               cells[3] == Bidegree{b.p + 1, b.q + 1};
    }
    if (arrow_word.size() + 1 != cells.size()) return false;
    if (cells.size() > 1 && cells.back() < cells.front()) return false;
    for (size_t k = 0; k + 1 < cells.size(); ++k) {
        Bidegree a = cells[k], b = cells[k + 1];
        int dp = b.p - a.p, dq = b.q - a.q;
        bool h = (dq == 0 && (dp == 1 || dp == -1));
        bool v = (dp == 0 && (dq == 1 || dq == -1));
        if (!h && !v) return false;
        if (arrow_word[k] != (h ? 'h' : 'v')) return false;
        if (k > 0 && arrow_word[k] == arrow_word[k - 1]) return false;
    }
    // a staircase never revisits a cell
    for (size_t a = 0; a < cells.size(); ++a)
        for (size_t b = a + 1; b < cells.size(); ++b)
            if (cells[a] == cells[b]) return false;
    return true;
}

bool operator<(const Shape& a, const Shape& b) {
    auto key = [](const Shape& s) {
        return std::make_tuple(s.kind == Shape::Kind::Square ? 1 : 0, s.length(),
                               s.anchor(), s.cells, s.arrow_word);
    };
    return key(a) < key(b);
}

bool operator==(const Shape& a, const Shape& b) {
    return a.kind == b.kind && a.cells == b.cells && a.arrow_word == b.arrow_word;
}

int Census::zigzags_of_length(int len) const {
    int n = 0;
    for (const auto& [s, c] : counts)
        if (s.kind == Shape::Kind::Zigzag && s.length() == len) n += c;
    return n;
}

int Census::squares() const {
    int n = 0;
    for (const auto& [s, c] : counts)
        if (s.kind == Shape::Kind::Square) n += c;
    return n;
}

int Census::total_summands() const {
    int n = 0;
    for (const auto& [s, c] : counts) n += c;
    return n;
}

std::string Census::summary() const {
    std::map<int, int> by_length;
    for (const auto& [s, c] : counts)
        if (s.kind == Shape::Kind::Zigzag) by_length[s.length()] += c;
    std::string out;
    for (const auto& [len, c] : by_length) {
        if (!out.empty()) out += ", ";
        out += std::to_string(c) + " × L" + std::to_string(len);
    }
    int sq = squares();
    if (sq > 0) {
        if (!out.empty()) out += ", ";
        out += std::to_string(sq) + " × square";
    }
    if (out.empty()) out = "empty";
    return out;
}

Census Decomposition::census() const {
    Census c;
    for (const Summand& s : summands) c.counts[s.shape] += 1;
    return c;
}

std::map<Bidegree, Mat> Decomposition::witness() const {
    std::map<Bidegree, std::vector<Mat>> cols;
    for (const Summand& s : summands)
        for (size_t k = 0; k < s.shape.cells.size(); ++k)
            cols[s.shape.cells[k]].push_back(s.vectors[k]);
    std::map<Bidegree, Mat> out;
    for (auto& [b, vs] : cols) {
        Mat m = vs.front();
        for (size_t k = 1; k < vs.size(); ++k) m = m.hcat(vs[k]);
        out[b] = m;
    }
    return out;
}

Decomposition decompose(const DoubleComplex& dc) {
    ValidationReport report = dc.validate();
    if (!report.ok())
        throw invalid_complex("cannot decompose: " + report.issues.front().str());

    Working w(dc);
    std::vector<Summand> summands;
    peel_squares(w, summands);
    extract_zigzags(w, summands);

    int covered = 0;
    for (const Summand& s : summands) covered += s.shape.length();
    if (covered != dc.total_dim())
        throw internal_error("summand cells do not cover the complex");

    std::stable_sort(summands.begin(), summands.end(),
                     [](const Summand& a, const Summand& b) { return a.shape < b.shape; });
    Decomposition dec;
    dec.summands = std::move(summands);
    return dec;
}

bool verify(const DoubleComplex& dc, const Decomposition& dec, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };

    for (const Summand& s : dec.summands) {
        if (!s.shape.well_formed()) return fail("malformed shape " + s.shape.str());
        if (s.vectors.size() != s.shape.cells.size())
            return fail("vector count mismatch for " + s.shape.str());
    }

    // Column index -> (summand, cell) bookkeeping per bidegree.
    std::map<Bidegree, std::vector<std::pair<int, int>>> members;
    for (int si = 0; si < int(dec.summands.size()); ++si) {
        const Shape& sh = dec.summands[size_t(si)].shape;
        for (int ci = 0; ci < int(sh.cells.size()); ++ci)
            members[sh.cells[size_t(ci)]].push_back({si, ci});
    }

    std::map<Bidegree, Mat> wit = dec.witness();
    std::map<Bidegree, Mat> wit_inv;
    for (Bidegree b : dc.support()) {
        auto it = wit.find(b);
        if (it == wit.end() || it->second.cols() != dc.dim(b) ||
            it->second.rows() != dc.dim(b))
            return fail("witness at " + b.str() + " is not square");
        auto inv = inverse(it->second);
        if (!inv) return fail("witness at " + b.str() + " is singular");
        wit_inv[b] = *inv;
    }
    for (const auto& [b, m] : wit)
        if (dc.dim(b) != m.cols()) return fail("witness covers a zero cell at " + b.str());

    auto arrow_between = [](const Shape& sh, int from, int to, Dir dir) {
        Bidegree a = sh.cells[size_t(from)], b = sh.cells[size_t(to)];
        if (DoubleComplex::target_of(dir, a) != b) return false;
        if (sh.kind == Shape::Kind::Square)
            return square_arrow_coef(from, to) != 0;
        return from + 1 == to || to + 1 == from;
    };

    for (Bidegree b : dc.support())
        for (Dir dir : {Dir::H, Dir::V}) {
            Bidegree t = DoubleComplex::target_of(dir, b);
            if (dc.dim(t) == 0) continue;
            Mat m = dc.map(dir, b);
            Mat conj = wit_inv.at(t) * m * wit.at(b);
            const auto& src_members = members.at(b);
            const auto& tgt_members = members.at(t);
            for (int i = 0; i < conj.rows(); ++i)
                for (int j = 0; j < conj.cols(); ++j) {
                    auto [sj, cj] = src_members[size_t(j)];
                    auto [si, ci] = tgt_members[size_t(i)];
                    bool allowed = sj == si && arrow_between(dec.summands[size_t(sj)].shape,
                                                             cj, ci, dir);
                    if (allowed && conj.at(i, j).is_zero())
                        return fail("declared arrow vanishes in " +
                                    dec.summands[size_t(sj)].shape.str());
                    if (!allowed && !conj.at(i, j).is_zero())
                        return fail("stray entry between summands at " + b.str() + " dir " +
                                    dir_char(dir));
                }
        }

    int covered = 0;
    for (const Summand& s : dec.summands) covered += s.shape.length();
    if (covered != dc.total_dim()) return fail("summands do not cover the complex");
    return true;
}

DoubleComplex shape_complex(const Shape& shape) {
    int pmin = shape.cells.front().p, pmax = pmin;
    int qmin = shape.cells.front().q, qmax = qmin;
    for (Bidegree b : shape.cells) {
        pmin = std::min(pmin, b.p);
        pmax = std::max(pmax, b.p);
        qmin = std::min(qmin, b.q);
        qmax = std::max(qmax, b.q);
    }
    DoubleComplex dc(pmin, pmax, qmin, qmax);
    for (Bidegree b : shape.cells) dc.set_dim(b, 1);
    auto put = [&](Bidegree from, Bidegree to, int coef) {
        Dir dir = to.p == from.p + 1 ? Dir::H : Dir::V;
        Mat m(1, 1);
        m.at(0, 0) = Scalar(coef);
        dc.set_map(dir, from, m);
    };
    if (shape.kind == Shape::Kind::Square) {
        for (int from = 0; from < 4; ++from)
            for (int to = 0; to < 4; ++to)
                if (int c = square_arrow_coef(from, to))
                    put(shape.cells[size_t(from)], shape.cells[size_t(to)], c);
    } else {
        for (size_t k = 0; k + 1 < shape.cells.size(); ++k) {
            Bidegree a = shape.cells[k], b = shape.cells[k + 1];
            bool forward = (b.p > a.p) || (b.q > a.q);
            if (forward)
                put(a, b, 1);
            else
                put(b, a, 1);
        }
    }
    return dc;
}

CensusTables census_tables(const Census& census) {
    CensusTables out;
    out.de_rham.theory = Theory::DeRham;
    out.dolbeault.theory = Theory::Dolbeault;
    out.bott_chern.theory = Theory::BottChern;
    out.aeppli.theory = Theory::Aeppli;

    struct ShapeResult {
        std::vector<PageTable> pages;
        int degeneration;
        CohomologyTable tables[4];
    };

    std::vector<std::pair<ShapeResult, int>> results;
    for (const auto& [shape, count] : census.counts) {
        DoubleComplex model = shape_complex(shape);
        ShapeResult r;
        r.degeneration = degeneration_page(model);
        r.pages = pages(model);
        r.tables[0] = cohomology(model, Theory::DeRham);
        r.tables[1] = cohomology(model, Theory::Dolbeault);
        r.tables[2] = cohomology(model, Theory::BottChern);
        r.tables[3] = cohomology(model, Theory::Aeppli);
        out.degeneration = std::max(out.degeneration, r.degeneration);
        results.push_back({std::move(r), count});
    }

    for (int r = 1; r <= out.degeneration; ++r) {
        PageTable table;
        table.r = r;
        out.pages.push_back(table);
    }
    for (auto& [res, count] : results) {
        for (int r = 1; r <= out.degeneration; ++r) {
            // pages beyond a shape's own list have stabilized
            const PageTable& src = size_t(r - 1) < res.pages.size()
                                       ? res.pages[size_t(r - 1)]
                                       : res.pages.back();
            PageTable& dst = out.pages[size_t(r - 1)];
            for (const auto& [b, d] : src.dims) dst.dims[b] += d * count;
            if (size_t(r - 1) < res.pages.size())
                for (const auto& [b, d] : src.dr) dst.dr[b] += d * count;
        }
        for (const auto& [k, d] : res.tables[0].by_degree)
            out.de_rham.by_degree[k] += d * count;
        CohomologyTable* dsts[3] = {&out.dolbeault, &out.bott_chern, &out.aeppli};
        for (int t = 0; t < 3; ++t)
            for (const auto& [b, d] : res.tables[size_t(t) + 1].by_bidegree)
                dsts[t]->by_bidegree[b] += d * count;
    }
    return out;
}

std::map<Bidegree, int> census_dolbeault_counts(const Census& census) {
    std::map<Bidegree, int> out;
    for (const auto& [shape, count] : census.counts) {
        if (shape.kind == Shape::Kind::Square) continue;
        std::vector<bool> paired(shape.cells.size(), false);
        for (size_t k = 0; k < shape.arrow_word.size(); ++k)
            if (shape.arrow_word[k] == 'v') paired[k] = paired[k + 1] = true;
        for (size_t k = 0; k < shape.cells.size(); ++k)
            if (!paired[k]) out[shape.cells[k]] += count;
    }
    return out;
}

std::string export_dot(const DoubleComplex& dc, const Decomposition& dec) {
    static const char* palette[] = {"black",  "red",     "green3", "blue",
                                    "orange", "magenta", "cyan4",  "gray40"};
    std::ostringstream out;
    out << "digraph decomposition {\n";
    out << "  node [shape=point, width=0.12];\n";
    std::map<Bidegree, int> slot;
    std::map<std::pair<int, int>, std::string> node_ids;
    for (int si = 0; si < int(dec.summands.size()); ++si) {
        const Summand& s = dec.summands[size_t(si)];
        const char* color = palette[size_t(s.shape.anchor().total() % 8)];
        for (int ci = 0; ci < int(s.shape.cells.size()); ++ci) {
            Bidegree b = s.shape.cells[size_t(ci)];
            int k = slot[b]++;
            std::string id = "s" + std::to_string(si) + "c" + std::to_string(ci);
            node_ids[{si, ci}] = id;
            double x = b.p + 0.2 + 0.2 * (k % 4);
            double y = b.q + 0.2 + 0.2 * (k / 4);
            char pos[64];
            std::snprintf(pos, sizeof pos, "%.2f,%.2f!", x, y);
            out << "  " << id << " [pos=\"" << pos << "\", color=\"" << color << "\"];\n";
        }
        auto edge = [&](int from, int to) {
            out << "  " << node_ids[{si, from}] << " -> " << node_ids[{si, to}]
                << " [color=\"" << color << "\"];\n";
        };
        if (s.shape.kind == Shape::Kind::Square) {
            edge(0, 1);
            edge(0, 2);
            edge(1, 3);
            edge(2, 3);
        } else {
            for (size_t k = 0; k + 1 < s.shape.cells.size(); ++k) {
                Bidegree a = s.shape.cells[k], b2 = s.shape.cells[k + 1];
                bool forward = (b2.p > a.p) || (b2.q > a.q);
                if (forward)
                    edge(int(k), int(k + 1));
                else
                    edge(int(k + 1), int(k));
            }
        }
    }
    out << "}\n";
    return out.str();
}

std::string export_ascii(const DoubleComplex& dc, const Decomposition& dec) {
    std::ostringstream out;
    for (int q = dc.qmax(); q >= dc.qmin(); --q) {
        out << "q=" << q << " |";
        for (int p = dc.pmin(); p <= dc.pmax(); ++p) {
            std::string cell = std::to_string(dc.dim({p, q}));
            out << std::string(5 - std::min<size_t>(4, cell.size()), ' ') << cell;
        }
        out << '\n';
    }
    out << "     +" << std::string(size_t(5 * (dc.pmax() - dc.pmin() + 1)), '-') << '\n';
    out << "      ";
    for (int p = dc.pmin(); p <= dc.pmax(); ++p) {
        std::string head = "p=" + std::to_string(p);
        out << std::string(5 - std::min<size_t>(4, head.size()), ' ') << head;
    }
    out << '\n';
    Census census = dec.census();
    for (const auto& [shape, count] : census.counts)
        out << count << " x " << shape.str() << '\n';
    return out.str();
}

} // namespace bicx

#include "bicx/complex.hpp"

#include <algorithm>
#include <sstream>

#include "bicx/errors.hpp"

namespace bicx {

std::string ValidationIssue::str() const {
    switch (kind) {
        case HSquare: return "d1 o d1 != 0 from " + at.str();
        case VSquare: return "d2 o d2 != 0 from " + at.str();
        default: return "d1 o d2 + d2 o d1 != 0 from " + at.str();
    }
}

std::string ValidationReport::str() const {
    if (ok()) return "valid\n";
    std::string out;
    for (const auto& issue : issues) out += issue.str() + "\n";
    return out;
}

DoubleComplex::DoubleComplex(int pmin, int pmax, int qmin, int qmax)
    : pmin_(pmin), pmax_(pmax), qmin_(qmin), qmax_(qmax) {
    if (pmin > pmax || qmin > qmax)
        throw malformed_complex("empty bidegree box");
}

void DoubleComplex::check_in_box(Bidegree b, const char* what) const {
    if (!in_box(b))
        throw malformed_complex(std::string(what) + " at " + b.str() +
                                " outside the bidegree box");
}

int DoubleComplex::dim(Bidegree b) const {
    auto it = dims_.find(b);
    return it == dims_.end() ? 0 : it->second;
}

int DoubleComplex::total_dim() const {
    int n = 0;
    for (const auto& [b, d] : dims_) n += d;
    return n;
}

void DoubleComplex::set_dim(Bidegree b, int dim) {
    check_in_box(b, "space");
    if (dim < 0) throw malformed_complex("negative dimension at " + b.str());
    if (dim != this->dim(b)) {
        // Any stored map touching this space now has the wrong shape.
        maps_.erase({b, Dir::H});
        maps_.erase({b, Dir::V});
        maps_.erase({Bidegree{b.p - 1, b.q}, Dir::H});
        maps_.erase({Bidegree{b.p, b.q - 1}, Dir::V});
    }
    if (dim == 0) {
        dims_.erase(b);
        labels_.erase(b);
        return;
    }
    dims_[b] = dim;
    auto& lab = labels_[b];
    lab.resize(size_t(dim));
    for (int i = 0; i < dim; ++i)
        if (lab[size_t(i)].empty()) lab[size_t(i)] = "e" + std::to_string(i + 1);
}

const std::vector<std::string>& DoubleComplex::labels(Bidegree b) const {
    static const std::vector<std::string> none;
    auto it = labels_.find(b);
    return it == labels_.end() ? none : it->second;
}

void DoubleComplex::set_labels(Bidegree b, std::vector<std::string> labels) {
    if (int(labels.size()) != dim(b))
        throw malformed_complex("label count differs from dimension at " + b.str());
    for (const auto& l : labels)
        if (l.empty() || l.find_first_of(" \t\n") != std::string::npos)
            throw malformed_complex("bad label at " + b.str());
    if (!labels.empty()) labels_[b] = std::move(labels);
}

Mat DoubleComplex::map(Dir dir, Bidegree source) const {
    auto it = maps_.find({source, dir});
    if (it != maps_.end()) return it->second;
    return Mat(dim(target_of(dir, source)), dim(source));
}

bool DoubleComplex::has_map(Dir dir, Bidegree source) const {
    return maps_.count({source, dir}) != 0;
}

void DoubleComplex::set_map(Dir dir, Bidegree source, Mat m) {
    check_in_box(source, "map source");
    Bidegree target = target_of(dir, source);
    if (m.rows() != dim(target) || m.cols() != dim(source))
        throw malformed_complex("map shape at " + source.str() + " dir " +
                                dir_char(dir) + ": got " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + ", expected " +
                                std::to_string(dim(target)) + "x" +
                                std::to_string(dim(source)));
    if (m.is_zero()) {
        maps_.erase({source, dir});
        return;
    }
    maps_[{source, dir}] = std::move(m);
}

std::vector<Bidegree> DoubleComplex::support() const {
    std::vector<Bidegree> s;
    s.reserve(dims_.size());
    for (const auto& [b, d] : dims_) s.push_back(b);
    return s;
}

ValidationReport DoubleComplex::validate() const {
    ValidationReport report;
    for (const auto& [b, d] : dims_) {
        Bidegree th = target_of(Dir::H, b);
        Bidegree tv = target_of(Dir::V, b);
        if (!(map(Dir::H, th) * map(Dir::H, b)).is_zero())
            report.issues.push_back({ValidationIssue::HSquare, b});
        if (!(map(Dir::V, tv) * map(Dir::V, b)).is_zero())
            report.issues.push_back({ValidationIssue::VSquare, b});
        Mat anti = map(Dir::V, th) * map(Dir::H, b) + map(Dir::H, tv) * map(Dir::V, b);
        if (!anti.is_zero())
            report.issues.push_back({ValidationIssue::Anticommute, b});
    }
    return report;
}

DoubleComplex DoubleComplex::direct_sum(const DoubleComplex& a, const DoubleComplex& b) {
    DoubleComplex s(std::min(a.pmin_, b.pmin_), std::max(a.pmax_, b.pmax_),
                    std::min(a.qmin_, b.qmin_), std::max(a.qmax_, b.qmax_));
    for (const auto& part : {&a, &b})
        for (const auto& [bd, d] : part->dims_) {
            int base = s.dim(bd);
            s.set_dim(bd, base + d);
        }
    for (const auto& [bd, d] : s.dims_) {
        std::vector<std::string> lab;
        for (int i = 0; i < a.dim(bd); ++i) lab.push_back("a." + a.labels(bd)[size_t(i)]);
        for (int i = 0; i < b.dim(bd); ++i) lab.push_back("b." + b.labels(bd)[size_t(i)]);
        s.set_labels(bd, std::move(lab));
    }
    for (Dir dir : {Dir::H, Dir::V})
        for (const auto& [bd, d] : s.dims_) {
            Bidegree t = target_of(dir, bd);
            if (s.dim(t) == 0) continue;
            Mat m(s.dim(t), s.dim(bd));
            Mat ma = a.map(dir, bd);
            Mat mb = b.map(dir, bd);
            for (int i = 0; i < ma.rows(); ++i)
                for (int j = 0; j < ma.cols(); ++j) m.at(i, j) = ma.at(i, j);
            for (int i = 0; i < mb.rows(); ++i)
                for (int j = 0; j < mb.cols(); ++j)
                    m.at(a.dim(t) + i, a.dim(bd) + j) = mb.at(i, j);
            s.set_map(dir, bd, std::move(m));
        }
    return s;
}

TotalComplex totalize(const DoubleComplex& dc) {
    TotalComplex tc;
    auto support = dc.support();
    if (support.empty()) {
        tc.kmin = 0;
        tc.kmax = -1;
        return tc;
    }
    tc.kmin = support.front().total();
    tc.kmax = tc.kmin;
    for (Bidegree b : support) {
        tc.kmin = std::min(tc.kmin, b.total());
        tc.kmax = std::max(tc.kmax, b.total());
    }
    int span = tc.kmax - tc.kmin + 1;
    tc.dims.assign(size_t(span), 0);
    tc.layout.assign(size_t(span), {});
    for (int k = tc.kmin; k <= tc.kmax; ++k)
        for (int p = dc.pmin(); p <= dc.pmax(); ++p) {
            Bidegree b{p, k - p};
            if (!dc.in_box(b) || dc.dim(b) == 0) continue;
            tc.layout[size_t(k - tc.kmin)].push_back({b, tc.dims[size_t(k - tc.kmin)]});
            tc.dims[size_t(k - tc.kmin)] += dc.dim(b);
        }
    tc.d.assign(size_t(span), Mat());
    for (int k = tc.kmin; k <= tc.kmax; ++k) {
        int next = (k + 1 <= tc.kmax) ? tc.dims[size_t(k + 1 - tc.kmin)] : 0;
        Mat m(next, tc.dims[size_t(k - tc.kmin)]);
        if (k + 1 <= tc.kmax) {
            auto offset_of = [&](Bidegree b) -> int {
                for (const auto& [bd, off] : tc.layout[size_t(k + 1 - tc.kmin)])
                    if (bd == b) return off;
                return -1;
            };
            for (const auto& [b, off] : tc.layout[size_t(k - tc.kmin)])
                for (Dir dir : {Dir::H, Dir::V}) {
                    Bidegree t = DoubleComplex::target_of(dir, b);
                    int toff = offset_of(t);
                    if (toff < 0) continue;
                    Mat block = dc.map(dir, b);
                    for (int i = 0; i < block.rows(); ++i)
                        for (int j = 0; j < block.cols(); ++j)
                            m.at(toff + i, off + j) += block.at(i, j);
                }
        }
        tc.d[size_t(k - tc.kmin)] = std::move(m);
    }
    return tc;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& tok, int lineno) {
    size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &used);
    } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(lineno) + ": expected integer, got '" + tok + "'");
    }
    if (used != tok.size())
        throw parse_error("line " + std::to_string(lineno) + ": expected integer, got '" + tok + "'");
    return v;
}

} // namespace

std::string write_document(const DoubleComplex& dc) {
    std::ostringstream out;
    out << "bicomplex v1\n";
    out << "bounds " << dc.pmin() << ' ' << dc.pmax() << ' ' << dc.qmin() << ' '
        << dc.qmax() << '\n';
    for (Bidegree b : dc.support()) {
        out << "space " << b.p << ' ' << b.q << ' ' << dc.dim(b);
        for (const auto& l : dc.labels(b)) out << ' ' << l;
        out << '\n';
    }
    for (Bidegree b : dc.support())
        for (Dir dir : {Dir::H, Dir::V}) {
            Mat m = dc.map(dir, b);
            if (m.is_zero()) continue;
            out << "map " << b.p << ' ' << b.q << ' ' << dir_char(dir) << '\n';
            out << m.str();
        }
    return out.str();
}

DoubleComplex read_document(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty()) return true;
        }
        return false;
    };

    if (!next_line() || line != "bicomplex v1")
        throw parse_error("line 1: expected header 'bicomplex v1'");
    if (!next_line())
        throw parse_error("line " + std::to_string(lineno + 1) + ": expected bounds");
    auto toks = split_ws(line);
    if (toks.size() != 5 || toks[0] != "bounds")
        throw parse_error("line " + std::to_string(lineno) + ": expected 'bounds pmin pmax qmin qmax'");
    auto make_box = [&]() -> DoubleComplex {
        try {
            return DoubleComplex(parse_int(toks[1], lineno), parse_int(toks[2], lineno),
                                 parse_int(toks[3], lineno), parse_int(toks[4], lineno));
        } catch (const malformed_complex& e) {
            throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    };
    DoubleComplex dc = make_box();

    bool seen_map = false;
    while (next_line()) {
        toks = split_ws(line);
        if (toks[0] == "space") {
            if (seen_map)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": space record after map records");
            if (toks.size() < 4)
                throw parse_error("line " + std::to_string(lineno) + ": expected 'space p q dim labels...'");
            Bidegree b{parse_int(toks[1], lineno), parse_int(toks[2], lineno)};
            int d = parse_int(toks[3], lineno);
            if (int(toks.size()) != 4 + d)
                throw parse_error("line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(d) + " labels");
            try {
                dc.set_dim(b, d);
                dc.set_labels(b, std::vector<std::string>(toks.begin() + 4, toks.end()));
            } catch (const error& e) {
                throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
            }
        } else if (toks[0] == "map") {
            seen_map = true;
            if (toks.size() != 4 || (toks[3] != "h" && toks[3] != "v"))
                throw parse_error("line " + std::to_string(lineno) + ": expected 'map p q h|v'");
            Bidegree b{parse_int(toks[1], lineno), parse_int(toks[2], lineno)};
            Dir dir = toks[3] == "h" ? Dir::H : Dir::V;
            int rows = dc.dim(DoubleComplex::target_of(dir, b));
            int cols = dc.dim(b);
            if (rows == 0 || cols == 0)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": map record for a zero-dimensional space");
            Mat m(rows, cols);
            for (int i = 0; i < rows; ++i) {
                if (!next_line())
                    throw parse_error("line " + std::to_string(lineno + 1) +
                                      ": unexpected end of matrix");
                auto row = split_ws(line);
                if (int(row.size()) != cols)
                    throw parse_error("line " + std::to_string(lineno) + ": expected " +
                                      std::to_string(cols) + " entries");
                for (int j = 0; j < cols; ++j) {
                    try {
                        m.at(i, j) = Scalar::parse(row[size_t(j)]);
                    } catch (const parse_error& e) {
                        throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
                    }
                }
            }
            try {
                dc.set_map(dir, b, std::move(m));
            } catch (const error& e) {
                throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
            }
        } else {
            throw parse_error("line " + std::to_string(lineno) + ": unknown record '" +
                              toks[0] + "'");
        }
    }
    return dc;
}

} // namespace bicx

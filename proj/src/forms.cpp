#include "bicx/forms.hpp"

#include <algorithm>
#include <sstream>

#include "bicx/errors.hpp"

namespace bicx {

namespace {

// One generator letter: barred flag plus index 1..n.  Letters compare in the
// canonical monomial order, unbarred block first.
using Letter = std::pair<int, int>;
using Word = std::vector<Letter>;

struct CanonWord {
    Word word;
    int sign = 0; // 0 when the word contains a repeated letter
};

CanonWord canonicalize(Word w) {
    int sign = 1;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        for (size_t j = 0; j + 1 < w.size() - i; ++j) {
            if (w[j] == w[j + 1]) return {{}, 0};
            if (w[j + 1] < w[j]) {
                std::swap(w[j], w[j + 1]);
                sign = -sign;
            }
        }
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1]) return {{}, 0};
    return {std::move(w), sign};
}

// Differential of a single letter as a list of (coefficient, two-letter word).
std::vector<std::pair<Scalar, Word>> d_letter(const StructureEquations& eq, Letter l) {
    std::vector<std::pair<Scalar, Word>> out;
    auto [bar, k] = l;
    for (const auto& [key, c] : eq.hol) {
        if (key[0] != k) continue;
        if (bar == 0)
            out.push_back({c, {{0, key[1]}, {0, key[2]}}});
        else
            out.push_back({c.conj(), {{1, key[1]}, {1, key[2]}}});
    }
    for (const auto& [key, c] : eq.mix) {
        if (key[0] != k) continue;
        if (bar == 0)
            out.push_back({c, {{0, key[1]}, {1, key[2]}}});
        else
            out.push_back({-c.conj(), {{0, key[2]}, {1, key[1]}}});
    }
    return out;
}

// Graded Leibniz extension: d(w) as canonical-word coefficients.
std::map<Word, Scalar> d_word(const StructureEquations& eq, const Word& w) {
    std::map<Word, Scalar> out;
    for (size_t t = 0; t < w.size(); ++t) {
        int pos_sign = (t % 2 == 0) ? 1 : -1;
        for (const auto& [c, repl] : d_letter(eq, w[t])) {
            Word full;
            full.insert(full.end(), w.begin(), w.begin() + long(t));
            full.insert(full.end(), repl.begin(), repl.end());
            full.insert(full.end(), w.begin() + long(t) + 1, w.end());
            CanonWord cw = canonicalize(std::move(full));
            if (cw.sign == 0) continue;
            Scalar coeff = Scalar(pos_sign * cw.sign) * c;
            auto [it, fresh] = out.try_emplace(cw.word, coeff);
            if (!fresh) it->second += coeff;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

Word make_word(const std::vector<int>& unbarred, const std::vector<int>& barred) {
    Word w;
    for (int i : unbarred) w.push_back({0, i});
    for (int j : barred) w.push_back({1, j});
    return w;
}

std::string letter_name(Letter l) {
    return (l.first ? "fb" : "f") + std::to_string(l.second);
}

void check_range(int n, int k, int i, int j, const char* what) {
    auto bad = [&](int v) { return v < 1 || v > n; };
    if (bad(k) || bad(i) || bad(j))
        throw parse_error(std::string(what) + " term " + std::to_string(k) + " " +
                          std::to_string(i) + " " + std::to_string(j) +
                          ": index out of range 1.." + std::to_string(n));
}

// Positions of all monomials of one bidegree, mapping canonical word -> index.
struct MonoIndex {
    std::vector<Word> words;
    std::map<Word, int> index;
};

MonoIndex monomials(int n, int p, int q) {
    MonoIndex m;
    for (const auto& I : combinations(n, p))
        for (const auto& J : combinations(n, q)) {
            Word w = make_word(I, J);
            m.index[w] = int(m.words.size());
            m.words.push_back(std::move(w));
        }
    return m;
}

} // namespace

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(size_t(k), 0);
    for (int i = 0; i < k; ++i) cur[size_t(i)] = i + 1;
    while (true) {
        out.push_back(cur);
        int t = k - 1;
        while (t >= 0 && cur[size_t(t)] == n - (k - 1 - t)) --t;
        if (t < 0) break;
        ++cur[size_t(t)];
        for (int s = t + 1; s < k; ++s) cur[size_t(s)] = cur[size_t(s - 1)] + 1;
    }
    return out;
}

std::string monomial_label(const std::vector<int>& unbarred, const std::vector<int>& barred) {
    if (unbarred.empty() && barred.empty()) return "1";
    auto digits = [](const std::vector<int>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i && v[i - 1] > 9) s += '_';
            else if (i && v[i] > 9) s += '_';
            s += std::to_string(v[size_t(i)]);
        }
        return s;
    };
    std::string s;
    if (!unbarred.empty()) s = "f" + digits(unbarred);
    if (!barred.empty()) s += "b" + digits(barred);
    return s;
}

void StructureEquations::set_hol(int k, int i, int j, const Scalar& c) {
    check_range(n, k, i, j, "hol");
    if (i >= j)
        throw parse_error("hol term " + std::to_string(k) + " " + std::to_string(i) +
                          " " + std::to_string(j) + ": needs i < j");
    if (c.is_zero())
        hol.erase({k, i, j});
    else
        hol[{k, i, j}] = c;
}

void StructureEquations::set_mix(int k, int i, int j, const Scalar& c) {
    check_range(n, k, i, j, "mix");
    if (c.is_zero())
        mix.erase({k, i, j});
    else
        mix[{k, i, j}] = c;
}

std::string write_equations(const StructureEquations& eq) {
    std::ostringstream out;
    out << "equations v1\n";
    out << "n " << eq.n << '\n';
    for (const auto& [key, c] : eq.hol)
        out << "hol " << key[0] << ' ' << key[1] << ' ' << key[2] << ' ' << c.str() << '\n';
    for (const auto& [key, c] : eq.mix)
        out << "mix " << key[0] << ' ' << key[1] << ' ' << key[2] << ' ' << c.str() << '\n';
    return out.str();
}

StructureEquations parse_equations(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line[0] != '#') return true;
        }
        return false;
    };
    auto fail = [&](const std::string& why) -> parse_error {
        return parse_error("line " + std::to_string(lineno) + ": " + why);
    };

    if (!next_line() || line != "equations v1")
        throw parse_error("line 1: expected header 'equations v1'");
    if (!next_line()) throw fail("expected 'n <count>'");
    std::istringstream head(line);
    std::string kw;
    int n = 0;
    if (!(head >> kw >> n) || kw != "n" || n < 1)
        throw fail("expected 'n <count>' with a positive count");
    StructureEquations eq(n);

    while (next_line()) {
        std::istringstream rec(line);
        std::string what, coeff;
        int k = 0, i = 0, j = 0;
        if (!(rec >> what >> k >> i >> j >> coeff) || (what != "hol" && what != "mix"))
            throw fail("expected 'hol|mix k i j coefficient'");
        std::string extra;
        if (rec >> extra) throw fail("trailing characters");
        try {
            Scalar c = Scalar::parse(coeff);
            auto& table = what == "hol" ? eq.hol : eq.mix;
            if (table.count({k, i, j})) throw fail("duplicate term");
            if (what == "hol")
                eq.set_hol(k, i, j, c);
            else
                eq.set_mix(k, i, j, c);
        } catch (const parse_error& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            throw fail(msg);
        }
    }
    return eq;
}

DoubleComplex build_forms_complex(const StructureEquations& eq) {
    if (eq.n < 1) throw inconsistent_equations("generator count must be positive");

    // A derivation squares to zero on everything iff it does on generators.
    for (int bar = 0; bar <= 1; ++bar)
        for (int k = 1; k <= eq.n; ++k) {
            Letter g{bar, k};
            std::map<Word, Scalar> dd;
            for (const auto& [c, w] : d_letter(eq, g)) {
                CanonWord cw = canonicalize(w);
                if (cw.sign == 0) continue;
                for (const auto& [w2, c2] : d_word(eq, cw.word)) {
                    Scalar coeff = Scalar(cw.sign) * c * c2;
                    auto [it, fresh] = dd.try_emplace(w2, coeff);
                    if (!fresh) it->second += coeff;
                    if (it->second.is_zero()) dd.erase(it);
                }
            }
            if (!dd.empty()) {
                std::string term;
                for (Letter l : dd.begin()->first) term += letter_name(l) + " ";
                throw inconsistent_equations(
                    "d d " + letter_name(g) + " != 0; surviving term " +
                    dd.begin()->second.str() + " * " + term.substr(0, term.size() - 1));
            }
        }

    int n = eq.n;
    DoubleComplex dc(0, n, 0, n);
    std::vector<std::vector<MonoIndex>> mono(size_t(n + 1),
                                             std::vector<MonoIndex>(size_t(n + 1)));
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            mono[size_t(p)][size_t(q)] = monomials(n, p, q);
            const auto& mi = mono[size_t(p)][size_t(q)];
            dc.set_dim({p, q}, int(mi.words.size()));
            std::vector<std::string> labels;
            for (const Word& w : mi.words) {
                std::vector<int> I, J;
                for (Letter l : w) (l.first ? J : I).push_back(l.second);
                labels.push_back(monomial_label(I, J));
            }
            dc.set_labels({p, q}, std::move(labels));
        }

    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            const auto& src = mono[size_t(p)][size_t(q)];
            Mat mh(dc.dim({p + 1, q}), dc.dim({p, q}));
            Mat mv(dc.dim({p, q + 1}), dc.dim({p, q}));
            for (int c = 0; c < int(src.words.size()); ++c)
                for (const auto& [w, coeff] : d_word(eq, src.words[size_t(c)])) {
                    int bars = 0;
                    for (Letter l : w) bars += l.first;
                    if (int(w.size()) - bars == p + 1) {
                        mh.at(mono[size_t(p + 1)][size_t(q)].index.at(w), c) = coeff;
                    } else {
                        mv.at(mono[size_t(p)][size_t(q + 1)].index.at(w), c) = coeff;
                    }
                }
            if (p + 1 <= n) dc.set_map(Dir::H, {p, q}, std::move(mh));
            if (q + 1 <= n) dc.set_map(Dir::V, {p, q}, std::move(mv));
        }
    return dc;
}

bool conjugation_compatible(const DoubleComplex& dc, int n, std::string* why) {
    if (dc.pmin() != 0 || dc.pmax() != n || dc.qmin() != 0 || dc.qmax() != n) {
        if (why) *why = "bidegree box is not the forms grid";
        return false;
    }
    std::vector<std::vector<MonoIndex>> mono(size_t(n + 1),
                                             std::vector<MonoIndex>(size_t(n + 1)));
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) mono[size_t(p)][size_t(q)] = monomials(n, p, q);

    // Bar-swap of the monomial at position c of bidegree (p,q): index within
    // (q,p) together with the reordering sign (-1)^{pq}.
    auto swapped = [&](int p, int q, int c) {
        const Word& w = mono[size_t(p)][size_t(q)].words[size_t(c)];
        std::vector<int> I, J;
        for (Letter l : w) (l.first ? J : I).push_back(l.second);
        return mono[size_t(q)][size_t(p)].index.at(make_word(J, I));
    };
    auto sign = [](int p, int q) { return (p * q) % 2 ? Scalar(-1) : Scalar(1); };

    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            for (int dirstep = 0; dirstep <= 1; ++dirstep) {
                Dir dir = dirstep == 0 ? Dir::H : Dir::V;
                int tp = dir == Dir::H ? p + 1 : p;
                int tq = dir == Dir::H ? q : q + 1;
                if (tp > n || tq > n) continue;
                Mat m = dc.map(dir, {p, q});
                Mat other = dc.map(dir == Dir::H ? Dir::V : Dir::H, {q, p});
                for (int c = 0; c < m.cols(); ++c)
                    for (int t = 0; t < m.rows(); ++t) {
                        Scalar lhs = m.at(t, c).conj() * sign(tp, tq);
                        Scalar rhs = sign(p, q) * other.at(swapped(tp, tq, t), swapped(p, q, c));
                        if (lhs != rhs) {
                            if (why)
                                *why = "mismatch at " + Bidegree{p, q}.str() + " dir " +
                                       dir_char(dir) + " entry (" + std::to_string(t) +
                                       "," + std::to_string(c) + ")";
                            return false;
                        }
                    }
            }
    return true;
}

} // namespace bicx

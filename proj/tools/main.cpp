// Command-line front end: build, validate, decompose, page computation,
// table export, and the reproduction harness over the preset catalog.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bicx/catalog.hpp"
#include "bicx/complex.hpp"
#include "bicx/decompose.hpp"
#include "bicx/errors.hpp"
#include "bicx/forms.hpp"
#include "bicx/reference.hpp"
#include "bicx/spectral.hpp"

namespace {

using nlohmann::ordered_json;
using namespace bicx;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kBadInput = 2;
constexpr int kInternal = 3;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw error("cannot open output file '" + out_path + "'");
    f << text;
}

/// First non-blank, non-comment line decides the document kind.
DoubleComplex load_complex(const std::string& preset, const std::string& input) {
    if (!preset.empty()) return build_preset(preset);
    std::string text = slurp(input);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#') continue;
        if (line.compare(a, 9, "bicomplex") == 0) return read_document(text);
        if (line.compare(a, 9, "equations") == 0)
            return build_forms_complex(parse_equations(text));
        break;
    }
    throw parse_error("'" + input +
                      "': expected a 'bicomplex v1' or 'equations v1' document");
}

/// Display order of the cells of the box: ascending total degree, then
/// descending first index, the order the page tables are usually printed in.
std::vector<Bidegree> column_order(const DoubleComplex& dc) {
    std::vector<Bidegree> cols;
    for (int p = dc.pmin(); p <= dc.pmax(); ++p)
        for (int q = dc.qmin(); q <= dc.qmax(); ++q) cols.push_back({p, q});
    std::sort(cols.begin(), cols.end(), [](Bidegree a, Bidegree b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.p > b.p;
    });
    return cols;
}

/// Right-aligns every column except the leading label column.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> w;
    for (const auto& r : rows)
        for (size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i) w.resize(i + 1, 0);
            w[i] = std::max(w[i], r[i].size());
        }
    std::ostringstream out;
    for (const auto& r : rows) {
        std::string line;
        for (size_t i = 0; i < r.size(); ++i) {
            std::string pad(w[i] - r[i].size(), ' ');
            if (i == 0)
                line += r[i] + pad;
            else
                line += "  " + pad + r[i];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
    return out.str();
}

void unsupported_format(const std::string& verb, const std::string& format) {
    throw parse_error("format '" + format + "' is not supported by '" + verb + "'");
}

// ---------------------------------------------------------------- validate

int cmd_validate(const DoubleComplex& dc, const std::string& format,
                 const std::string& out_path) {
    ValidationReport report = dc.validate();
    std::string text;
    if (format == "text") {
        text = report.ok() ? "valid\n" : report.str();
    } else if (format == "json") {
        ordered_json j;
        j["valid"] = report.ok();
        j["issues"] = ordered_json::array();
        for (const auto& issue : report.issues) j["issues"].push_back(issue.str());
        text = j.dump(2) + "\n";
    } else {
        unsupported_format("validate", format);
    }
    emit(text, out_path);
    return report.ok() ? kOk : kMismatch;
}

// ------------------------------------------------------------------- build

int cmd_build(const DoubleComplex& dc, const std::string& format,
              const std::string& out_path) {
    if (format != "text") unsupported_format("build", format);
    emit(write_document(dc), out_path);
    return kOk;
}

// ------------------------------------------------------------------- pages

int cmd_pages(const DoubleComplex& dc, int max_page, const std::string& format,
              const std::string& out_path) {
    std::vector<PageTable> tables = pages(dc, max_page);
    if (max_page > 0 && int(tables.size()) > max_page) tables.resize(size_t(max_page));
    int deg = degeneration_page(dc);
    std::vector<Bidegree> cols = column_order(dc);

    std::string text;
    if (format == "text") {
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> head{""};
        for (Bidegree b : cols) head.push_back(b.str());
        rows.push_back(head);
        for (const PageTable& t : tables) {
            std::vector<std::string> row{"E" + std::to_string(t.r)};
            for (Bidegree b : cols) row.push_back(std::to_string(t.dim(b)));
            rows.push_back(row);
        }
        text = render_table(rows) + "degenerates at page " + std::to_string(deg) + "\n";
    } else if (format == "csv") {
        std::ostringstream out;
        out << "page,p,q,dim,d_rank\n";
        for (const PageTable& t : tables)
            for (Bidegree b : cols)
                out << t.r << ',' << b.p << ',' << b.q << ',' << t.dim(b) << ','
                    << t.dr_rank(b) << '\n';
        out << "# degenerates at page " << deg << '\n';
        text = out.str();
    } else if (format == "json") {
        ordered_json j;
        j["degeneration"] = deg;
        j["pages"] = ordered_json::array();
        for (const PageTable& t : tables) {
            ordered_json jp;
            jp["page"] = t.r;
            jp["cells"] = ordered_json::array();
            for (Bidegree b : cols) {
                ordered_json c;
                c["p"] = b.p;
                c["q"] = b.q;
                c["dim"] = t.dim(b);
                c["d_rank"] = t.dr_rank(b);
                jp["cells"].push_back(c);
            }
            j["pages"].push_back(jp);
        }
        text = j.dump(2) + "\n";
    } else {
        unsupported_format("pages", format);
    }
    emit(text, out_path);
    return kOk;
}

// -------------------------------------------------------------- cohomology

struct TheoryRow {
    Theory theory;
    CohomologyTable direct, via_census;
    bool agree = true;
};

const CohomologyTable& census_table_for(const CensusTables& ct, Theory t) {
    switch (t) {
        case Theory::DeRham: return ct.de_rham;
        case Theory::Dolbeault: return ct.dolbeault;
        case Theory::BottChern: return ct.bott_chern;
        default: return ct.aeppli;
    }
}

int cmd_cohomology(const DoubleComplex& dc, const std::string& theory_filter,
                   const std::string& format, const std::string& out_path) {
    std::vector<Theory> wanted;
    for (Theory t : {Theory::DeRham, Theory::Dolbeault, Theory::BottChern,
                     Theory::Aeppli}) {
        std::string n = theory_name(t);
        if (theory_filter.empty() || theory_filter == n ||
            (theory_filter == "derham" && t == Theory::DeRham))
            wanted.push_back(t);
    }
    if (wanted.empty())
        throw parse_error("unknown theory '" + theory_filter +
                          "' (known: derham, dolbeault, bott-chern, aeppli)");

    CensusTables ct = census_tables(decompose(dc).census());
    std::vector<Bidegree> cols = column_order(dc);
    int kmin = dc.pmin() + dc.qmin();
    int kmax = dc.pmax() + dc.qmax();

    std::vector<TheoryRow> results;
    bool all_agree = true;
    for (Theory t : wanted) {
        TheoryRow row;
        row.theory = t;
        row.direct = cohomology(dc, t);
        row.via_census = census_table_for(ct, t);
        if (t == Theory::DeRham) {
            for (int k = kmin; k <= kmax; ++k)
                if (row.direct.dim(k) != row.via_census.dim(k)) row.agree = false;
        } else {
            for (Bidegree b : cols)
                if (row.direct.dim(b) != row.via_census.dim(b)) row.agree = false;
        }
        all_agree = all_agree && row.agree;
        results.push_back(std::move(row));
    }

    std::string text;
    if (format == "text") {
        std::ostringstream out;
        bool first = true;
        for (const TheoryRow& row : results) {
            if (!first) out << '\n';
            first = false;
            out << "theory " << theory_name(row.theory) << '\n';
            std::vector<std::vector<std::string>> rows;
            if (row.theory == Theory::DeRham) {
                std::vector<std::string> head{"  degree"}, a{"  direct"}, b{"  census"};
                for (int k = kmin; k <= kmax; ++k) {
                    head.push_back(std::to_string(k));
                    a.push_back(std::to_string(row.direct.dim(k)));
                    b.push_back(std::to_string(row.via_census.dim(k)));
                }
                rows = {head, a, b};
            } else {
                std::vector<std::string> head{"  cell"}, a{"  direct"}, b{"  census"};
                for (Bidegree c : cols) {
                    head.push_back(c.str());
                    a.push_back(std::to_string(row.direct.dim(c)));
                    b.push_back(std::to_string(row.via_census.dim(c)));
                }
                rows = {head, a, b};
            }
            out << render_table(rows);
            out << "  agreement: " << (row.agree ? "exact" : "MISMATCH") << '\n';
        }
        text = out.str();
    } else if (format == "csv") {
        std::ostringstream out;
        out << "theory,path,p,q,dim\n";
        for (const TheoryRow& row : results) {
            std::string n = theory_name(row.theory);
            if (row.theory == Theory::DeRham) {
                for (int k = kmin; k <= kmax; ++k)
                    out << n << ",direct," << k << ",," << row.direct.dim(k) << '\n';
                for (int k = kmin; k <= kmax; ++k)
                    out << n << ",census," << k << ",," << row.via_census.dim(k) << '\n';
            } else {
                for (Bidegree b : cols)
                    out << n << ",direct," << b.p << ',' << b.q << ','
                        << row.direct.dim(b) << '\n';
                for (Bidegree b : cols)
                    out << n << ",census," << b.p << ',' << b.q << ','
                        << row.via_census.dim(b) << '\n';
            }
        }
        text = out.str();
    } else if (format == "json") {
        ordered_json j;
        j["theories"] = ordered_json::array();
        for (const TheoryRow& row : results) {
            ordered_json jt;
            jt["name"] = theory_name(row.theory);
            if (row.theory == Theory::DeRham) {
                jt["direct"] = ordered_json::array();
                jt["census"] = ordered_json::array();
                for (int k = kmin; k <= kmax; ++k) {
                    jt["direct"].push_back({{"k", k}, {"dim", row.direct.dim(k)}});
                    jt["census"].push_back({{"k", k}, {"dim", row.via_census.dim(k)}});
                }
            } else {
                jt["direct"] = ordered_json::array();
                jt["census"] = ordered_json::array();
                for (Bidegree b : cols) {
                    jt["direct"].push_back(
                        {{"p", b.p}, {"q", b.q}, {"dim", row.direct.dim(b)}});
                    jt["census"].push_back(
                        {{"p", b.p}, {"q", b.q}, {"dim", row.via_census.dim(b)}});
                }
            }
            jt["agree"] = row.agree;
            j["theories"].push_back(jt);
        }
        text = j.dump(2) + "\n";
    } else {
        unsupported_format("cohomology", format);
    }
    emit(text, out_path);
    if (!all_agree)
        throw internal_error(
            "direct and census-derived cohomology tables disagree");
    return kOk;
}

// --------------------------------------------------------------- decompose

std::string write_witness(const Decomposition& dec) {
    std::ostringstream out;
    out << "witness v1\n";
    for (const auto& [b, m] : dec.witness()) {
        out << "bidegree " << b.p << ' ' << b.q << ' ' << m.rows() << ' '
            << m.cols() << '\n';
        out << m.str();
    }
    return out.str();
}

int cmd_decompose(const DoubleComplex& dc, const std::string& format, bool dot,
                  const std::string& witness_path, const std::string& out_path) {
    Decomposition dec = decompose(dc);
    std::string why;
    if (!verify(dc, dec, &why))
        throw internal_error("decomposition failed verification: " + why);
    Census census = dec.census();

    if (!witness_path.empty()) emit(write_witness(dec), witness_path);

    std::string fmt = dot ? "dot" : format;
    std::string text;
    if (fmt == "text") {
        std::ostringstream out;
        out << "census: " << census.summary() << '\n';
        out << "summands: " << census.total_summands() << '\n';
        out << "verified: yes\n\n";
        out << export_ascii(dc, dec);
        text = out.str();
    } else if (fmt == "dot") {
        text = export_dot(dc, dec);
    } else if (fmt == "json") {
        ordered_json j;
        j["census"] = ordered_json::array();
        for (const auto& [shape, count] : census.counts)
            j["census"].push_back({{"shape", shape.str()}, {"count", count}});
        j["summary"] = census.summary();
        j["summands"] = census.total_summands();
        j["verified"] = true;
        text = j.dump(2) + "\n";
    } else {
        unsupported_format("decompose", fmt);
    }
    emit(text, out_path);
    return kOk;
}

// --------------------------------------------------------------- reproduce

struct CheckResult {
    std::string preset, check;
    bool pass = true;
    std::vector<std::string> diffs;

    void expect(int expected, int computed, const std::string& what) {
        if (expected == computed) return;
        pass = false;
        diffs.push_back(what + ": expected " + std::to_string(expected) +
                        ", computed " + std::to_string(computed));
    }
};

CheckResult check_tables(const std::string& name, const DoubleComplex& dc,
                         const std::vector<PageTable>& pgs,
                         const ReferenceEntry& ref) {
    CheckResult r{name, "tables"};
    r.expect(ref.degeneration, pgs.back().r, "degeneration page");
    for (Bidegree b : column_order(dc)) {
        auto it = ref.e1.find(b);
        r.expect(it == ref.e1.end() ? 0 : it->second, pgs.front().dim(b),
                 "E1" + b.str());
        auto jt = ref.einf.find(b);
        r.expect(jt == ref.einf.end() ? 0 : jt->second, pgs.back().dim(b),
                 "E" + std::to_string(pgs.back().r) + b.str());
    }
    return r;
}

CheckResult check_census(const std::string& name, const Census& census,
                         const ReferenceEntry& ref) {
    CheckResult r{name, "census"};
    std::map<int, int> lengths;
    for (const auto& [shape, count] : census.counts)
        if (shape.kind == Shape::Kind::Zigzag) lengths[shape.length()] += count;
    std::map<int, int> expected = ref.zigzags;
    for (const auto& [len, n] : lengths) expected.try_emplace(len, 0);
    for (const auto& [len, n] : expected) {
        auto it = lengths.find(len);
        r.expect(n, it == lengths.end() ? 0 : it->second,
                 "L" + std::to_string(len) + " zigzags");
    }
    r.expect(ref.squares, census.squares(), "squares");
    return r;
}

CheckResult check_serre(const std::string& name, const DoubleComplex& dc,
                        const std::vector<PageTable>& pgs) {
    CheckResult r{name, "serre"};
    int sp = dc.pmin() + dc.pmax();
    int sq = dc.qmin() + dc.qmax();
    for (const PageTable& t : pgs)
        for (Bidegree b : column_order(dc)) {
            Bidegree m{sp - b.p, sq - b.q};
            if (b < m || b == m) continue;
            r.expect(t.dim(m), t.dim(b),
                     "E" + std::to_string(t.r) + b.str() + " vs " + m.str());
        }
    return r;
}

CheckResult check_euler(const std::string& name, const DoubleComplex& dc,
                        const std::vector<PageTable>& pgs,
                        const ReferenceEntry& ref) {
    CheckResult r{name, "euler"};
    for (const PageTable& t : pgs)
        r.expect(pgs.front().euler(), t.euler(),
                 "chi at page " + std::to_string(t.r));
    CohomologyTable dr = cohomology(dc, Theory::DeRham);
    int chi_dr = 0;
    for (int k = dc.pmin() + dc.qmin(); k <= dc.pmax() + dc.qmax(); ++k)
        chi_dr += k % 2 != 0 ? -dr.dim(k) : dr.dim(k);
    r.expect(pgs.front().euler(), chi_dr, "chi of the limit");
    for (int k = dc.pmin() + dc.qmin(); k <= dc.pmax() + dc.qmax(); ++k) {
        int sum = 0;
        for (Bidegree b : column_order(dc))
            if (b.total() == k) sum += pgs.back().dim(b);
        r.expect(dr.dim(k), sum, "limit total in degree " + std::to_string(k));
        auto it = ref.betti.find(k);
        r.expect(it == ref.betti.end() ? 0 : it->second, dr.dim(k),
                 "de Rham dimension in degree " + std::to_string(k));
    }
    return r;
}

int cmd_reproduce(const std::string& catalog_path, const std::string& only,
                  const std::string& format, const std::string& out_path) {
    std::vector<Preset> presets =
        catalog_path.empty() ? builtin_presets() : parse_catalog(slurp(catalog_path));
    std::sort(presets.begin(), presets.end(),
              [](const Preset& a, const Preset& b) { return a.name < b.name; });

    std::vector<CheckResult> results;
    for (const Preset& p : presets) {
        const ReferenceEntry& ref = reference_for(p.name);
        DoubleComplex dc = build_forms_complex(preset_equations(p));
        std::vector<PageTable> pgs = pages(dc, 0);
        Census census = decompose(dc).census();
        std::vector<CheckResult> batch;
        batch.push_back(check_tables(p.name, dc, pgs, ref));
        batch.push_back(check_census(p.name, census, ref));
        batch.push_back(check_serre(p.name, dc, pgs));
        batch.push_back(check_euler(p.name, dc, pgs, ref));
        for (CheckResult& r : batch)
            if (only.empty() || r.check.find(only) != std::string::npos)
                results.push_back(std::move(r));
    }
    if (results.empty())
        throw parse_error("filter '" + only + "' matches no check");

    int failed = 0;
    for (const CheckResult& r : results) failed += r.pass ? 0 : 1;

    std::string text;
    if (format == "text") {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"preset", "check", "result"});
        for (const CheckResult& r : results)
            rows.push_back({r.preset, r.check, r.pass ? "pass" : "FAIL"});
        std::ostringstream out;
        // Interleave the diff lines after each failing row by rendering the
        // aligned table first and splicing.
        std::istringstream table(render_table(rows));
        std::string line;
        std::getline(table, line);
        out << line << '\n';
        for (const CheckResult& r : results) {
            std::getline(table, line);
            out << line << '\n';
            for (const std::string& d : r.diffs) out << "    " << d << '\n';
        }
        if (failed == 0)
            out << "all " << results.size() << " checks passed\n";
        else
            out << failed << " of " << results.size() << " checks failed\n";
        text = out.str();
    } else if (format == "json") {
        ordered_json j = ordered_json::array();
        for (const CheckResult& r : results) {
            ordered_json jr;
            jr["preset"] = r.preset;
            jr["check"] = r.check;
            jr["pass"] = r.pass;
            jr["diffs"] = r.diffs;
            j.push_back(jr);
        }
        text = j.dump(2) + "\n";
    } else {
        unsupported_format("reproduce", format);
    }
    emit(text, out_path);
    return failed == 0 ? kOk : kMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"square and zigzag analysis of bounded double complexes"};
    app.require_subcommand(1);

    std::string preset, input, format = "text", out_path;
    std::string theory, witness_path, catalog_path, only;
    int max_page = 0;
    bool dot = false;

    auto add_common = [&](CLI::App* sub, bool needs_source) {
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "csv", "json", "dot"}));
        sub->add_option("--out", out_path, "write the output to a file");
        if (needs_source) {
            auto* src = sub->add_option_group("source", "what to analyze");
            src->add_option("--preset", preset, "built-in preset name");
            src->add_option("--input", input, "complex or equations document");
            src->require_option(1);
        }
        return sub;
    };

    CLI::App* c_validate =
        add_common(app.add_subcommand("validate", "check the three identities"), true);
    CLI::App* c_build = add_common(
        app.add_subcommand("build", "emit the complex as a document"), true);
    CLI::App* c_pages = add_common(
        app.add_subcommand("pages", "dimensions of the successive pages"), true);
    c_pages->add_option("--max-page", max_page, "highest page to print")
        ->check(CLI::Range(1, 13));
    CLI::App* c_decompose = add_common(
        app.add_subcommand("decompose", "split into squares and zigzags"), true);
    c_decompose->add_flag("--dot", dot, "emit the diagram in DOT form");
    c_decompose->add_option("--witness", witness_path,
                            "write the change-of-basis document to a file");
    CLI::App* c_cohomology = add_common(
        app.add_subcommand("cohomology",
                           "cohomology tables from both computation paths"),
        true);
    c_cohomology
        ->add_option("--theory", theory, "derham, dolbeault, bott-chern or aeppli")
        ->check(CLI::IsMember({"derham", "de-rham", "dolbeault", "bott-chern",
                               "aeppli"}));
    CLI::App* c_reproduce = add_common(
        app.add_subcommand("reproduce", "run every preset against the records"),
        false);
    c_reproduce->add_option("--catalog", catalog_path,
                            "catalog file instead of the built-in presets");
    c_reproduce->add_option("--only", only, "run only checks whose name matches");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (c_reproduce->parsed())
            return cmd_reproduce(catalog_path, only, format, out_path);
        DoubleComplex dc = load_complex(preset, input);
        if (c_validate->parsed()) return cmd_validate(dc, format, out_path);
        if (c_build->parsed()) return cmd_build(dc, format, out_path);
        if (c_pages->parsed()) return cmd_pages(dc, max_page, format, out_path);
        if (c_decompose->parsed())
            return cmd_decompose(dc, format, dot, witness_path, out_path);
        return cmd_cohomology(dc, theory, format, out_path);
    } catch (const internal_error& e) {
        std::cerr << "internal invariant failure: " << e.what() << '\n';
        return kInternal;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal invariant failure: " << e.what() << '\n';
        return kInternal;
    }
}

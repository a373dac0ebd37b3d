#include "bicx/catalog.hpp"

#include <algorithm>
#include <sstream>

#include "bicx/errors.hpp"

namespace bicx {

Mat s_matrix(const SigmaSet& sigma) {
    Mat s(2, 4);
    s.at(0, 0) = sigma.s11b.conj();
    s.at(0, 1) = sigma.s22b.conj();
    s.at(0, 2) = sigma.s12b.conj();
    s.at(0, 3) = sigma.s21b.conj();
    s.at(1, 0) = sigma.s11b;
    s.at(1, 1) = sigma.s22b;
    s.at(1, 2) = sigma.s21b;
    s.at(1, 3) = sigma.s12b;
    return s;
}

const char* class_name(DeformationClass c) {
    switch (c) {
        case DeformationClass::I: return "(i)";
        case DeformationClass::IIa: return "(ii.a)";
        case DeformationClass::IIb: return "(ii.b)";
        case DeformationClass::IIIa: return "(iii.a)";
        default: return "(iii.b)";
    }
}

std::optional<DeformationClass> class_from_name(const std::string& name) {
    for (DeformationClass c : {DeformationClass::I, DeformationClass::IIa,
                               DeformationClass::IIb, DeformationClass::IIIa,
                               DeformationClass::IIIb})
        if (name == class_name(c)) return c;
    return std::nullopt;
}

Classification classify(const SigmaSet& sigma, bool d_nonzero) {
    if (sigma.barred_all_zero()) {
        if (d_nonzero)
            return {std::nullopt,
                    "determinant flag is set although every conjugate-linear "
                    "coefficient vanishes"};
        return {DeformationClass::I, ""};
    }
    int r = rank(s_matrix(sigma));
    if (r == 1) return {d_nonzero ? DeformationClass::IIIa : DeformationClass::IIa, ""};
    if (r == 2) return {d_nonzero ? DeformationClass::IIIb : DeformationClass::IIb, ""};
    return {std::nullopt, "coefficient matrix has unexpected rank"};
}

std::string catalog_gap_note() {
    return "no (ii.b) entry: a rank-2 coefficient matrix with vanishing "
           "determinant needs parameters outside this catalog";
}

const std::vector<Preset>& builtin_presets() {
    static const std::vector<Preset> presets = [] {
        std::vector<Preset> v;
        Preset torus;
        torus.name = "torus";
        torus.summary = "abelian structure; every differential vanishes";
        torus.declared = DeformationClass::I;
        v.push_back(torus);

        Preset iwasawa;
        iwasawa.name = "iwasawa";
        iwasawa.summary = "Heisenberg structure d f3 = f1 f2";
        iwasawa.sigma.s12 = Scalar(1);
        iwasawa.declared = DeformationClass::I;
        v.push_back(iwasawa);

        Preset b;
        b.name = "deform-b";
        b.summary = "one conjugate-linear term; rank 1, determinant zero";
        b.sigma.s12 = Scalar(1);
        b.sigma.s11b = Scalar(1);
        b.declared = DeformationClass::IIa;
        v.push_back(b);

        Preset c;
        c.name = "deform-c";
        c.summary = "two equal conjugate-linear terms; rank 1, determinant nonzero";
        c.sigma.s12 = Scalar(1);
        c.sigma.s11b = Scalar(1);
        c.sigma.s22b = Scalar(1);
        c.d_nonzero = true;
        c.declared = DeformationClass::IIIa;
        v.push_back(c);

        Preset d;
        d.name = "deform-d";
        d.summary = "independent conjugate-linear terms; rank 2, determinant nonzero";
        d.sigma.s12 = Scalar(1);
        d.sigma.s11b = Scalar::i();
        d.sigma.s22b = Scalar(1);
        d.d_nonzero = true;
        d.declared = DeformationClass::IIIb;
        v.push_back(d);

        std::sort(v.begin(), v.end(),
                  [](const Preset& a, const Preset& b2) { return a.name < b2.name; });
        return v;
    }();
    return presets;
}

const Preset& find_preset(const std::string& name) {
    for (const Preset& p : builtin_presets())
        if (p.name == name) return p;
    std::string known;
    for (const Preset& p : builtin_presets()) {
        if (!known.empty()) known += ", ";
        known += p.name;
    }
    throw error("unknown preset '" + name + "' (known: " + known + ")");
}

StructureEquations preset_equations(const Preset& preset) {
    StructureEquations eq(3);
    eq.set_hol(3, 1, 2, preset.sigma.s12);
    eq.set_mix(3, 1, 1, preset.sigma.s11b);
    eq.set_mix(3, 1, 2, preset.sigma.s12b);
    eq.set_mix(3, 2, 1, preset.sigma.s21b);
    eq.set_mix(3, 2, 2, preset.sigma.s22b);
    return eq;
}

DoubleComplex build_preset(const std::string& name) {
    return build_forms_complex(preset_equations(find_preset(name)));
}

namespace {

struct TomlCursor {
    std::istringstream in;
    std::string line;
    int lineno = 0;

    explicit TomlCursor(const std::string& text) : in(text) {}

    bool next() {
        while (std::getline(in, line)) {
            ++lineno;
            size_t h = line.find('#');
            if (h != std::string::npos) line.erase(h);
            size_t a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            size_t b = line.find_last_not_of(" \t\r");
            line = line.substr(a, b - a + 1);
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw parse_error("line " + std::to_string(lineno) + ": " + why);
    }
};

std::string unquote(TomlCursor& c, const std::string& v) {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"')
        c.fail("expected a quoted string, got '" + v + "'");
    return v.substr(1, v.size() - 2);
}

} // namespace

std::vector<Preset> parse_catalog(const std::string& text) {
    TomlCursor c(text);
    std::vector<Preset> out;
    Preset* cur = nullptr;
    std::string declared_name;
    std::vector<std::string> declared_classes;

    while (c.next()) {
        if (c.line.front() == '[') {
            if (c.line.size() < 10 || c.line.back() != ']' ||
                c.line.compare(0, 8, "[preset.") != 0)
                c.fail("expected a [preset.NAME] section");
            std::string name = c.line.substr(8, c.line.size() - 9);
            if (name.empty()) c.fail("empty preset name");
            for (const Preset& p : out)
                if (p.name == name) c.fail("duplicate preset '" + name + "'");
            out.emplace_back();
            out.back().name = name;
            declared_classes.emplace_back();
            cur = &out.back();
            continue;
        }
        size_t eq = c.line.find('=');
        if (eq == std::string::npos) c.fail("expected 'key = value'");
        std::string key = c.line.substr(0, eq);
        std::string value = c.line.substr(eq + 1);
        auto strip = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        key = strip(key);
        value = strip(value);
        if (!cur) {
            if (key == "gap") continue; // top-level documentation string
            c.fail("key '" + key + "' outside any preset section");
        }
        try {
            if (key == "summary")
                cur->summary = unquote(c, value);
            else if (key == "s12")
                cur->sigma.s12 = Scalar::parse(unquote(c, value));
            else if (key == "s11b")
                cur->sigma.s11b = Scalar::parse(unquote(c, value));
            else if (key == "s12b")
                cur->sigma.s12b = Scalar::parse(unquote(c, value));
            else if (key == "s21b")
                cur->sigma.s21b = Scalar::parse(unquote(c, value));
            else if (key == "s22b")
                cur->sigma.s22b = Scalar::parse(unquote(c, value));
            else if (key == "d_nonzero") {
                if (value != "true" && value != "false") c.fail("expected true or false");
                cur->d_nonzero = value == "true";
            } else if (key == "class")
                declared_classes.back() = unquote(c, value);
            else
                c.fail("unknown key '" + key + "'");
        } catch (const parse_error& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            c.fail(msg);
        }
    }

    for (size_t k = 0; k < out.size(); ++k) {
        Preset& p = out[k];
        const std::string& cname = declared_classes[k];
        if (cname.empty())
            throw parse_error("preset '" + p.name + "': missing class");
        auto declared = class_from_name(cname);
        if (!declared)
            throw parse_error("preset '" + p.name + "': unknown class '" + cname + "'");
        Classification computed = classify(p.sigma, p.d_nonzero);
        if (!computed.ok())
            throw parse_error("preset '" + p.name + "' is unclassifiable: " +
                              computed.reason);
        if (*computed.label != *declared)
            throw parse_error("preset '" + p.name + "': declared class " + cname +
                              " but coefficients give " + class_name(*computed.label));
        p.declared = *declared;
    }
    return out;
}

std::string write_catalog(const std::vector<Preset>& entries) {
    std::ostringstream out;
    out << "# Deformation catalog for the n = 3 invariant-forms family.\n";
    out << "# " << catalog_gap_note() << "\n";
    out << "gap = \"" << catalog_gap_note() << "\"\n";
    for (const Preset& p : entries) {
        out << "\n[preset." << p.name << "]\n";
        out << "summary = \"" << p.summary << "\"\n";
        out << "s12 = \"" << p.sigma.s12.str() << "\"\n";
        out << "s11b = \"" << p.sigma.s11b.str() << "\"\n";
        out << "s12b = \"" << p.sigma.s12b.str() << "\"\n";
        out << "s21b = \"" << p.sigma.s21b.str() << "\"\n";
        out << "s22b = \"" << p.sigma.s22b.str() << "\"\n";
        out << "d_nonzero = " << (p.d_nonzero ? "true" : "false") << "\n";
        out << "class = \"" << class_name(p.declared) << "\"\n";
    }
    return out.str();
}

} // namespace bicx

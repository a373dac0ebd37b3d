#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bicx/catalog.hpp"
#include "bicx/decompose.hpp"
#include "bicx/spectral.hpp"

namespace py = pybind11;
using namespace bicx;

namespace {

std::map<std::pair<int, int>, int> page_dims(const DoubleComplex& dc, int r) {
    std::map<std::pair<int, int>, int> out;
    for (const auto& [b, d] : page(dc, r).dims) out[{b.p, b.q}] = d;
    return out;
}

std::vector<int> betti(const DoubleComplex& dc) {
    CohomologyTable t = cohomology(dc, Theory::DeRham);
    std::vector<int> out;
    for (int k = dc.pmin() + dc.qmin(); k <= dc.pmax() + dc.qmax(); ++k)
        out.push_back(t.dim(k));
    return out;
}

std::map<std::pair<int, int>, int> hodge(const DoubleComplex& dc,
                                         const std::string& theory) {
    Theory t;
    if (theory == "dolbeault")
        t = Theory::Dolbeault;
    else if (theory == "bott-chern")
        t = Theory::BottChern;
    else if (theory == "aeppli")
        t = Theory::Aeppli;
    else
        throw py::value_error("theory must be dolbeault, bott-chern or aeppli; "
                              "de Rham numbers come from betti()");
    std::map<std::pair<int, int>, int> out;
    for (const auto& [b, d] : cohomology(dc, t).by_bidegree) out[{b.p, b.q}] = d;
    return out;
}

} // namespace

PYBIND11_MODULE(_bicomplex, m) {
    m.doc() = "exact-arithmetic bounded double complexes: spectral pages, "
              "cohomology tables, zigzag censuses";

    py::class_<DoubleComplex>(m, "DoubleComplex")
        .def("dim", [](const DoubleComplex& dc, int p, int q) { return dc.dim({p, q}); },
             py::arg("p"), py::arg("q"), "dimension of the (p, q) component")
        .def("total_dim", &DoubleComplex::total_dim)
        .def("valid", [](const DoubleComplex& dc) { return dc.validate().ok(); },
             "whether both differentials square to zero and anticommute")
        .def("__repr__", [](const DoubleComplex& dc) {
            return "<DoubleComplex dim " + std::to_string(dc.total_dim()) + ">";
        });

    m.def("preset_names", [] {
        std::vector<std::string> names;
        for (const Preset& p : builtin_presets()) names.push_back(p.name);
        return names;
    });
    m.def("build_preset", &build_preset, py::arg("name"));
    m.def("read_document", &read_document, py::arg("text"));
    m.def("write_document", &write_document, py::arg("dc"));
    m.def("page_dims", &page_dims, py::arg("dc"), py::arg("r"),
          "dimensions of page r as a {(p, q): dim} dict, zeros omitted");
    m.def("degeneration_page", &degeneration_page, py::arg("dc"));
    m.def("census_summary",
          [](const DoubleComplex& dc) { return decompose(dc).census().summary(); },
          py::arg("dc"), "aggregated summand census, e.g. '36 × L1, 12 × L2, 1 × square'");
    m.def("betti", &betti, py::arg("dc"),
          "de Rham dimensions indexed by total degree, from the lowest");
    m.def("hodge", &hodge, py::arg("dc"), py::arg("theory"),
          "cohomology dimensions as a {(p, q): dim} dict, zeros omitted");
}

#include "natred/catalog.hpp"
#include "natred/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace natred;

namespace {

ReportFormat format_of(const std::string& f) {
    if (f == "json") return ReportFormat::Json;
    if (f == "text") return ReportFormat::Text;
    throw py::value_error("format must be 'json' or 'text'");
}

}  // namespace

PYBIND11_MODULE(_natred, m) {
    m.doc() = "Exact-arithmetic naturally reductive spaces (JSON document interface)";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&]() { return py::object(py::exception<Error>(m, "NatredError", PyExc_RuntimeError)); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::object& type = error_type.get_stored();
            py::object inst = type(e.what());
            inst.attr("kind") = kind_name(e.kind());
            PyErr_SetObject(type.ptr(), inst.ptr());
        }
    });

    m.attr("SCHEMA_VERSION") = kSchemaVersion;

    m.def("catalog_names", &catalog_names);
    m.def("catalog", [](const std::string& name) { return emit_document(catalog(name)); }, py::arg("name"),
          "Catalog entry as a JSON document.");
    m.def("normalize", [](const std::string& text) { return emit_document(parse_document(text)); },
          py::arg("text"), "Parse and re-emit a document in canonical form.");
    m.def("kind", [](const std::string& text) { return std::string(doc_kind_name(parse_document(text).kind())); },
          py::arg("text"));
    m.def(
        "analyze",
        [](const std::string& text, const std::string& fmt) {
            auto doc = parse_document(text);
            py::gil_scoped_release nogil;
            return analyze(doc, format_of(fmt));
        },
        py::arg("text"), py::arg("format") = "json");
    m.def(
        "verify",
        [](const std::string& text) {
            bool ok = false;
            auto out = verify(parse_document(text), ok);
            return py::make_tuple(ok, out);
        },
        py::arg("text"), "Returns (ok, report).");
    m.def(
        "reduce",
        [](const std::string& text) {
            bool reducible = false;
            auto out = reduce(parse_document(text), reducible);
            return py::make_tuple(reducible, out);
        },
        py::arg("text"), "Returns (reducible, report).");
    m.def(
        "iso",
        [](const std::string& a, const std::string& b) {
            IsoResult::Verdict v;
            std::string out;
            auto da = parse_document(a), db = parse_document(b);
            {
                py::gil_scoped_release nogil;
                out = iso(da, db, v);
            }
            return py::make_tuple(std::string(verdict_name(v)), out);
        },
        py::arg("a"), py::arg("b"), "Returns (verdict, report) with verdict Yes, No or Undecided.");
    m.def(
        "extend",
        [](const std::string& text) {
            auto in = parse_document(text);
            if (in.kind() != DocKind::ExtensionSpec)
                throw Error(ErrorKind::SchemaError, "extend needs an extension_spec document");
            return emit_document(extend_document(in.spec(), in.name));
        },
        py::arg("spec"), "Transvection decomposition of an extension_spec document.");
    m.def(
        "base", [](const std::string& text) { return emit_document(base_document(parse_document(text))); },
        py::arg("text"), "Canonical base of a decomposition or model document.");
}

// Python bindings for the certificate toolkit.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "acc/certify.hpp"
#include "acc/checker.hpp"
#include "acc/error.hpp"
#include "acc/formula.hpp"
#include "acc/inccert.hpp"
#include "acc/inccheck.hpp"
#include "acc/store.hpp"
#include "acc/update.hpp"

namespace py = pybind11;
using namespace acc;

namespace {

std::vector<CallPattern> call_patterns(const std::vector<std::string>& texts) {
    std::vector<CallPattern> out;
    for (const auto& t : texts) out.push_back(parse_call_pattern(t));
    return out;
}

// {"rev(X,Y) : true": "models([];[X,Y])", ...}
py::dict answers_dict(const AnswerTable& at) {
    py::dict d;
    for (const auto& [key, e] : at) d[py::str(to_string(e.call))] = to_string(e.answer);
    return d;
}

std::vector<std::string> arc_strings(const std::vector<DependencyArc>& dat) {
    std::vector<std::string> out;
    for (const auto& a : dat) out.push_back(to_string(a));
    return out;
}

}  // namespace

PYBIND11_MODULE(_acc, m) {
    m.doc() = "Certificates for CLP programs over the Def groundness domain";

    // Translators are tried newest first, so the base class goes in first.
    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<PatchConflict>(m, "PatchConflict", base.ptr());
    py::register_exception<CorruptState>(m, "CorruptState", base.ptr());

    py::class_<DefValue>(m, "DefValue")
        .def(py::init([](const std::string& text, const Scope& scope) { return parse_value(text, scope); }),
             py::arg("text"), py::arg("scope"))
        .def_property_readonly("scope", &DefValue::scope)
        .def_property_readonly("models", &DefValue::models)
        .def("is_bottom", &DefValue::is_bottom)
        .def("is_top", &DefValue::is_top)
        .def("__le__", [](const DefValue& a, const DefValue& b) { return leq(a, b); })
        .def("__eq__", [](const DefValue& a, const DefValue& b) { return a == b; })
        .def("__or__", [](const DefValue& a, const DefValue& b) { return alub(a, b); })
        .def("__and__", [](const DefValue& a, const DefValue& b) { return meet(a, b); })
        .def("project", [](const DefValue& a, const Scope& sub) { return project(a, sub); })
        .def("__str__", [](const DefValue& v) { return to_string(v); })
        .def("__repr__", [](const DefValue& v) { return "DefValue('" + to_string(v) + "')"; });

    py::class_<Program>(m, "Program")
        .def(py::init([](const std::string& text) { return parse_program(text); }), py::arg("text"))
        .def("__len__", [](const Program& p) { return p.rules().size(); })
        .def("predicates", [](const Program& p) {
            std::vector<std::string> out;
            for (const auto& k : p.predicates()) out.push_back(k.to_string());
            return out;
        })
        .def("__str__", [](const Program& p) { return to_string(p); });

    py::class_<Update>(m, "Update")
        .def(py::init([](const std::string& text) { return parse_update(text); }), py::arg("text"))
        .def("kind", [](const Update& u) { return to_string(classify(u)); })
        .def("empty", &Update::empty)
        .def("__str__", [](const Update& u) { return format_update(u); });

    m.def("diff", &acc::diff, py::arg("new"), py::arg("old"),
          "Update turning `old` into `new`.");
    m.def("patch", &acc::patch, py::arg("program"), py::arg("update"));

    m.def("certify", [](const Program& p, const std::vector<std::string>& queries) {
        Certification c = certify(p, call_patterns(queries));
        py::dict out;
        out["answers"] = answers_dict(c.cert);
        out["arcs"] = arc_strings(c.dat);
        out["traversals"] = c.stats.traversals;
        out["certificate"] = format_answers(c.cert);
        return out;
    }, py::arg("program"), py::arg("queries"));

    m.def("check", [](const Program& p, const std::vector<std::string>& queries,
                      const std::string& cert_text, bool strict) {
        CheckResult r = check(p, call_patterns(queries), parse_answers(cert_text),
                              strict ? CheckMode::Strict : CheckMode::Lenient);
        py::dict out;
        out["accepted"] = r.accepted();
        out["reason"] = r.rejection ? py::cast(r.rejection->message()) : py::none();
        out["traversals"] = r.traversals;
        out["arcs"] = arc_strings(r.dat);
        return out;
    }, py::arg("program"), py::arg("queries"), py::arg("certificate"), py::arg("strict") = true);

    m.def("ext_certify", [](const Program& p, const Update& u, const std::vector<std::string>& queries,
                            bool reuse) {
        ExtCertification r = ext_certify(p, u, call_patterns(queries), reuse);
        py::dict out;
        out["kind"] = to_string(r.kind);
        out["ext"] = answers_dict(r.ext);
        out["inc"] = answers_dict(r.inc);
        out["inc_certificate"] = format_answers(r.inc);
        return out;
    }, py::arg("program"), py::arg("update"), py::arg("queries"), py::arg("reuse") = false);

    m.def("inc_check", [](const std::string& state_dir, const std::string& package_dir, bool commit) {
        std::optional<StateLock> lock;
        if (commit) lock.emplace(state_dir);
        ConsumerState state = load_state(state_dir);
        Package pkg = load_package(package_dir);
        IncCheckResult r = inc_check(state, pkg.update, pkg.inc);
        py::dict out;
        out["accepted"] = r.accepted();
        out["reason"] = r.rejection ? py::cast(r.rejection->message()) : py::none();
        out["changed"] = r.stats.changed;
        out["rechecked"] = r.stats.rechecked;
        out["traversals"] = r.stats.traversals;
        if (r.accepted()) {
            out["answers"] = answers_dict(r.state.at);
            out["arcs"] = arc_strings(r.state.dat);
            if (commit) save_state(state_dir, r.state);
        }
        return out;
    }, py::arg("state_dir"), py::arg("package_dir"), py::arg("commit") = true);
}

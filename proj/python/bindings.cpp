#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "soa/json_io.hpp"
#include "soa/verify.hpp"

namespace py = pybind11;
using namespace soa;

namespace {

Budget make_budget(std::size_t max_input_carrier, std::size_t max_enumeration) {
    Budget b;
    b.max_input_carrier = max_input_carrier;
    b.max_enumeration = max_enumeration;
    return b;
}

std::string factor_json(const std::string& presentation, const std::string& arrow, const std::string& mode,
                        std::size_t max_stage, std::size_t max_input_carrier, std::size_t max_enumeration) {
    Presentation pres = parse_presentation(presentation);
    ArrowObject f = arrow_from_json(parse_json(arrow));
    Budget budget = make_budget(max_input_carrier, max_enumeration);
    FactorOutcome outcome;
    {
        py::gil_scoped_release release;
        outcome = factor(Engine::create(pres, parse_mode(mode), budget), f, max_stage);
    }
    return dump(to_json(make_certificate(outcome, "<memory>"), pres));
}

std::string verify_json(const std::string& presentation, const std::string& certificate) {
    Presentation pres = parse_presentation(presentation);
    Report report;
    try {
        Certificate cert = certificate_from_json(parse_json(certificate), pres);
        py::gil_scoped_release release;
        report = verify_certificate(pres, cert);
    } catch (const ParseError& e) {
        report.checks.push_back("well-formed");
        report.fail("well-formed", e.what());
    }
    return dump(to_json(report));
}

std::string lift_json(const std::string& presentation, const std::string& certificate, const std::string& problem) {
    Presentation pres = parse_presentation(presentation);
    Certificate cert = certificate_from_json(parse_json(certificate), pres);
    std::size_t gen = 0;
    CommSquare square = problem_from_json(parse_json(problem), pres, cert.result.R, gen);
    FiniteMap filler = solve_lift(Engine::create(pres, cert.result.mode), cert.result, gen, square);
    return dump(to_json(filler));
}

std::string kappa_json(const std::string& presentation, const std::string& f, const std::string& g,
                       std::size_t max_carrier) {
    Presentation pres = parse_presentation(presentation);
    KappaOptions options;
    options.max_carrier = max_carrier;
    return dump(to_json(oracle_kappa(pres.level_one(), arrow_from_json(parse_json(f)), arrow_from_json(parse_json(g)),
                                     options)));
}

std::vector<std::string> validate_json(const std::string& presentation) {
    std::vector<std::string> out;
    try {
        parse_presentation(presentation);
    } catch (const InvalidPresentation& e) {
        out.emplace_back(e.what());
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_soa, m) {
    m.doc() = "Small object argument over finite sets";

    auto base = py::register_exception<Error>(m, "SoaError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<InvalidPresentation>(m, "InvalidPresentation", base.ptr());
    py::register_exception<SizeBudgetExceeded>(m, "SizeBudgetExceeded", base.ptr());
    py::register_exception<ProblemMismatch>(m, "ProblemMismatch", base.ptr());
    py::register_exception<NotStabilised>(m, "NotStabilised", base.ptr());

    py::class_<FiniteMap>(m, "FiniteMap")
        .def(py::init([](std::size_t dom, std::size_t cod, std::vector<Elem> table) {
                 return FiniteMap(FinSet{dom}, FinSet{cod}, std::move(table));
             }),
             py::arg("dom"), py::arg("cod"), py::arg("table"))
        .def_property_readonly("dom", [](const FiniteMap& f) { return f.dom().size; })
        .def_property_readonly("cod", [](const FiniteMap& f) { return f.cod().size; })
        .def_property_readonly("table", &FiniteMap::table)
        .def("__call__", [](const FiniteMap& f, Elem x) {
            if (x >= f.dom().size) {
                throw py::index_error("element outside the domain");
            }
            return f(x);
        })
        .def("is_injective", &FiniteMap::is_injective)
        .def("is_surjective", &FiniteMap::is_surjective)
        .def("is_identity", &FiniteMap::is_identity)
        .def(py::self == py::self)
        .def("__repr__", [](const FiniteMap& f) { return "FiniteMap(" + f.to_string() + ")"; });

    m.def("identity", [](std::size_t n) { return FiniteMap::identity(FinSet{n}); }, py::arg("n"));
    m.def("compose", [](const FiniteMap& g, const FiniteMap& f) { return compose(g, f); }, py::arg("g"), py::arg("f"),
          "g ∘ f");
    m.def("is_iso", [](const FiniteMap& f) { return is_iso(f); }, py::arg("f"), "the inverse, or None");

    const Budget defaults;
    m.def("validate", &validate_json, py::arg("presentation"));
    m.def("factor", &factor_json, py::arg("presentation"), py::arg("arrow"), py::arg("mode") = "plain",
          py::arg("max_stage") = 16, py::arg("max_input_carrier") = defaults.max_input_carrier,
          py::arg("max_enumeration") = defaults.max_enumeration);
    m.def("verify", &verify_json, py::arg("presentation"), py::arg("certificate"));
    m.def("lift", &lift_json, py::arg("presentation"), py::arg("certificate"), py::arg("problem"));
    m.def("kappa", &kappa_json, py::arg("presentation"), py::arg("f"), py::arg("g"), py::arg("max_carrier") = 2);
}

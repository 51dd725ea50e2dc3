#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>

#include "qhagg/catalog.hpp"
#include "qhagg/cli.hpp"
#include "qhagg/construct.hpp"
#include "qhagg/verify.hpp"

namespace py = pybind11;
using namespace qhagg;

namespace {

// Functions are built from names and expressions only, so checks never call
// back into Python and can run with the GIL released.
AggregationFunction build(const cli::FunctionSpec& spec, bool raw = false) {
    return cli::build_function(spec, cli::BuildOptions{raw});
}

py::dict witness_dict(const GridWitness& w) {
    py::dict d;
    d["lambda"] = w.lambda;
    d["x"] = w.x;
    d["y"] = w.y;
    d["lhs"] = w.lhs;
    d["rhs"] = w.rhs;
    d["residual"] = w.residual;
    return d;
}

py::dict residual_dict(const ResidualReport& r) {
    py::dict d;
    d["passed"] = r.passed;
    d["max_residual"] = r.max_residual;
    d["tol"] = r.tol;
    d["points"] = r.points;
    d["witness"] = r.witness ? py::object(witness_dict(*r.witness)) : py::object(py::none());
    return d;
}

py::dict aggregation_dict(const AggregationReport& r) {
    py::dict d;
    d["passed"] = r.passed;
    d["max_violation"] = r.max_violation;
    if (r.witness) {
        py::dict w;
        w["condition"] = r.witness->condition;
        w["x"] = r.witness->x;
        w["y"] = r.witness->y;
        w["x_next"] = r.witness->x_next;
        w["y_next"] = r.witness->y_next;
        w["amount"] = r.witness->amount;
        d["witness"] = w;
    } else {
        d["witness"] = py::none();
    }
    return d;
}

py::dict classification_dict(const ClassificationReport& r) {
    py::dict d;
    d["class"] = r.class_number();
    d["summary"] = r.summary();
    d["grid"] = r.grid_resolution;
    d["tol"] = r.tol;
    d["diagnostics"] = r.diagnostics;
    if (const auto* c1 = std::get_if<Class1>(&r.verdict)) {
        d["delta_exponent"] = c1->delta_fit ? py::object(py::float_(c1->delta_fit->exponent))
                                            : py::object(py::none());
    } else if (const auto* c2 = std::get_if<Class2>(&r.verdict)) {
        d["alpha"] = c2->alpha;
        d["beta"] = c2->beta;
    } else if (const auto* nq = std::get_if<NotQuasiHomogeneous>(&r.verdict)) {
        py::dict w;
        w["check"] = nq->failed_check;
        w["lambda"] = nq->lambda ? py::object(py::float_(*nq->lambda)) : py::object(py::none());
        w["x"] = nq->x;
        w["y"] = nq->y;
        w["residual"] = nq->residual;
        d["witness"] = w;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_qhagg, m) {
    m.doc() = "Quasi-homogeneous aggregation functions on the unit square";

    py::register_exception<cli::SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<cli::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ExpressionError", PyExc_ValueError);
    py::register_exception<EvalError>(m, "EvaluationError", PyExc_ValueError);

    py::class_<AggregationFunction>(m, "AggregationFunction")
        .def("__call__", &AggregationFunction::operator(), py::arg("x"), py::arg("y"))
        .def_property_readonly("name", &AggregationFunction::name)
        .def_property_readonly("provenance",
                               [](const AggregationFunction& a) { return std::string(to_string(a.provenance())); })
        .def(
            "grid",
            [](const AggregationFunction& a, std::size_t n) {
                std::vector<std::vector<double>> rows;
                {
                    py::gil_scoped_release release;
                    const Grid grid(n);
                    for (double x : grid) {
                        auto& row = rows.emplace_back();
                        for (double y : grid) {
                            row.push_back(a(x, y));
                        }
                    }
                }
                return rows;
            },
            py::arg("n") = kDefaultGridResolution, "Values on the (n+1)^2 grid, indexed [i][j] = A(i/n, j/n)")
        .def("__repr__", [](const AggregationFunction& a) { return "<AggregationFunction " + a.name() + ">"; });

    m.def(
        "catalog_names",
        [] {
            std::vector<std::string> names;
            for (const auto& e : catalog_entries()) {
                names.push_back(e.name);
            }
            return names;
        });
    m.def(
        "catalog",
        [](const std::string& name, const std::map<std::string, std::string>& params) {
            cli::CatalogRef ref{name, {}};
            ref.params.insert(params.begin(), params.end());
            return build(ref);
        },
        py::arg("name"), py::arg("params") = std::map<std::string, std::string>{});
    m.def(
        "from_triple",
        [](const std::string& f, const std::string& g, const std::string& h, bool raw) {
            return build(cli::TripleSpec{f, g, h}, raw);
        },
        py::arg("f"), py::arg("g"), py::arg("h"), py::arg("raw") = false);
    m.def("class_flat", [](double alpha, double beta) { return build(cli::FlatSpec{alpha, beta}); },
          py::arg("alpha"), py::arg("beta"));
    m.def(
        "class_boundary",
        [](const std::string& g, const std::string& h) { return build(cli::BoundarySpec{g, h}); },
        py::arg("g"), py::arg("h"));
    m.def(
        "combine",
        [](const std::string& combiner, const std::string& u, const std::string& v) {
            return build(cli::Expr2dSpec{combiner, u, v});
        },
        py::arg("combiner"), py::arg("u") = "x", py::arg("v") = "x");
    m.def("from_spec_json", [](const std::string& text) { return build(cli::parse_spec_json(text)); },
          py::arg("text"));

    m.def(
        "validate_triple",
        [](const std::string& f, const std::string& g, const std::string& h, std::size_t n) {
            const GeneratorTriple t{unit::parse(f, UnitFlags::bijection()), unit::parse(g), unit::parse(h)};
            const auto report = validate_triple(t, Grid(n));
            py::list out;
            for (const auto& c : report.conditions) {
                py::dict d;
                d["name"] = c.name;
                d["passed"] = c.passed;
                d["witness"] = c.witness ? py::object(py::make_tuple(c.witness->first, c.witness->second))
                                         : py::object(py::none());
                d["detail"] = c.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("f"), py::arg("g"), py::arg("h"), py::arg("n") = kDefaultGridResolution);

    m.def(
        "check_aggregation",
        [](const AggregationFunction& a, std::size_t n, double tol) {
            AggregationReport r;
            {
                py::gil_scoped_release release;
                r = check_aggregation(a, Grid(n), tol);
            }
            return aggregation_dict(r);
        },
        py::arg("fn"), py::arg("n") = kDefaultGridResolution, py::arg("tol") = kClosedFormTol);

    m.def(
        "check_quasi_homogeneity",
        [](const AggregationFunction& a, const std::string& phi, const std::string& psi,
           std::size_t n, std::optional<double> tol, const std::string& phi_b) {
            const auto phi_spec = cli::parse_phi(phi, phi_b);
            const auto psi_spec = cli::parse_psi(psi);
            const double t = tol.value_or(phi_spec.has_closed_form_inverse() ? kClosedFormTol
                                                                             : kBisectionTol);
            ResidualReport r;
            {
                py::gil_scoped_release release;
                r = check_quasi_homogeneity(a, phi_spec, psi_spec, Grid(n), t);
            }
            return residual_dict(r);
        },
        py::arg("fn"), py::arg("phi"), py::arg("psi"), py::arg("n") = kDefaultGridResolution,
        py::arg("tol") = py::none(), py::arg("phi_b") = "",
        "phi is an expression in x; psi is 'power:c=<num>', 'step0' or 'step1'");

    m.def(
        "classify",
        [](const AggregationFunction& a, std::size_t n, double tol) {
            std::optional<ClassificationReport> r;
            {
                py::gil_scoped_release release;
                r = classify(a, Grid(n), tol);
            }
            return classification_dict(*r);
        },
        py::arg("fn"), py::arg("n") = kDefaultGridResolution, py::arg("tol") = kBisectionTol);

    m.def(
        "check_multiplicative",
        [](const std::string& psi, std::size_t n, double tol) {
            return residual_dict(check_multiplicative(cli::parse_psi(psi), Grid(n), tol));
        },
        py::arg("psi"), py::arg("n") = kDefaultGridResolution, py::arg("tol") = 1e-12);
}

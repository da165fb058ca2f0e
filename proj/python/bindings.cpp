#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fracab/ab2_schemes.hpp"
#include "fracab/cli.hpp"
#include "fracab/error_analysis.hpp"
#include "fracab/fisher_pde.hpp"
#include "fracab/oracles.hpp"
#include "fracab/special_functions.hpp"

namespace py = pybind11;
using namespace fracab;

namespace {

using PyRhs = std::function<std::vector<double>(double, std::vector<double>)>;

Problem make_problem(const PyRhs& rhs, std::vector<double> y0) {
    return Problem(
        [rhs](double t, std::span<const double> y, std::span<double> out) {
            py::gil_scoped_acquire gil;
            const auto f = rhs(t, std::vector<double>(y.begin(), y.end()));
            if (f.size() != out.size()) throw std::invalid_argument("rhs returned a vector of the wrong length");
            std::copy(f.begin(), f.end(), out.begin());
        },
        std::move(y0));
}

py::tuple as_tuple(const Trajectory& traj) { return py::make_tuple(traj.times, traj.states); }

py::tuple as_tuple(const StepWeights& w) { return py::make_tuple(w.c_curr, w.c_prev); }

double default_norm(DerivativeKind kind, double alpha) {
    return kind == DerivativeKind::Caputo ? 1.0 : normalization(alpha, default_normalization(kind));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fractional two-step Adams-Bashforth schemes";

    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<InstabilityError>(m, "InstabilityError", PyExc_RuntimeError);

    py::enum_<DerivativeKind>(m, "DerivativeKind")
        .value("Caputo", DerivativeKind::Caputo)
        .value("CaputoFabrizio", DerivativeKind::CaputoFabrizio)
        .value("AtanganaBaleanuCaputo", DerivativeKind::AtanganaBaleanuCaputo);
    py::enum_<NormalizationVariant>(m, "NormalizationVariant")
        .value("Unit", NormalizationVariant::Unit)
        .value("GammaBlend", NormalizationVariant::GammaBlend);
    py::enum_<FormulaVariant>(m, "FormulaVariant")
        .value("Rederived", FormulaVariant::Rederived)
        .value("PaperLiteral", FormulaVariant::PaperLiteral);
    py::enum_<ForcingMode>(m, "ForcingMode")
        .value("PaperLiteral", ForcingMode::PaperLiteral)
        .value("ConsistentManufactured", ForcingMode::ConsistentManufactured);
    py::enum_<SeedMode>(m, "SeedMode")
        .value("FractionalEuler", SeedMode::FractionalEuler)
        .value("Exact", SeedMode::Exact);

    m.def("gamma", &fracab::gamma, py::arg("x"));
    m.def(
        "mittag_leffler", [](double alpha, double z) { return mittag_leffler(FractionalOrder(alpha), z); },
        py::arg("alpha"), py::arg("z"));
    m.def("normalization", &normalization, py::arg("alpha"), py::arg("variant"));

    m.def(
        "caputo_weights",
        [](double alpha, double h, std::int64_t n, FormulaVariant v) {
            return as_tuple(caputo_weights(FractionalOrder(alpha), h, n, v));
        },
        py::arg("alpha"), py::arg("h"), py::arg("n"), py::arg("variant") = FormulaVariant::Rederived);
    m.def(
        "cf_weights",
        [](double alpha, double h, double norm, FormulaVariant v) {
            return as_tuple(cf_weights(FractionalOrder(alpha), h, norm, v));
        },
        py::arg("alpha"), py::arg("h"), py::arg("norm") = 1.0, py::arg("variant") = FormulaVariant::Rederived);
    m.def(
        "abc_weights",
        [](double alpha, double h, std::int64_t n, double norm, FormulaVariant v) {
            return as_tuple(abc_weights(FractionalOrder(alpha), h, n, norm, v));
        },
        py::arg("alpha"), py::arg("h"), py::arg("n"), py::arg("norm") = 1.0,
        py::arg("variant") = FormulaVariant::Rederived);

    m.def(
        "integrate",
        [](const PyRhs& rhs, std::vector<double> y0, double alpha, DerivativeKind kind, double h, double T,
           std::optional<double> norm) {
            const Problem p = make_problem(rhs, std::move(y0));
            const SchemeConfig scheme(FractionalOrder(alpha), kind, h, norm.value_or(default_norm(kind, alpha)));
            return as_tuple(integrate(p, scheme, T));
        },
        py::arg("rhs"), py::arg("y0"), py::arg("alpha"), py::arg("kind"), py::arg("h"), py::arg("T"),
        py::arg("norm") = py::none(), "Returns (times, states).");
    m.def(
        "reference_solution",
        [](const PyRhs& rhs, std::vector<double> y0, double alpha, DerivativeKind kind, double h, double T,
           std::optional<double> norm, int substeps) {
            const Problem p = make_problem(rhs, std::move(y0));
            const SchemeConfig scheme(FractionalOrder(alpha), kind, h, norm.value_or(default_norm(kind, alpha)));
            ReferenceConfig rc;
            rc.substeps = substeps;
            return as_tuple(reference_solution(p, scheme, T, rc));
        },
        py::arg("rhs"), py::arg("y0"), py::arg("alpha"), py::arg("kind"), py::arg("h"), py::arg("T"),
        py::arg("norm") = py::none(), py::arg("substeps") = 32);
    m.def(
        "classical_ab2",
        [](const PyRhs& rhs, std::vector<double> y0, double h, double T) {
            return as_tuple(classical_ab2(make_problem(rhs, std::move(y0)), h, T));
        },
        py::arg("rhs"), py::arg("y0"), py::arg("h"), py::arg("T"));

    m.def(
        "caputo_remainder_bound",
        [](double alpha, double h, std::int64_t n, double M, bool printed) {
            return caputo_remainder_bound(FractionalOrder(alpha), h, n, M,
                                          printed ? BoundVariant::Printed : BoundVariant::Proof);
        },
        py::arg("alpha"), py::arg("h"), py::arg("n"), py::arg("M"), py::arg("printed") = false);
    m.def("cf_remainder_bound", &cf_remainder_bound, py::arg("alpha"), py::arg("h"), py::arg("n"), py::arg("M"),
          py::arg("norm") = 1.0);
    m.def(
        "observed_order",
        [](const std::vector<std::pair<double, double>>& samples) {
            std::vector<ErrorSample> s;
            for (const auto& [h, e] : samples) s.push_back({h, e});
            return observed_order(s);
        },
        py::arg("samples"), "samples: list of (h, error) pairs.");

    py::class_<FisherConfig>(m, "FisherConfig")
        .def(py::init<>())
        .def_readwrite("delta", &FisherConfig::delta)
        .def_readwrite("tau", &FisherConfig::tau)
        .def_property(
            "alpha", [](const FisherConfig& c) { return c.alpha.value(); },
            [](FisherConfig& c, double a) { c.alpha = FractionalOrder(a); })
        .def_readwrite("L", &FisherConfig::L)
        .def_readwrite("N", &FisherConfig::N)
        .def_readwrite("dt", &FisherConfig::dt)
        .def_readwrite("T", &FisherConfig::T)
        .def_readwrite("kind", &FisherConfig::kind)
        .def_readwrite("forcing", &FisherConfig::forcing)
        .def_readwrite("norm_variant", &FisherConfig::norm_variant)
        .def_readwrite("seed", &FisherConfig::seed)
        .def_property_readonly("dx", &FisherConfig::dx)
        .def("norm", &FisherConfig::norm)
        .def("validate", &FisherConfig::validate);

    m.def("exact_solution", &exact_solution, py::arg("x"), py::arg("t"), py::arg("tau") = 1.0);
    m.def("forcing", &fracab::forcing, py::arg("x"), py::arg("t"), py::arg("config"));
    m.def("dt_max", &dt_max, py::arg("delta"), py::arg("dx"));
    m.def(
        "solve_fisher",
        [](const FisherConfig& cfg) {
            const auto r = solve_fisher(cfg);
            py::dict d;
            d["x"] = r.x;
            d["times"] = r.trajectory.times;
            d["states"] = r.trajectory.states;
            d["max_error"] = r.report.max_error;
            d["final_error"] = r.final_error;
            d["dt_max"] = r.dt_max;
            return d;
        },
        py::arg("config"));
    m.def("manufactured_residual", &manufactured_residual, py::arg("config"), py::arg("t"));

    m.def(
        "run_cli",
        [](const std::string& command, std::map<std::string, std::string> params) {
            cli::RunSpec spec;
            spec.command = cli::parse_command(command);
            spec.parameters = std::move(params);
            std::ostringstream out, err;
            const int code = cli::run(spec, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("command"), py::arg("params") = std::map<std::string, std::string>{},
        "Returns (exit_code, csv, diagnostics).");
}

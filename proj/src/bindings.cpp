#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "apv/asymptotics.hpp"
#include "apv/expr.hpp"
#include "apv/mirror.hpp"
#include "apv/regularize.hpp"

namespace py = pybind11;

namespace {

apv::RhoSamples samples_from_tuples(
    const std::vector<std::tuple<double, double, double>>& entries) {
    std::vector<apv::RhoSample> samples;
    samples.reserve(entries.size());
    for (const auto& [rho, value, err] : entries) samples.push_back({rho, value, err});
    return apv::RhoSamples(std::move(samples));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "asymptotic principal values for singular pole integrals";

    py::register_exception<apv::InvalidArgumentError>(m, "InvalidArgumentError",
                                                      PyExc_ValueError);
    py::register_exception<apv::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<apv::AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
    py::register_exception<apv::Error>(m, "ApvError", PyExc_RuntimeError);

    py::class_<apv::Integrand>(m, "Integrand")
        .def("__call__", [](const apv::Integrand& f, double x) { return f(x); }, py::arg("x"))
        .def("derivative", &apv::Integrand::derivative, py::arg("k") = 1)
        .def_property_readonly("max_order", &apv::Integrand::max_order);

    m.def("polynomial_integrand", &apv::make_polynomial_integrand, py::arg("coeffs"),
          "integrand sum(coeffs[i] * x**i) with exact derivatives");
    m.def(
        "expression_integrand",
        [](const std::string& text, const std::map<std::string, double>& params) {
            std::set<std::string> names;
            for (const auto& [name, value] : params) names.insert(name);
            return apv::expr::to_integrand(apv::expr::parse(text, names), params);
        },
        py::arg("text"), py::arg("params") = std::map<std::string, double>{},
        "parse an expression in x and bind its parameters");
    m.def(
        "fd_integrand",
        [](std::function<double(double)> f, int max_order, double fd_step) {
            return fd_step > 0.0 ? apv::make_fd_integrand(std::move(f), max_order, fd_step)
                                 : apv::make_fd_integrand(std::move(f), max_order);
        },
        py::arg("f"), py::arg("max_order") = 2, py::arg("fd_step") = 0.0,
        "wrap a python callable; derivatives by finite differences");
    m.def(
        "differentiate_expression",
        [](const std::string& text, const std::set<std::string>& params) {
            return apv::expr::parse(text, params).differentiate().to_string();
        },
        py::arg("text"), py::arg("params") = std::set<std::string>{});

    py::class_<apv::PoleProblem>(m, "PoleProblem")
        .def(py::init<double, double, double, int, apv::Integrand>(), py::arg("a"), py::arg("b"),
             py::arg("c"), py::arg("n"), py::arg("f"))
        .def_property_readonly("a", &apv::PoleProblem::a)
        .def_property_readonly("b", &apv::PoleProblem::b)
        .def_property_readonly("c", &apv::PoleProblem::c)
        .def_property_readonly("n", &apv::PoleProblem::n)
        .def_property_readonly("puncture_limit", &apv::PoleProblem::puncture_limit);

    py::class_<apv::ApvResult>(m, "ApvResult")
        .def_readonly("value", &apv::ApvResult::value)
        .def_readonly("abs_error_estimate", &apv::ApvResult::abs_error_estimate)
        .def_readonly("rho", &apv::ApvResult::rho)
        .def_readonly("evaluations", &apv::ApvResult::evaluations)
        .def("__repr__", [](const apv::ApvResult& r) {
            return "ApvResult(value=" + std::to_string(r.value) +
                   ", rho=" + std::to_string(r.rho) + ")";
        });

    py::class_<apv::QuadResult>(m, "QuadResult")
        .def_readonly("value", &apv::QuadResult::value)
        .def_readonly("abs_error_estimate", &apv::QuadResult::abs_error_estimate)
        .def_readonly("subdivisions", &apv::QuadResult::subdivisions)
        .def_readonly("evaluations", &apv::QuadResult::evaluations);

    m.def(
        "integrate",
        [](const std::function<double(double)>& f, double lo, double hi, double tol) {
            return apv::integrate(f, lo, hi, tol);
        },
        py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-10);
    m.def(
        "apv_direct",
        [](const apv::PoleProblem& p, double rho, double tol) {
            return apv::apv_direct(p, apv::Rho(rho), tol);
        },
        py::arg("p"), py::arg("rho"), py::arg("tol") = 1e-9);
    m.def(
        "apv_rho_curve",
        [](const apv::PoleProblem& p, const std::vector<double>& rhos, double tol) {
            py::list out;
            for (const auto& entry : apv::apv_rho_curve(p, rhos, tol)) {
                py::dict item;
                item["rho"] = entry.rho;
                if (entry.result) {
                    item["value"] = entry.result->value;
                    item["error_estimate"] = entry.result->abs_error_estimate;
                } else {
                    item["error"] = entry.error;
                }
                out.append(item);
            }
            return out;
        },
        py::arg("p"), py::arg("rhos"), py::arg("tol") = 1e-9);

    m.def(
        "bracket_term",
        [](const apv::Integrand& f, double c, double rho, int n) {
            return apv::bracket_term(f, c, apv::Rho(rho), n);
        },
        py::arg("f"), py::arg("c"), py::arg("rho"), py::arg("n"));
    m.def(
        "punctured_boundary",
        [](const apv::PoleProblem& p, double rho) {
            return apv::punctured_boundary(p, apv::Rho(rho));
        },
        py::arg("p"), py::arg("rho"));
    m.def(
        "zeta_term",
        [](const apv::PoleProblem& p, double rho) { return apv::zeta_term(p, apv::Rho(rho)); },
        py::arg("p"), py::arg("rho"));
    m.def(
        "reduce_once",
        [](const apv::PoleProblem& p, double rho, double tol) {
            return apv::reduce_once(p, apv::Rho(rho), tol);
        },
        py::arg("p"), py::arg("rho"), py::arg("tol") = 1e-9);
    m.def(
        "reduce_to_simple",
        [](const apv::PoleProblem& p, double rho, double tol) {
            return apv::reduce_to_simple(p, apv::Rho(rho), tol);
        },
        py::arg("p"), py::arg("rho"), py::arg("tol") = 1e-9);
    m.def(
        "mild_part",
        [](const apv::PoleProblem& p, double rho, double tol) {
            return apv::mild_part(p, apv::Rho(rho), tol);
        },
        py::arg("p"), py::arg("rho"), py::arg("tol") = 1e-9);

    py::class_<apv::SingularTerm>(m, "SingularTerm")
        .def_readonly("k", &apv::SingularTerm::k)
        .def_readonly("coefficient", &apv::SingularTerm::coefficient)
        .def_readonly("bracket", &apv::SingularTerm::bracket)
        .def_readonly("power", &apv::SingularTerm::power)
        .def("contribution", &apv::SingularTerm::contribution, py::arg("rho"));

    py::class_<apv::SingularDecomposition>(m, "SingularDecomposition")
        .def_readonly("mild", &apv::SingularDecomposition::mild)
        .def_readonly("mild_error_estimate", &apv::SingularDecomposition::mild_error_estimate)
        .def_readonly("singular_terms", &apv::SingularDecomposition::singular_terms)
        .def_readonly("rho", &apv::SingularDecomposition::rho)
        .def("singular_sum", &apv::SingularDecomposition::singular_sum)
        .def("total", &apv::SingularDecomposition::total);

    m.def(
        "singular_split",
        [](const apv::PoleProblem& p, double rho, double tol) {
            return apv::singular_split(p, apv::Rho(rho), tol);
        },
        py::arg("p"), py::arg("rho"), py::arg("tol") = 1e-9);
    m.def(
        "mild_via_derivative",
        [](const apv::PoleProblem& p, double rho, double tol, double dc_step) {
            const apv::Rho r(rho);
            if (dc_step <= 0.0) dc_step = apv::default_dc_step(r);
            return apv::mild_via_derivative(p, r, tol, dc_step);
        },
        py::arg("p"), py::arg("rho"), py::arg("tol") = 1e-9, py::arg("dc_step") = 0.0);
    m.def(
        "lemma2_check",
        [](const apv::PoleProblem& p, double rho, double tol, double dc_step) {
            const apv::Rho r(rho);
            if (dc_step <= 0.0) dc_step = apv::default_dc_step(r);
            return apv::lemma2_check(p, r, tol, dc_step);
        },
        py::arg("p"), py::arg("rho"), py::arg("tol") = 1e-9, py::arg("dc_step") = 0.0);

    py::enum_<apv::RegMethod>(m, "RegMethod")
        .value("APV", apv::RegMethod::Apv)
        .value("MILD_PART", apv::RegMethod::MildPart)
        .value("COMPLEX_KERNEL", apv::RegMethod::ComplexKernel);

    m.def(
        "regularize",
        [](const apv::PoleProblem& p, apv::RegMethod method, double rho, double tol) {
            return apv::regularize(p, method, apv::Rho(rho), tol);
        },
        py::arg("p"), py::arg("method"), py::arg("rho"), py::arg("tol") = 1e-9);
    m.def(
        "kernel_integral",
        [](const apv::PoleProblem& p, double rho, double tol) {
            return apv::kernel_integral(p, apv::Rho(rho), tol);
        },
        py::arg("p"), py::arg("rho"), py::arg("tol") = 1e-9);

    py::class_<apv::DiracRow>(m, "DiracRow")
        .def_readonly("rho", &apv::DiracRow::rho)
        .def_readonly("kernel_value", &apv::DiracRow::kernel_value)
        .def_readonly("difference", &apv::DiracRow::difference);
    py::class_<apv::DiracReport>(m, "DiracReport")
        .def_readonly("pv_extrapolated", &apv::DiracReport::pv_extrapolated)
        .def_readonly("rows", &apv::DiracReport::rows)
        .def_readonly("monotone_decay", &apv::DiracReport::monotone_decay);
    m.def("dirac_formula_check", &apv::dirac_formula_check, py::arg("p"), py::arg("rhos"),
          py::arg("tol") = 1e-9);

    py::class_<apv::ComparisonRow>(m, "ComparisonRow")
        .def_readonly("rho", &apv::ComparisonRow::rho)
        .def_readonly("value_apv", &apv::ComparisonRow::value_apv)
        .def_readonly("value_mild", &apv::ComparisonRow::value_mild)
        .def_readonly("value_kernel", &apv::ComparisonRow::value_kernel)
        .def_readonly("predicted_gap", &apv::ComparisonRow::predicted_gap)
        .def_readonly("observed_gap", &apv::ComparisonRow::observed_gap);
    py::class_<apv::ComparisonReport>(m, "ComparisonReport")
        .def_readonly("rows", &apv::ComparisonReport::rows)
        .def_readonly("gap_order", &apv::ComparisonReport::gap_order)
        .def_readonly("gap_order_note", &apv::ComparisonReport::gap_order_note);
    m.def("compare_methods", &apv::compare_methods, py::arg("p"), py::arg("rhos"),
          py::arg("tol") = 1e-9);

    py::class_<apv::CounterexampleRow>(m, "CounterexampleRow")
        .def_readonly("rho", &apv::CounterexampleRow::rho)
        .def_readonly("apv_value", &apv::CounterexampleRow::apv_value)
        .def_readonly("kernel_value", &apv::CounterexampleRow::kernel_value)
        .def_readonly("partial_integral_value", &apv::CounterexampleRow::partial_integral_value);
    py::class_<apv::CounterexampleReport>(m, "CounterexampleReport")
        .def_readonly("rows", &apv::CounterexampleReport::rows);
    m.def("counterexample_i1", &apv::counterexample_i1, py::arg("rhos"), py::arg("tol") = 1e-9);

    m.def(
        "order_estimate",
        [](const std::vector<std::tuple<double, double, double>>& samples) {
            return apv::order_estimate(samples_from_tuples(samples));
        },
        py::arg("samples"), "samples as (rho, value, error_estimate) tuples, rho decreasing");

    py::class_<apv::AsymptoticFit>(m, "AsymptoticFit")
        .def_readonly("max_power", &apv::AsymptoticFit::max_power)
        .def_readonly("include_log", &apv::AsymptoticFit::include_log)
        .def_readonly("pole_coeffs", &apv::AsymptoticFit::pole_coeffs)
        .def_readonly("log_coeff", &apv::AsymptoticFit::log_coeff)
        .def_readonly("c0", &apv::AsymptoticFit::c0)
        .def_readonly("c1", &apv::AsymptoticFit::c1)
        .def_readonly("residual_rms", &apv::AsymptoticFit::residual_rms)
        .def_readonly("condition_estimate", &apv::AsymptoticFit::condition_estimate)
        .def("coeff_for_power", &apv::AsymptoticFit::coeff_for_power, py::arg("k"))
        .def("evaluate", &apv::AsymptoticFit::evaluate, py::arg("rho"));
    m.def(
        "fit_asymptotic",
        [](const std::vector<std::tuple<double, double, double>>& samples, int max_power,
           bool include_log) {
            return apv::fit_asymptotic(samples_from_tuples(samples), max_power, include_log);
        },
        py::arg("samples"), py::arg("max_power") = 1, py::arg("include_log") = false);

    py::enum_<apv::MirrorRegime>(m, "MirrorRegime")
        .value("REGULAR", apv::MirrorRegime::Regular)
        .value("SINGULAR", apv::MirrorRegime::Singular);

    py::class_<apv::MirrorConfig>(m, "MirrorConfig")
        .def(py::init<double, double, double, double, double>(), py::arg("z"), py::arg("tau"),
             py::arg("rho"), py::arg("charge") = 1.0, py::arg("mass") = 1.0)
        .def_readonly("z", &apv::MirrorConfig::z)
        .def_readonly("tau", &apv::MirrorConfig::tau)
        .def_readonly("rho", &apv::MirrorConfig::rho)
        .def_readonly("charge", &apv::MirrorConfig::charge)
        .def_readonly("mass", &apv::MirrorConfig::mass)
        .def_property_readonly("sigma", &apv::MirrorConfig::sigma)
        .def("regime", &apv::MirrorConfig::regime);

    m.def("correlator_zz", &apv::correlator_zz, py::arg("T"), py::arg("z"));
    m.def("correlator_xx", &apv::correlator_xx, py::arg("T"), py::arg("z"));
    m.def(
        "useful_formula",
        [](double sigma, double rho) { return apv::useful_formula(sigma, apv::Rho(rho)); },
        py::arg("sigma"), py::arg("rho"));
    m.def("velocity_dispersion_z", &apv::velocity_dispersion_z, py::arg("cfg"),
          py::arg("tol") = 1e-9);
    m.def("velocity_dispersion_x", &apv::velocity_dispersion_x, py::arg("cfg"),
          py::arg("tol") = 1e-9);
    m.def("dispersion_z_asymptotic", &apv::dispersion_z_asymptotic, py::arg("cfg"));
    m.def("dispersion_problem_z", &apv::dispersion_problem_z, py::arg("cfg"));
    m.def("dispersion_problem_x", &apv::dispersion_problem_x, py::arg("cfg"));

#ifdef APV_VERSION
    m.attr("__version__") = APV_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}

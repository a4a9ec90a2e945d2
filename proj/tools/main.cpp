// Command-line front end: evaluate pole integrals under the three
// regularization methods, sweep the cutoff, compare methods, run the mirror
// example and the I1 counterexample. Emits deterministic CSV or JSON.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apv/asymptotics.hpp"
#include "apv/expr.hpp"
#include "apv/mirror.hpp"
#include "apv/regularize.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string cell_to_csv(const ordered_json& v) {
    if (v.is_number_float()) return fmt17(v.get<double>());
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

struct Document {
    ordered_json meta = ordered_json::object();
    std::vector<std::string> columns;
    std::vector<ordered_json> rows;
    std::optional<ordered_json> fit;
    ordered_json extras = ordered_json::object();  // warning, gap_order, trends, ...
};

void write_csv(std::ostream& os, const Document& doc) {
    os << "#";
    for (const auto& [key, value] : doc.meta.items()) {
        os << ' ' << key << '=' << cell_to_csv(value);
    }
    os << '\n';
    for (std::size_t i = 0; i < doc.columns.size(); ++i) {
        os << (i ? "," : "") << doc.columns[i];
    }
    os << '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < doc.columns.size(); ++i) {
            os << (i ? "," : "") << cell_to_csv(row.at(doc.columns[i]));
        }
        os << '\n';
    }
    if (doc.fit) {
        for (const auto& [key, value] : doc.fit->items()) {
            os << "# fit " << key << '=' << cell_to_csv(value) << '\n';
        }
    }
    for (const auto& [key, value] : doc.extras.items()) {
        if (value.is_object()) {
            for (const auto& [inner, iv] : value.items()) {
                os << "# " << key << ' ' << inner << '=' << cell_to_csv(iv) << '\n';
            }
        } else {
            os << "# " << key << '=' << cell_to_csv(value) << '\n';
        }
    }
}

void write_json(std::ostream& os, const Document& doc) {
    ordered_json out;
    out["meta"] = doc.meta;
    out["rows"] = doc.rows;
    if (doc.fit) out["fit"] = *doc.fit;
    for (const auto& [key, value] : doc.extras.items()) out[key] = value;
    os << out.dump(2) << '\n';
}

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

void emit(const Document& doc, const OutputOptions& out) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.path.empty()) {
        file.open(out.path);
        if (!file) throw apv::InvalidArgumentError("cannot open output file '" + out.path + "'");
        os = &file;
    }
    if (out.format == "json") {
        write_json(*os, doc);
    } else {
        write_csv(*os, doc);
    }
}

struct ProblemOptions {
    std::string f_text;
    std::vector<std::string> param_specs;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    int n = 1;
    double tol = 1e-9;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& specs) {
    std::map<std::string, double> params;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw apv::InvalidArgumentError("parameter binding must look like name=value: '" +
                                            spec + "'");
        }
        const std::string name = spec.substr(0, eq);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(spec.substr(eq + 1), &used);
        } catch (const std::exception&) {
            throw apv::InvalidArgumentError("bad numeric value in parameter '" + spec + "'");
        }
        if (used != spec.size() - eq - 1) {
            throw apv::InvalidArgumentError("bad numeric value in parameter '" + spec + "'");
        }
        if (!params.emplace(name, value).second) {
            throw apv::InvalidArgumentError("parameter '" + name + "' bound twice");
        }
    }
    return params;
}

apv::PoleProblem make_problem(const ProblemOptions& opt) {
    const auto params = parse_params(opt.param_specs);
    std::set<std::string> names;
    for (const auto& [name, value] : params) names.insert(name);
    const apv::expr::ExprAst ast = apv::expr::parse(opt.f_text, names);
    return {opt.a, opt.b, opt.c, opt.n, apv::expr::to_integrand(ast, params)};
}

void fill_problem_meta(ordered_json& meta, const ProblemOptions& opt) {
    meta["f"] = opt.f_text;
    for (const auto& [name, value] : parse_params(opt.param_specs)) {
        meta["param." + name] = value;
    }
    meta["a"] = opt.a;
    meta["b"] = opt.b;
    meta["c"] = opt.c;
    meta["n"] = opt.n;
    meta["tol"] = opt.tol;
}

struct GridOptions {
    double start = 0.1;
    double ratio = 0.5;
    int count = 5;
};

std::vector<double> make_grid(const GridOptions& grid) {
    if (!(grid.start > 0.0)) throw apv::InvalidArgumentError("--rho-start must be positive");
    if (!(grid.ratio > 0.0 && grid.ratio < 1.0)) {
        throw apv::InvalidArgumentError("--rho-ratio must lie in (0, 1)");
    }
    if (grid.count < 1) throw apv::InvalidArgumentError("--rho-count must be at least 1");
    std::vector<double> rhos;
    rhos.reserve(grid.count);
    double r = grid.start;
    for (int i = 0; i < grid.count; ++i, r *= grid.ratio) rhos.push_back(r);
    return rhos;
}

apv::RegMethod method_from_name(const std::string& name) {
    if (name == "apv") return apv::RegMethod::Apv;
    if (name == "mild") return apv::RegMethod::MildPart;
    if (name == "kernel") return apv::RegMethod::ComplexKernel;
    throw apv::InvalidArgumentError("unknown method '" + name + "'");
}

ordered_json trend_summary(const std::vector<double>& values) {
    bool increasing = true;
    bool decreasing = true;
    double last_delta = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        last_delta = values[i] - values[i - 1];
        increasing = increasing && last_delta > 0.0;
        decreasing = decreasing && last_delta < 0.0;
    }
    ordered_json trend;
    trend["direction"] = values.size() < 2 ? "n/a"
                         : increasing      ? "increasing"
                         : decreasing      ? "decreasing"
                                           : "mixed";
    trend["last_delta"] = last_delta;
    return trend;
}

int run_eval(const ProblemOptions& prob, const std::string& method_name, double rho_value,
             const OutputOptions& out) {
    const apv::PoleProblem p = make_problem(prob);
    Document doc;
    doc.meta["tool"] = "apv";
    doc.meta["version"] = kVersion;
    doc.meta["command"] = "eval";
    fill_problem_meta(doc.meta, prob);
    doc.meta["method"] = method_name;
    doc.columns = {"method", "rho", "value", "error_estimate", "evaluations"};

    int status = 0;
    double value = 0.0;
    double estimate = 0.0;
    long evaluations = 0;
    try {
        const apv::ApvResult r =
            apv::regularize(p, method_from_name(method_name), apv::Rho(rho_value), prob.tol);
        value = r.value;
        estimate = r.abs_error_estimate;
        evaluations = r.evaluations;
    } catch (const apv::AccuracyError& e) {
        std::cerr << "accuracy failure: " << e.what() << "; emitting best estimate\n";
        value = e.best_value();
        estimate = e.error_estimate();
        status = 3;
    }
    ordered_json row;
    row["method"] = method_name;
    row["rho"] = rho_value;
    row["value"] = value;
    row["error_estimate"] = estimate;
    row["evaluations"] = evaluations;
    doc.rows.push_back(row);
    emit(doc, out);
    return status;
}

int run_sweep(const ProblemOptions& prob, const std::string& method_name, const GridOptions& grid,
              bool do_fit, int max_power, bool with_log, const OutputOptions& out) {
    const apv::PoleProblem p = make_problem(prob);
    const std::vector<double> rhos = make_grid(grid);
    for (double r : rhos) p.require_valid(apv::Rho(r));

    Document doc;
    doc.meta["tool"] = "apv";
    doc.meta["version"] = kVersion;
    doc.meta["command"] = "sweep";
    fill_problem_meta(doc.meta, prob);
    doc.meta["method"] = method_name;
    doc.meta["rho_start"] = grid.start;
    doc.meta["rho_ratio"] = grid.ratio;
    doc.meta["rho_count"] = grid.count;
    doc.columns = {"rho", "value", "error_estimate", "evaluations"};

    std::vector<apv::RhoSample> samples;
    for (double r : rhos) {
        const apv::ApvResult res =
            apv::regularize(p, method_from_name(method_name), apv::Rho(r), prob.tol);
        ordered_json row;
        row["rho"] = r;
        row["value"] = res.value;
        row["error_estimate"] = res.abs_error_estimate;
        row["evaluations"] = res.evaluations;
        doc.rows.push_back(row);
        samples.push_back({r, res.value, res.abs_error_estimate});
    }

    if (do_fit) {
        if (samples.size() < 3) {
            doc.extras["warning"] = "fit skipped: need at least 3 rho values";
        } else {
            try {
                const apv::AsymptoticFit fit =
                    apv::fit_asymptotic(apv::RhoSamples(samples), max_power, with_log);
                ordered_json block;
                for (int k = fit.max_power; k >= 1; --k) {
                    block["c_-" + std::to_string(k)] = fit.coeff_for_power(k);
                }
                if (fit.include_log) block["c_log"] = fit.log_coeff;
                block["c_0"] = fit.c0;
                block["c_1"] = fit.c1;
                block["residual_rms"] = fit.residual_rms;
                block["condition_estimate"] = fit.condition_estimate;
                doc.fit = block;
            } catch (const apv::IllConditionedFitError& e) {
                doc.extras["warning"] = std::string("fit skipped: ") + e.what();
            } catch (const apv::InvalidArgumentError& e) {
                doc.extras["warning"] = std::string("fit skipped: ") + e.what();
            }
        }
    }
    emit(doc, out);
    return 0;
}

int run_compare(const ProblemOptions& prob, const GridOptions& grid, const OutputOptions& out) {
    const apv::PoleProblem p = make_problem(prob);
    const std::vector<double> rhos = make_grid(grid);
    for (double r : rhos) p.require_valid(apv::Rho(r));

    Document doc;
    doc.meta["tool"] = "apv";
    doc.meta["version"] = kVersion;
    doc.meta["command"] = "compare";
    fill_problem_meta(doc.meta, prob);
    doc.meta["rho_start"] = grid.start;
    doc.meta["rho_ratio"] = grid.ratio;
    doc.meta["rho_count"] = grid.count;
    doc.columns = {"rho",       "value_apv",     "value_mild", "value_kernel",
                   "predicted_gap", "observed_gap"};

    const apv::ComparisonReport report = apv::compare_methods(p, rhos, prob.tol);
    for (const auto& r : report.rows) {
        ordered_json row;
        row["rho"] = r.rho;
        row["value_apv"] = r.value_apv;
        row["value_mild"] = r.value_mild;
        row["value_kernel"] = r.value_kernel;
        row["predicted_gap"] = r.predicted_gap;
        row["observed_gap"] = r.observed_gap;
        doc.rows.push_back(row);
    }
    if (report.gap_order) {
        doc.extras["gap_order"] = *report.gap_order;
    } else {
        doc.extras["warning"] = report.gap_order_note;
    }
    emit(doc, out);
    return 0;
}

int run_mirror(double z, double tau, double rho, double charge, double mass, double tol,
               const OutputOptions& out) {
    const apv::MirrorConfig cfg(z, tau, rho, charge, mass);
    const apv::MirrorRegime regime = cfg.regime();

    Document doc;
    doc.meta["tool"] = "apv";
    doc.meta["version"] = kVersion;
    doc.meta["command"] = "mirror";
    doc.meta["charge"] = charge;
    doc.meta["mass"] = mass;
    doc.meta["tol"] = tol;
    doc.columns = {"z", "tau", "rho", "dvz2", "dvx2", "regime"};

    const apv::ApvResult dvz2 = apv::velocity_dispersion_z(cfg, tol);
    const apv::ApvResult dvx2 = apv::velocity_dispersion_x(cfg, tol);
    ordered_json row;
    row["z"] = z;
    row["tau"] = tau;
    row["rho"] = rho;
    row["dvz2"] = dvz2.value;
    row["dvx2"] = dvx2.value;
    row["regime"] = regime == apv::MirrorRegime::Singular ? "singular" : "regular";
    if (regime == apv::MirrorRegime::Singular) {
        const double closed = apv::dispersion_z_asymptotic(cfg);
        row["dvz2_closed_form"] = closed;
        row["dvz2_closed_form_diff"] = std::fabs(dvz2.value - closed);
        doc.columns.push_back("dvz2_closed_form");
        doc.columns.push_back("dvz2_closed_form_diff");
    }
    doc.rows.push_back(row);
    emit(doc, out);
    return 0;
}

int run_counterexample(const GridOptions& grid, double tol, const OutputOptions& out) {
    const std::vector<double> rhos = make_grid(grid);

    Document doc;
    doc.meta["tool"] = "apv";
    doc.meta["version"] = kVersion;
    doc.meta["command"] = "counterexample";
    doc.meta["tol"] = tol;
    doc.meta["rho_start"] = grid.start;
    doc.meta["rho_ratio"] = grid.ratio;
    doc.meta["rho_count"] = grid.count;
    doc.columns = {"rho", "apv", "kernel", "partial_integral_form"};

    const apv::CounterexampleReport report = apv::counterexample_i1(rhos, tol);
    std::vector<double> apv_col;
    std::vector<double> kernel_col;
    std::vector<double> partial_col;
    for (const auto& r : report.rows) {
        ordered_json row;
        row["rho"] = r.rho;
        row["apv"] = r.apv_value;
        row["kernel"] = r.kernel_value;
        row["partial_integral_form"] = r.partial_integral_value;
        doc.rows.push_back(row);
        apv_col.push_back(r.apv_value);
        kernel_col.push_back(r.kernel_value);
        partial_col.push_back(r.partial_integral_value);
    }
    ordered_json trends;
    trends["apv"] = trend_summary(apv_col);
    trends["kernel"] = trend_summary(kernel_col);
    trends["partial_integral_form"] = trend_summary(partial_col);
    doc.extras["trend"] = trends;
    emit(doc, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"asymptotic principal values for pole integrals"};
    app.require_subcommand(1);

    ProblemOptions prob;
    OutputOptions out;
    GridOptions grid;
    std::string method = "apv";
    double rho_value = 0.1;
    bool do_fit = false;
    int max_power = 1;
    bool with_log = false;
    double z = 0.5;
    double tau = 5.0;
    double charge = 1.0;
    double mass = 1.0;
    double mirror_tol = 1e-9;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--format", out.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output", out.path, "output path (default: stdout)");
    };
    auto add_problem = [&](CLI::App* cmd) {
        cmd->add_option("--f", prob.f_text, "integrand expression in x")->required();
        cmd->add_option("--param", prob.param_specs, "parameter binding name=value");
        cmd->add_option("--a", prob.a, "lower limit")->required();
        cmd->add_option("--b", prob.b, "upper limit")->required();
        cmd->add_option("--c", prob.c, "pole location")->required();
        cmd->add_option("--n", prob.n, "pole order")->required();
        cmd->add_option("--tol", prob.tol, "absolute quadrature tolerance");
    };
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--rho-start", grid.start, "largest rho")->required();
        cmd->add_option("--rho-ratio", grid.ratio, "geometric ratio in (0,1)");
        cmd->add_option("--rho-count", grid.count, "number of grid points")->required();
    };

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one method at one rho");
    add_problem(eval_cmd);
    eval_cmd->add_option("--method", method, "apv | mild | kernel")
        ->check(CLI::IsMember({"apv", "mild", "kernel"}));
    eval_cmd->add_option("--rho", rho_value, "cutoff value")->required();
    add_output(eval_cmd);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate over a geometric rho grid");
    add_problem(sweep_cmd);
    sweep_cmd->add_option("--method", method, "apv | mild | kernel")
        ->check(CLI::IsMember({"apv", "mild", "kernel"}));
    add_grid(sweep_cmd);
    sweep_cmd->add_flag("--fit", do_fit, "append an asymptotic fit");
    sweep_cmd->add_option("--max-power", max_power, "largest pole power in the fit basis");
    sweep_cmd->add_flag("--with-log", with_log, "include a ln(rho) basis term");
    add_output(sweep_cmd);

    CLI::App* compare_cmd = app.add_subcommand("compare", "all three methods plus the gap");
    add_problem(compare_cmd);
    add_grid(compare_cmd);
    add_output(compare_cmd);

    CLI::App* mirror_cmd = app.add_subcommand("mirror", "velocity dispersions near the mirror");
    mirror_cmd->add_option("--z", z, "distance from the mirror")->required();
    mirror_cmd->add_option("--tau", tau, "measurement duration")->required();
    mirror_cmd->add_option("--rho", rho_value, "cutoff value")->required();
    mirror_cmd->add_option("--charge", charge, "probe charge");
    mirror_cmd->add_option("--mass", mass, "probe mass");
    mirror_cmd->add_option("--tol", mirror_tol, "absolute quadrature tolerance");
    add_output(mirror_cmd);

    CLI::App* counter_cmd =
        app.add_subcommand("counterexample", "the I1 = 2 integral under the three treatments");
    add_grid(counter_cmd);
    counter_cmd->add_option("--tol", mirror_tol, "absolute quadrature tolerance");
    add_output(counter_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(eval_cmd)) return run_eval(prob, method, rho_value, out);
        if (app.got_subcommand(sweep_cmd)) {
            return run_sweep(prob, method, grid, do_fit, max_power, with_log, out);
        }
        if (app.got_subcommand(compare_cmd)) return run_compare(prob, grid, out);
        if (app.got_subcommand(mirror_cmd)) {
            return run_mirror(z, tau, rho_value, charge, mass, mirror_tol, out);
        }
        if (app.got_subcommand(counter_cmd)) return run_counterexample(grid, mirror_tol, out);
    } catch (const apv::AccuracyError& e) {
        std::cerr << "accuracy failure: " << e.what() << " (best value " << fmt17(e.best_value())
                  << ", estimate " << fmt17(e.error_estimate()) << ")\n";
        return 3;
    } catch (const apv::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

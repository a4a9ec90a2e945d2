#include "apv/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "apv/asymptotics.hpp"

namespace apv {

namespace {

double real_shift_kernel(double distance, double rho, int n) {
    std::complex<double> acc(1.0, 0.0);
    const std::complex<double> shifted(distance, rho);
    for (int i = 0; i < n; ++i) acc *= shifted;
    return (1.0 / acc).real();
}

// Neville extrapolation of (rho, value) pairs to rho = 0.
double extrapolate_to_zero(std::vector<std::pair<double, double>> pts) {
    const std::size_t m = pts.size();
    for (std::size_t level = 1; level < m; ++level) {
        for (std::size_t i = 0; i + level < m; ++i) {
            const double x0 = pts[i].first;
            const double x1 = pts[i + level].first;
            pts[i].second = (x0 * pts[i + 1].second - x1 * pts[i].second) / (x0 - x1);
        }
    }
    return pts.front().second;
}

}  // namespace

ApvResult kernel_integral(const PoleProblem& p, Rho rho, double tol) {
    const Integrand& f = p.f();
    const double c = p.c();
    const int n = p.n();
    const double r = rho.value;
    auto smoothed = [&f, c, n, r](double x) { return f(x) * real_shift_kernel(x - c, r, n); };
    const QuadResult q = integrate(smoothed, p.a(), p.b(), tol);
    return {q.value, q.abs_error_estimate, r, q.evaluations};
}

ApvResult regularize(const PoleProblem& p, RegMethod method, Rho rho, double tol) {
    switch (method) {
        case RegMethod::Apv: return apv_direct(p, rho, tol);
        case RegMethod::MildPart:
            if (p.n() == 1) return apv_direct(p, rho, tol);  // nothing to strip
            return mild_part(p, rho, tol);
        case RegMethod::ComplexKernel: return kernel_integral(p, rho, tol);
    }
    throw InvalidArgumentError("unknown regularization method");
}

DiracReport dirac_formula_check(const PoleProblem& p, const std::vector<double>& rhos,
                                double tol) {
    if (p.n() != 1) throw InvalidArgumentError("the kernel identity check applies to n = 1");
    if (rhos.empty()) throw InvalidArgumentError("need at least one rho");
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        if (!(rhos[i] > 0.0)) throw InvalidArgumentError("rho values must be positive");
        if (i > 0 && !(rhos[i] < rhos[i - 1])) {
            throw InvalidArgumentError("rho values must be strictly decreasing");
        }
    }

    // Reference: extrapolate the punctured integral to rho = 0 on a finer
    // halving ladder so its own error sits well below the reported gaps.
    const double base = rhos.back() / 2.0;
    std::vector<std::pair<double, double>> ladder;
    for (double r : {base, base / 2.0, base / 4.0}) {
        ladder.emplace_back(r, apv_direct(p, Rho(r), tol).value);
    }
    const double pv = extrapolate_to_zero(std::move(ladder));

    DiracReport report{pv, {}, true};
    report.rows.reserve(rhos.size());
    for (double r : rhos) {
        const double kv = kernel_integral(p, Rho(r), tol).value;
        report.rows.push_back({r, kv, std::fabs(kv - pv)});
    }
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (!(report.rows[i].difference < report.rows[i - 1].difference)) {
            report.monotone_decay = false;
        }
    }
    return report;
}

ComparisonReport compare_methods(const PoleProblem& p, const std::vector<double>& rhos,
                                 double tol) {
    if (p.n() < 2) throw OrderTooLowError("method comparison needs pole order n >= 2");
    ComparisonReport report;
    report.rows.reserve(rhos.size());

    std::vector<RhoSample> gap_samples;
    gap_samples.reserve(rhos.size());
    for (double r : rhos) {
        const Rho rho(r);
        const ApvResult direct = apv_direct(p, rho, tol);
        const SingularDecomposition split = singular_split(p, rho, tol);
        const ApvResult kernel = kernel_integral(p, rho, tol);
        ComparisonRow row;
        row.rho = r;
        row.value_apv = direct.value;
        row.value_mild = split.mild;
        row.value_kernel = kernel.value;
        row.predicted_gap = split.singular_sum();
        row.observed_gap = direct.value - split.mild;
        report.rows.push_back(row);
        gap_samples.push_back(
            {r, row.observed_gap, direct.abs_error_estimate + split.mild_error_estimate});
    }

    if (gap_samples.size() < 3) {
        report.gap_order_note = "insufficient-data: order fit needs at least 3 rho values";
        return report;
    }
    try {
        report.gap_order = order_estimate(RhoSamples(std::move(gap_samples)));
    } catch (const NotPowerLawError& e) {
        report.gap_order_note = e.what();
    }
    return report;
}

CounterexampleReport counterexample_i1(const std::vector<double>& rhos, double tol) {
    const PoleProblem identity(-1.0, 1.0, 0.0, 1, make_polynomial_integrand({0.0, 1.0}));

    CounterexampleReport report;
    report.rows.reserve(rhos.size());
    for (double r : rhos) {
        if (!(r > 0.0 && r < 1.0)) {
            throw InvalidArgumentError("counterexample rho values must lie in (0, 1)");
        }
        const Rho rho(r);
        CounterexampleRow row;
        row.rho = r;
        row.apv_value = apv_direct(identity, rho, tol).value;
        row.kernel_value = kernel_integral(identity, rho, tol).value;
        const QuadResult log_part =
            integrate([r](double x) { return std::log(x * x + r * r); }, 0.0, 1.0, tol);
        row.partial_integral_value = std::log1p(r * r) - log_part.value;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace apv

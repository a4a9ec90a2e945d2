#include "apv/asymptotics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace apv {

RhoSamples::RhoSamples(std::vector<RhoSample> samples) : samples_(std::move(samples)) {
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!(samples_[i].rho > 0.0)) throw InvalidArgumentError("rho samples must be positive");
        if (samples_[i].error_estimate < 0.0) {
            throw InvalidArgumentError("error estimates must be non-negative");
        }
        if (i > 0 && !(samples_[i].rho < samples_[i - 1].rho)) {
            throw InvalidArgumentError("rho samples must be strictly decreasing");
        }
    }
}

double order_estimate(const RhoSamples& samples) {
    const auto& pts = samples.entries();
    if (pts.size() < 3) throw InvalidArgumentError("order estimate needs at least 3 samples");

    const double sign = pts.front().value > 0.0 ? 1.0 : -1.0;
    for (const auto& s : pts) {
        if (s.value == 0.0 || s.value * sign < 0.0) {
            throw NotPowerLawError("samples change sign or vanish; no power law to fit");
        }
    }

    double t_mean = 0.0;
    double y_mean = 0.0;
    for (const auto& s : pts) {
        t_mean += std::log(s.rho);
        y_mean += std::log(std::fabs(s.value));
    }
    t_mean /= pts.size();
    y_mean /= pts.size();

    double num = 0.0;
    double den = 0.0;
    for (const auto& s : pts) {
        const double dt = std::log(s.rho) - t_mean;
        num += dt * (std::log(std::fabs(s.value)) - y_mean);
        den += dt * dt;
    }
    if (den == 0.0) throw InvalidArgumentError("rho samples must not be all equal");
    return num / den;
}

double AsymptoticFit::coeff_for_power(int k) const {
    if (k < 1 || k > max_power) throw InvalidArgumentError("no such pole power in the fit");
    return pole_coeffs[k - 1];
}

double AsymptoticFit::evaluate(double rho) const {
    double acc = c0 + c1 * rho;
    if (include_log) acc += log_coeff * std::log(rho);
    for (int k = 1; k <= max_power; ++k) acc += pole_coeffs[k - 1] * std::pow(rho, -k);
    return acc;
}

AsymptoticFit fit_asymptotic(const RhoSamples& samples, int max_power, bool include_log) {
    if (max_power < 0) throw InvalidArgumentError("max_power must be non-negative");
    const auto& pts = samples.entries();
    const int n_basis = max_power + (include_log ? 1 : 0) + 2;
    if (static_cast<int>(pts.size()) < n_basis + 1) {
        throw InvalidArgumentError("need at least " + std::to_string(n_basis + 1) +
                                   " samples for this basis");
    }

    bool any_weight = false;
    for (const auto& s : pts) any_weight = any_weight || s.error_estimate > 0.0;
    double min_err = std::numeric_limits<double>::infinity();
    if (any_weight) {
        for (const auto& s : pts) {
            if (s.error_estimate > 0.0) min_err = std::min(min_err, s.error_estimate);
        }
    }

    const auto m = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd design(m, n_basis);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& s = pts[static_cast<std::size_t>(i)];
        const double weight = any_weight ? 1.0 / std::max(s.error_estimate, 1e-3 * min_err) : 1.0;
        int col = 0;
        for (int k = max_power; k >= 1; --k) design(i, col++) = std::pow(s.rho, -k);
        if (include_log) design(i, col++) = std::log(s.rho);
        design(i, col++) = 1.0;
        design(i, col++) = s.rho;
        design.row(i) *= weight;
        rhs(i) = weight * s.value;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    const double condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    if (!(condition < kConditionLimit)) {
        throw IllConditionedFitError("asymptotic fit design matrix is ill-conditioned", condition);
    }
    const Eigen::VectorXd coeffs = svd.solve(rhs);

    AsymptoticFit fit;
    fit.max_power = max_power;
    fit.include_log = include_log;
    fit.pole_coeffs.assign(max_power, 0.0);
    int col = 0;
    for (int k = max_power; k >= 1; --k) fit.pole_coeffs[k - 1] = coeffs(col++);
    fit.log_coeff = include_log ? coeffs(col++) : 0.0;
    fit.c0 = coeffs(col++);
    fit.c1 = coeffs(col++);
    fit.condition_estimate = condition;

    double ss = 0.0;
    for (const auto& s : pts) {
        const double r = fit.evaluate(s.rho) - s.value;
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(pts.size()));
    return fit;
}

}  // namespace apv

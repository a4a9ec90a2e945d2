#pragma once

#include <vector>

#include "apv/errors.hpp"

namespace apv {

struct RhoSample {
    double rho;
    double value;
    double error_estimate = 0.0;
};

/// Cutoff-sweep samples; rho values strictly decreasing, distinct, positive.
class RhoSamples {
  public:
    explicit RhoSamples(std::vector<RhoSample> samples);

    const std::vector<RhoSample>& entries() const { return samples_; }
    std::size_t size() const { return samples_.size(); }

  private:
    std::vector<RhoSample> samples_;
};

/// Least-squares slope of ln|value| against ln rho: A/rho^k maps to -k.
/// Values must be nonzero and of one sign.
double order_estimate(const RhoSamples& samples);

/// Coefficients of  sum_k c_{-k} rho^{-k} + c_L ln rho + c0 + c1 rho.
struct AsymptoticFit {
    int max_power;
    bool include_log;
    std::vector<double> pole_coeffs;  // pole_coeffs[k-1] multiplies rho^{-k}
    double log_coeff;                 // 0 unless include_log
    double c0;
    double c1;
    double residual_rms;
    double condition_estimate;

    double coeff_for_power(int k) const;  // k >= 1
    double evaluate(double rho) const;
};

/// Condition numbers above this bound raise IllConditionedFitError.
inline constexpr double kConditionLimit = 1e12;

/// Weighted linear least squares over the basis
/// {rho^-max_power, ..., rho^-1, [ln rho], 1, rho}, weights from the sample
/// error estimates when present.
AsymptoticFit fit_asymptotic(const RhoSamples& samples, int max_power, bool include_log);

}  // namespace apv

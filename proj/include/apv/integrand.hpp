#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "apv/errors.hpp"

namespace apv {

/// Sentinel max_order for integrands whose derivatives exist to any order.
inline constexpr int kUnboundedOrder = 1 << 20;

/// A real function of one real variable together with a provider for its
/// derivatives. Immutable after construction; evaluation is re-entrant.
class Integrand {
  public:
    class Impl {
      public:
        virtual ~Impl() = default;
        virtual double eval(double x) const = 0;
        virtual std::shared_ptr<const Impl> differentiate() const = 0;
        virtual int max_order() const = 0;
    };

    explicit Integrand(std::shared_ptr<const Impl> impl);

    double operator()(double x) const { return impl_->eval(x); }

    /// k-th derivative as another Integrand; derivative(0) is a copy of *this.
    Integrand derivative(int k = 1) const;

    /// Largest derivative order guaranteed available.
    int max_order() const { return impl_->max_order(); }

  private:
    std::shared_ptr<const Impl> impl_;
};

/// f(x) = sum coeffs[i] * x^i. Derivatives are exact to any order.
Integrand make_polynomial_integrand(const std::vector<double>& coeffs);

/// Opaque callable with derivatives computed by central finite differences
/// (Richardson-extrapolated for order >= 2). Accuracy degrades with the
/// derivative order; fd_step is the base step used for first derivatives.
Integrand make_fd_integrand(std::function<double(double)> eval, int max_order, double fd_step);
Integrand make_fd_integrand(std::function<double(double)> eval, int max_order);

/// User-supplied analytic derivative chain: derivatives[k] evaluates f^(k).
Integrand make_analytic_integrand(std::vector<std::function<double(double)>> derivatives);

/// Default finite-difference step, eps^(1/3): truncation/round-off balance
/// for a second-order central scheme.
double default_fd_step();

}  // namespace apv

#pragma once

#include <algorithm>
#include <string>

#include "apv/errors.hpp"
#include "apv/integrand.hpp"

namespace apv {

/// Pole orders are capped so factorial coefficients stay exact in int64 and
/// the derivative-order demands stay sane.
inline constexpr int kMaxPoleOrder = 12;

/// Dimensionless puncture half-width. Positivity is enforced here; validity
/// against a concrete problem (rho < min(c-a, b-c)) is checked by PoleProblem.
struct Rho {
    explicit Rho(double v) : value(v) {
        if (!(v > 0.0)) throw InvalidArgumentError("rho must be positive");
    }

    double value;
};

/// The singular integral instance: integral over [a,b] of f(x)/(x-c)^n dx,
/// a < c < b, n >= 1, with f differentiable at least n-1 times.
class PoleProblem {
  public:
    PoleProblem(double a, double b, double c, int n, Integrand f)
        : a_(a), b_(b), c_(c), n_(n), f_(std::move(f)) {
        if (!(a < c && c < b)) {
            throw InvalidArgumentError("pole must lie strictly inside the interval (a < c < b)");
        }
        if (n < 1) throw InvalidArgumentError("pole order n must be at least 1");
        if (n > kMaxPoleOrder) {
            throw InvalidArgumentError("pole order n must not exceed " + std::to_string(kMaxPoleOrder));
        }
        if (f_.max_order() < n - 1) {
            throw InvalidArgumentError("integrand must provide derivatives up to order n-1");
        }
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    int n() const { return n_; }
    const Integrand& f() const { return f_; }

    /// Largest admissible puncture half-width.
    double puncture_limit() const { return std::min(c_ - a_, b_ - c_); }

    void require_valid(Rho rho) const {
        if (!(rho.value < puncture_limit())) {
            throw InvalidArgumentError("rho = " + std::to_string(rho.value) +
                                       " does not fit inside the interval around the pole");
        }
    }

    PoleProblem with_order(int n) const { return {a_, b_, c_, n, f_}; }
    PoleProblem with_pole(double c) const { return {a_, b_, c, n_, f_}; }
    PoleProblem with_integrand(Integrand f) const { return {a_, b_, c_, n_, std::move(f)}; }

  private:
    double a_;
    double b_;
    double c_;
    int n_;
    Integrand f_;
};

/// Value of an asymptotic principal value at one rho.
struct ApvResult {
    double value;
    double abs_error_estimate;
    double rho;
    long evaluations;
};

}  // namespace apv

#pragma once

#include <stdexcept>
#include <string>

namespace apv {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad interval, bad order, ...).
class InvalidArgumentError : public Error {
  public:
    using Error::Error;
};

/// A derivative of higher order than the integrand guarantees was requested.
class UnsupportedOrderError : public Error {
  public:
    using Error::Error;
};

/// An operation that needs n above some minimum was called with a smaller n.
class OrderTooLowError : public Error {
  public:
    using Error::Error;
};

/// Input lies outside the mathematical domain of the operation
/// (pole on the light cone, sigma outside (0,1), tau = 2z, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Integrand evaluation failed at a concrete point.
class EvaluationError : public Error {
  public:
    EvaluationError(const std::string& what, double x)
        : Error(what + " (at x = " + std::to_string(x) + ")"), x_(x) {}

    double where() const { return x_; }

  private:
    double x_;
};

/// Adaptive quadrature ran out of its subdivision budget. Carries the best
/// estimate computed so far; never a silent return.
class AccuracyError : public Error {
  public:
    AccuracyError(const std::string& what, double best_value, double error_estimate)
        : Error(what), best_value_(best_value), error_estimate_(error_estimate) {}

    double best_value() const { return best_value_; }
    double error_estimate() const { return error_estimate_; }

  private:
    double best_value_;
    double error_estimate_;
};

/// A finite-difference stencil in the pole position left the valid region.
class StencilError : public Error {
  public:
    using Error::Error;
};

/// Samples handed to order_estimate change sign or vanish.
class NotPowerLawError : public Error {
  public:
    using Error::Error;
};

/// Least-squares design matrix condition number above the sanity bound.
class IllConditionedFitError : public Error {
  public:
    IllConditionedFitError(const std::string& what, double condition_estimate)
        : Error(what), condition_(condition_estimate) {}

    double condition_estimate() const { return condition_; }

  private:
    double condition_;
};

/// Expression text failed to parse. Position is a 0-based character offset.
class SyntaxError : public InvalidArgumentError {
  public:
    SyntaxError(const std::string& what, std::size_t position)
        : InvalidArgumentError(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

}  // namespace apv

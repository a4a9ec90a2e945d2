#include "apv/integrand.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace apv {

namespace {

class PolynomialImpl final : public Integrand::Impl {
  public:
    explicit PolynomialImpl(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

    double eval(double x) const override {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    std::shared_ptr<const Impl> differentiate() const override {
        std::vector<double> d;
        d.reserve(coeffs_.size() > 1 ? coeffs_.size() - 1 : 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            d.push_back(static_cast<double>(i) * coeffs_[i]);
        }
        if (d.empty()) d.push_back(0.0);
        return std::make_shared<PolynomialImpl>(std::move(d));
    }

    int max_order() const override { return kUnboundedOrder; }

  private:
    std::vector<double> coeffs_;
};

class AnalyticChainImpl final : public Integrand::Impl {
  public:
    AnalyticChainImpl(std::shared_ptr<const std::vector<std::function<double(double)>>> chain,
                      std::size_t level)
        : chain_(std::move(chain)), level_(level) {}

    double eval(double x) const override { return (*chain_)[level_](x); }

    std::shared_ptr<const Impl> differentiate() const override {
        if (level_ + 1 >= chain_->size()) {
            throw UnsupportedOrderError("analytic derivative chain exhausted");
        }
        return std::make_shared<AnalyticChainImpl>(chain_, level_ + 1);
    }

    int max_order() const override {
        return static_cast<int>(chain_->size() - 1 - level_);
    }

  private:
    std::shared_ptr<const std::vector<std::function<double(double)>>> chain_;
    std::size_t level_;
};

// Central k-th finite difference of `base` at x with step h.
double central_difference(const std::function<double(double)>& base, int k, double x, double h) {
    // Binomial-weighted alternating sum over the symmetric stencil.
    double acc = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        const double node = x + (0.5 * k - j) * h;
        acc += (j % 2 == 0 ? binom : -binom) * base(node);
        binom = binom * (k - j) / (j + 1);
    }
    return acc / std::pow(h, k);
}

class FiniteDifferenceImpl final : public Integrand::Impl {
  public:
    FiniteDifferenceImpl(std::shared_ptr<const std::function<double(double)>> base,
                         int deriv_order, int max_order, double fd_step)
        : base_(std::move(base)), deriv_order_(deriv_order), max_order_(max_order),
          fd_step_(fd_step) {}

    double eval(double x) const override {
        if (deriv_order_ == 0) return (*base_)(x);
        const double h = step_for(deriv_order_, x);
        if (deriv_order_ == 1) {
            return central_difference(*base_, 1, x, h);
        }
        // One Richardson level on the O(h^2) central scheme.
        const double coarse = central_difference(*base_, deriv_order_, x, h);
        const double fine = central_difference(*base_, deriv_order_, x, 0.5 * h);
        return (4.0 * fine - coarse) / 3.0;
    }

    std::shared_ptr<const Impl> differentiate() const override {
        if (deriv_order_ + 1 > max_order_) {
            throw UnsupportedOrderError("finite-difference integrand supports derivatives up to order " +
                                        std::to_string(max_order_));
        }
        return std::make_shared<FiniteDifferenceImpl>(base_, deriv_order_ + 1, max_order_, fd_step_);
    }

    int max_order() const override { return max_order_ - deriv_order_; }

  private:
    double step_for(int k, double x) const {
        double h = fd_step_;
        if (k >= 2) {
            // Round-off amplification grows like eps/h^k; widen the step.
            const double floor_k =
                std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (k + 4));
            h = std::max(h, floor_k);
        }
        return h * std::max(1.0, std::fabs(x));
    }

    std::shared_ptr<const std::function<double(double)>> base_;
    int deriv_order_;
    int max_order_;
    double fd_step_;
};

}  // namespace

Integrand::Integrand(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {
    if (!impl_) throw InvalidArgumentError("integrand implementation must not be null");
}

Integrand Integrand::derivative(int k) const {
    if (k < 0) throw InvalidArgumentError("derivative order must be non-negative");
    if (k > max_order()) {
        throw UnsupportedOrderError("derivative of order " + std::to_string(k) +
                                    " exceeds max_order " + std::to_string(max_order()));
    }
    auto impl = impl_;
    for (int i = 0; i < k; ++i) impl = impl->differentiate();
    return Integrand(impl);
}

Integrand make_polynomial_integrand(const std::vector<double>& coeffs) {
    if (coeffs.empty()) throw InvalidArgumentError("polynomial needs at least one coefficient");
    return Integrand(std::make_shared<PolynomialImpl>(coeffs));
}

double default_fd_step() {
    return std::cbrt(std::numeric_limits<double>::epsilon());
}

Integrand make_fd_integrand(std::function<double(double)> eval, int max_order, double fd_step) {
    if (!eval) throw InvalidArgumentError("finite-difference integrand needs a callable");
    if (max_order < 1) throw InvalidArgumentError("max_order must be at least 1");
    if (!(fd_step > 0)) throw InvalidArgumentError("fd_step must be positive");
    auto base = std::make_shared<const std::function<double(double)>>(std::move(eval));
    return Integrand(std::make_shared<FiniteDifferenceImpl>(std::move(base), 0, max_order, fd_step));
}

Integrand make_fd_integrand(std::function<double(double)> eval, int max_order) {
    return make_fd_integrand(std::move(eval), max_order, default_fd_step());
}

Integrand make_analytic_integrand(std::vector<std::function<double(double)>> derivatives) {
    if (derivatives.empty()) throw InvalidArgumentError("analytic chain needs at least f itself");
    for (const auto& fn : derivatives) {
        if (!fn) throw InvalidArgumentError("analytic chain entries must be callable");
    }
    auto chain = std::make_shared<const std::vector<std::function<double(double)>>>(std::move(derivatives));
    return Integrand(std::make_shared<AnalyticChainImpl>(std::move(chain), 0));
}

}  // namespace apv

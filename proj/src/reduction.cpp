#include "apv/reduction.hpp"

#include <cmath>
#include <cstdint>
#include <functional>

namespace apv {

namespace {

// Exact up to 12!; kMaxPoleOrder keeps indices inside this table.
std::int64_t factorial(int m) {
    static const std::int64_t table[] = {1,      1,       2,        6,        24,
                                         120,    720,     5040,     40320,    362880,
                                         3628800, 39916800, 479001600};
    return table[m];
}

double factorial_ratio(int num, int den) {
    return static_cast<double>(factorial(num)) / static_cast<double>(factorial(den));
}

double central_derivative(const std::function<double(double)>& g, double x, int order,
                          double step) {
    if (order == 0) return g(x);
    auto lower = [&](double y) { return central_derivative(g, y, order - 1, step); };
    return (lower(x + step) - lower(x - step)) / (2.0 * step);
}

}  // namespace

double SingularTerm::contribution(double rho) const {
    return coefficient * bracket / std::pow(rho, power);
}

double SingularDecomposition::singular_sum() const {
    double acc = 0.0;
    for (const auto& term : singular_terms) acc += term.contribution(rho);
    return acc;
}

double bracket_term(const Integrand& f, double c, Rho rho, int n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return f(c + rho.value) - sign * f(c - rho.value);
}

double plain_boundary(const PoleProblem& p) {
    const Integrand& f = p.f();
    const double c = p.c();
    const int n = p.n();
    return f(p.b()) / std::pow(p.b() - c, n) - f(p.a()) / std::pow(p.a() - c, n);
}

double punctured_boundary(const PoleProblem& p, Rho rho) {
    p.require_valid(rho);
    return plain_boundary(p) -
           bracket_term(p.f(), p.c(), rho, p.n()) / std::pow(rho.value, p.n());
}

double zeta_term(const PoleProblem& p, Rho rho) {
    return punctured_boundary(p, rho) / p.n();
}

ApvResult reduce_once(const PoleProblem& p, Rho rho, double tol) {
    if (p.n() < 2) throw OrderTooLowError("reduce_once needs pole order n >= 2");
    const PoleProblem lowered(p.a(), p.b(), p.c(), p.n() - 1, p.f().derivative());
    const ApvResult inner = apv_direct(lowered, rho, tol);
    const double zeta = zeta_term(p.with_order(p.n() - 1), rho);
    return {inner.value / (p.n() - 1) - zeta, inner.abs_error_estimate / (p.n() - 1), rho.value,
            inner.evaluations};
}

ApvResult reduce_to_simple(const PoleProblem& p, Rho rho, double tol) {
    const int n = p.n();
    if (n < 2) throw OrderTooLowError("reduce_to_simple needs pole order n >= 2");
    const PoleProblem simple(p.a(), p.b(), p.c(), 1, p.f().derivative(n - 1));
    const ApvResult head = apv_direct(simple, rho, tol);

    double value = head.value / factorial_ratio(n - 1, 0);
    for (int k = 1; k <= n - 1; ++k) {
        const PoleProblem piece(p.a(), p.b(), p.c(), n - k, p.f().derivative(k - 1));
        value -= factorial_ratio(n - k, n - 1) * zeta_term(piece, rho);
    }
    return {value, head.abs_error_estimate / factorial_ratio(n - 1, 0), rho.value,
            head.evaluations};
}

ApvResult mild_part(const PoleProblem& p, Rho rho, double tol) {
    const int n = p.n();
    if (n < 2) throw OrderTooLowError("mild_part needs pole order n >= 2");
    p.require_valid(rho);
    const PoleProblem simple(p.a(), p.b(), p.c(), 1, p.f().derivative(n - 1));
    const ApvResult head = apv_direct(simple, rho, tol);

    double value = head.value / factorial_ratio(n - 1, 0);
    for (int k = 1; k <= n - 1; ++k) {
        const PoleProblem piece(p.a(), p.b(), p.c(), n - k, p.f().derivative(k - 1));
        value -= factorial_ratio(n - k - 1, n - 1) * plain_boundary(piece);
    }
    return {value, head.abs_error_estimate / factorial_ratio(n - 1, 0), rho.value,
            head.evaluations};
}

SingularDecomposition singular_split(const PoleProblem& p, Rho rho, double tol) {
    const int n = p.n();
    const ApvResult mild = mild_part(p, rho, tol);

    SingularDecomposition out{mild.value, mild.abs_error_estimate, {}, rho.value,
                              mild.evaluations};
    out.singular_terms.reserve(n - 1);
    for (int k = 1; k <= n - 1; ++k) {
        SingularTerm term;
        term.k = k;
        term.coefficient = factorial_ratio(n - k - 1, n - 1);
        term.bracket = bracket_term(p.f().derivative(k - 1), p.c(), rho, n - k);
        term.power = n - k;
        out.singular_terms.push_back(term);
    }
    return out;
}

double default_dc_step(Rho rho) {
    return std::max(1e-4, rho.value / 50.0);
}

namespace {

void require_stencil_valid(const PoleProblem& p, Rho rho, double half_width) {
    const double c_lo = p.c() - half_width;
    const double c_hi = p.c() + half_width;
    if (!(p.a() < c_lo && c_hi < p.b()) ||
        !(rho.value < std::min(c_lo - p.a(), p.b() - c_hi))) {
        throw StencilError("pole-position stencil of half-width " + std::to_string(half_width) +
                           " leaves the valid region");
    }
}

}  // namespace

double mild_via_derivative(const PoleProblem& p, Rho rho, double tol, double dc_step) {
    const int n = p.n();
    if (n < 2) throw OrderTooLowError("mild_via_derivative needs pole order n >= 2");
    if (!(dc_step > 0.0)) throw InvalidArgumentError("dc_step must be positive");
    require_stencil_valid(p, rho, (n - 1) * dc_step);

    auto simple_apv = [&](double c) {
        const PoleProblem shifted(p.a(), p.b(), c, 1, p.f());
        return apv_direct(shifted, rho, tol).value;
    };
    const double deriv = central_derivative(simple_apv, p.c(), n - 1, dc_step);
    return deriv / static_cast<double>(factorial(n - 1));
}

double lemma2_check(const PoleProblem& p, Rho rho, double tol, double dc_step) {
    const int n = p.n();
    if (!(dc_step > 0.0)) throw InvalidArgumentError("dc_step must be positive");
    require_stencil_valid(p, rho, dc_step);

    const double lhs = apv_direct(p.with_order(n + 1), rho, tol).value;
    auto order_n_apv = [&](double c) {
        return apv_direct(p.with_pole(c), rho, tol).value;
    };
    const double dc = central_derivative(order_n_apv, p.c(), 1, dc_step);
    const double rhs = dc / n + bracket_term(p.f(), p.c(), rho, n) /
                                    (n * std::pow(rho.value, n));
    return std::fabs(lhs - rhs);
}

}  // namespace apv

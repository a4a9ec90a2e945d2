#include "apv/mirror.hpp"

#include <cmath>
#include <numbers>

#include "apv/expr.hpp"

namespace apv {

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

void require_off_boundary(const MirrorConfig& cfg) {
    if (cfg.tau == 2.0 * cfg.z) {
        throw DomainError("tau = 2z sits on the boundary between the regular and singular regimes");
    }
}

Integrand reduced_integrand_z(double sigma) {
    static const expr::ExprAst ast = expr::parse("(1 - x) / (x + s)^2", {"s"});
    return expr::to_integrand(ast, {{"s", sigma}});
}

Integrand reduced_integrand_x(double sigma) {
    static const expr::ExprAst ast = expr::parse("(1 - x) * (x^2 + s^2) / (x + s)^3", {"s"});
    return expr::to_integrand(ast, {{"s", sigma}});
}

}  // namespace

MirrorConfig::MirrorConfig(double z_, double tau_, double rho_, double charge_, double mass_)
    : z(z_), tau(tau_), rho(rho_), charge(charge_), mass(mass_) {
    if (!(z > 0.0)) throw InvalidArgumentError("mirror distance z must be positive");
    if (!(tau > 0.0)) throw InvalidArgumentError("measurement duration tau must be positive");
    if (!(rho > 0.0)) throw InvalidArgumentError("rho must be positive");
    if (!(mass > 0.0)) throw InvalidArgumentError("probe mass must be positive");
}

MirrorRegime MirrorConfig::regime() const {
    require_off_boundary(*this);
    return tau > 2.0 * z ? MirrorRegime::Singular : MirrorRegime::Regular;
}

double correlator_zz(double T, double z) {
    if (!(z > 0.0)) throw InvalidArgumentError("z must be positive");
    const double gap = T * T - 4.0 * z * z;
    if (gap == 0.0) throw DomainError("correlator diverges on the light cone |T| = 2z");
    return 1.0 / (kPiSq * gap * gap);
}

double correlator_xx(double T, double z) {
    if (!(z > 0.0)) throw InvalidArgumentError("z must be positive");
    const double gap = T * T - 4.0 * z * z;
    if (gap == 0.0) throw DomainError("correlator diverges on the light cone |T| = 2z");
    return -(T * T + 4.0 * z * z) / (kPiSq * gap * gap * gap);
}

double useful_formula(double sigma, Rho rho) {
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw DomainError("the closed form holds for 0 < sigma < 1");
    }
    const double ratio = (1.0 + sigma) / (1.0 - sigma);
    return std::log(ratio * ratio) / (8.0 * sigma * sigma * sigma) +
           (1.0 - sigma) / (2.0 * sigma * sigma * rho.value);
}

double dispersion_prefactor_z(const MirrorConfig& cfg) {
    // Double time integral reduced over T = t' - t'', then x = T/tau:
    // <dv_z^2> = (2 e^2 / (pi^2 m^2 tau^2)) * integral_0^1 (1-x)/(x^2-sigma^2)^2 dx.
    const double e_over_m = cfg.charge / cfg.mass;
    return 2.0 * e_over_m * e_over_m / (kPiSq * cfg.tau * cfg.tau);
}

double dispersion_prefactor_x(const MirrorConfig& cfg) {
    return -dispersion_prefactor_z(cfg);
}

PoleProblem dispersion_problem_z(const MirrorConfig& cfg) {
    if (cfg.regime() != MirrorRegime::Singular) {
        throw DomainError("the reduced integral has a pole only for tau > 2z");
    }
    return {0.0, 1.0, cfg.sigma(), 2, reduced_integrand_z(cfg.sigma())};
}

PoleProblem dispersion_problem_x(const MirrorConfig& cfg) {
    if (cfg.regime() != MirrorRegime::Singular) {
        throw DomainError("the reduced integral has a pole only for tau > 2z");
    }
    return {0.0, 1.0, cfg.sigma(), 3, reduced_integrand_x(cfg.sigma())};
}

namespace {

ApvResult dispersion(const MirrorConfig& cfg, double tol, bool z_component) {
    require_off_boundary(cfg);
    const double sigma = cfg.sigma();
    const double pref =
        z_component ? dispersion_prefactor_z(cfg) : dispersion_prefactor_x(cfg);

    if (cfg.regime() == MirrorRegime::Regular) {
        // sigma > 1: the reduced integrand is smooth on [0,1] and the value
        // carries no rho dependence at all.
        auto g = [sigma, z_component](double x) {
            const double gap = x * x - sigma * sigma;
            if (z_component) return (1.0 - x) / (gap * gap);
            return (1.0 - x) * (x * x + sigma * sigma) / (gap * gap * gap);
        };
        const QuadResult q = integrate(g, 0.0, 1.0, tol);
        return {pref * q.value, std::fabs(pref) * q.abs_error_estimate, cfg.rho, q.evaluations};
    }

    const PoleProblem p = z_component ? dispersion_problem_z(cfg) : dispersion_problem_x(cfg);
    const ApvResult r = apv_direct(p, Rho(cfg.rho), tol);
    return {pref * r.value, std::fabs(pref) * r.abs_error_estimate, cfg.rho, r.evaluations};
}

}  // namespace

ApvResult velocity_dispersion_z(const MirrorConfig& cfg, double tol) {
    return dispersion(cfg, tol, true);
}

ApvResult velocity_dispersion_x(const MirrorConfig& cfg, double tol) {
    return dispersion(cfg, tol, false);
}

double dispersion_z_asymptotic(const MirrorConfig& cfg) {
    require_off_boundary(cfg);
    if (cfg.tau < 2.0 * cfg.z) {
        throw DomainError("the asymptotic expression applies to the singular regime tau > 2z");
    }
    const double e_over_m = cfg.charge / cfg.mass;
    const double z = cfg.z;
    const double tau = cfg.tau;
    const double ratio = (tau + 2.0 * z) / (tau - 2.0 * z);
    const double braced = tau / (z * z * z) * std::log(ratio * ratio) +
                          8.0 * (1.0 - 2.0 * z / tau) / (z * z * cfg.rho);
    return e_over_m * e_over_m / (32.0 * kPiSq) * braced;
}

}  // namespace apv

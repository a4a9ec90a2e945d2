#pragma once

#include "apv/quadrature.hpp"

namespace apv {

enum class MirrorRegime { Regular, Singular };

/// Charged probe at distance z from a perfectly reflecting mirror, observed
/// for a duration tau with sudden switching. Natural units; rho is the
/// dimensionless cutoff applied in the reduced integration variable.
struct MirrorConfig {
    MirrorConfig(double z, double tau, double rho, double charge = 1.0, double mass = 1.0);

    double sigma() const { return 2.0 * z / tau; }

    /// Singular once the observation outlasts the mirror round trip.
    MirrorRegime regime() const;

    double z;
    double tau;
    double rho;
    double charge;
    double mass;
};

/// Renormalized electric-field correlators at time separation T = t' - t''.
double correlator_zz(double T, double z);
double correlator_xx(double T, double z);

/// Closed form of the punctured integral of (1-x)/(x^2-sigma^2)^2 over [0,1]:
/// the rho-finite log term plus the 1/rho pole term (the O(rho) remainder is
/// excluded by construction).
double useful_formula(double sigma, Rho rho);

/// Velocity dispersion along z. Regular regime: ordinary quadrature of the
/// reduced single integral, independent of rho. Singular regime: asymptotic
/// principal value with the pole at x = sigma.
ApvResult velocity_dispersion_z(const MirrorConfig& cfg, double tol);

/// Velocity dispersion along x (equals the y component); cubic pole in the
/// singular regime, no closed form.
ApvResult velocity_dispersion_x(const MirrorConfig& cfg, double tol);

/// Displayed asymptotic expression for the z dispersion in the singular
/// regime (log term plus 1/rho term, remainder dropped).
double dispersion_z_asymptotic(const MirrorConfig& cfg);

/// Overall factor multiplying the reduced [0,1] integral for each component.
double dispersion_prefactor_z(const MirrorConfig& cfg);
double dispersion_prefactor_x(const MirrorConfig& cfg);

/// The pole problems behind the singular-regime dispersions, exposed so the
/// reduction identities can be cross-checked on them. Require tau > 2z.
PoleProblem dispersion_problem_z(const MirrorConfig& cfg);
PoleProblem dispersion_problem_x(const MirrorConfig& cfg);

}  // namespace apv

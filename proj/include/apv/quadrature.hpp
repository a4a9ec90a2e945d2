#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "apv/pole_problem.hpp"

namespace apv {

/// Adaptive quadrature stops splitting once this many panels exist per call.
inline constexpr int kMaxSubdivisions = 10000;

struct QuadResult {
    double value;
    double abs_error_estimate;
    int subdivisions;
    long evaluations;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration with interval bisection.
/// tol is an absolute tolerance; the reported estimate may sit above tol when
/// round-off already dominates. Exceeding the subdivision budget raises
/// AccuracyError carrying the best estimate.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi, double tol);
QuadResult integrate(const Integrand& f, double lo, double hi, double tol);

/// Same machinery with caller-provided initial panel boundaries, used to seed
/// geometrically graded meshes toward a near-pole endpoint.
QuadResult integrate_seeded(const std::function<double(double)>& f,
                            const std::vector<double>& breakpoints, double tol);

/// Asymptotic principal value evaluated directly from its definition: the sum
/// of the two punctured-side integrals of f(x)/(x-c)^n, each graded toward the
/// puncture.
ApvResult apv_direct(const PoleProblem& p, Rho rho, double tol);

struct RhoCurveEntry {
    double rho;
    std::optional<ApvResult> result;
    std::string error;  // non-empty when result is absent
};

/// Batch apv_direct over a rho list. Invalid entries are reported per item and
/// the batch continues.
std::vector<RhoCurveEntry> apv_rho_curve(const PoleProblem& p, const std::vector<double>& rhos,
                                         double tol);

}  // namespace apv

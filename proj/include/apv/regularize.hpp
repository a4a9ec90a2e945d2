#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apv/reduction.hpp"

namespace apv {

/// The three regularization strategies for a divergent pole integral:
/// keep the full cutoff dependence (Apv), drop the explicit singular terms
/// (MildPart), or integrate against the smoothed complex-shift kernel
/// (ComplexKernel).
enum class RegMethod { Apv, MildPart, ComplexKernel };

/// Value assigned to the pole integral by the chosen method at the given rho.
/// No rho -> 0 limit is taken; limit behaviour is studied via asymptotic fits.
ApvResult regularize(const PoleProblem& p, RegMethod method, Rho rho, double tol);

/// Ordinary quadrature of f against the real part of ((x-c) + i rho)^-n over
/// the full interval; the kernel is smooth, no puncture is needed.
ApvResult kernel_integral(const PoleProblem& p, Rho rho, double tol);

struct DiracRow {
    double rho;
    double kernel_value;
    double difference;  // |kernel_value - extrapolated principal value|
};

/// Simple-pole check that the smoothed kernel reproduces the principal value
/// as rho -> 0. The reference is a polynomial extrapolation of the direct
/// punctured integral to rho = 0.
struct DiracReport {
    double pv_extrapolated;
    std::vector<DiracRow> rows;
    bool monotone_decay;
};

DiracReport dirac_formula_check(const PoleProblem& p, const std::vector<double>& rhos, double tol);

struct ComparisonRow {
    double rho;
    double value_apv;
    double value_mild;
    double value_kernel;
    double predicted_gap;  // sum of the explicit singular terms
    double observed_gap;   // value_apv - value_mild
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::optional<double> gap_order;  // log-log slope of the observed gap
    std::string gap_order_note;       // set when no order could be fitted
};

/// Evaluate all three methods over a rho grid and quantify the gap between
/// the direct value and the mild part. Needs n >= 2; the order fit needs at
/// least 3 rho values (rows are produced regardless).
ComparisonReport compare_methods(const PoleProblem& p, const std::vector<double>& rhos, double tol);

struct CounterexampleRow {
    double rho;
    double apv_value;              // punctured integral of x * (1/x)
    double kernel_value;           // integral of x^2/(x^2+rho^2)
    double partial_integral_value; // ln(1+rho^2) - integral_0^1 ln(x^2+rho^2) dx
};

/// The I1 = integral of x*(1/x) over [-1,1] harness: the three treatments are
/// reported side by side with no verdict attached.
struct CounterexampleReport {
    std::vector<CounterexampleRow> rows;
};

CounterexampleReport counterexample_i1(const std::vector<double>& rhos, double tol);

}  // namespace apv

#pragma once

#include <vector>

#include "apv/quadrature.hpp"

namespace apv {

/// One explicit singular contribution of the order-n split:
/// coefficient * bracket / rho^power.
struct SingularTerm {
    int k;               // 1 .. n-1
    double coefficient;  // (n-k-1)!/(n-1)!
    double bracket;      // {f^(k-1)}_(n-k) at (c, rho)
    int power;           // n-k

    double contribution(double rho) const;
};

/// Mild part plus the explicit singular terms; their sum reconstructs the
/// direct asymptotic principal value.
struct SingularDecomposition {
    double mild;
    double mild_error_estimate;
    std::vector<SingularTerm> singular_terms;
    double rho;
    long evaluations;

    double singular_sum() const;
    double total() const { return mild + singular_sum(); }
};

/// Two-sided bracket {f}_(n) = f(c+rho) - (-1)^n f(c-rho).
double bracket_term(const Integrand& f, double c, Rho rho, int n);

/// Plain boundary bracket [f/(x-c)^n] evaluated at b and a.
double plain_boundary(const PoleProblem& p);

/// Punctured boundary bracket: the [a, c-rho] and [c+rho, b] pieces summed.
double punctured_boundary(const PoleProblem& p, Rho rho);

/// zeta = punctured boundary bracket divided by the pole order.
double zeta_term(const PoleProblem& p, Rho rho);

/// One partial-integration step: order n expressed through order n-1 with the
/// derivative of f. Requires n >= 2.
ApvResult reduce_once(const PoleProblem& p, Rho rho, double tol);

/// Full reduction of an order-n integral to a simple-pole integral of
/// f^(n-1) plus zeta terms. Requires n >= 2.
ApvResult reduce_to_simple(const PoleProblem& p, Rho rho, double tol);

/// The simple-pole-plus-regular portion left after stripping the explicit
/// rho^-k singular terms. Only the simple-pole term depends on rho.
ApvResult mild_part(const PoleProblem& p, Rho rho, double tol);

/// Mild part together with the enumerated singular terms.
SingularDecomposition singular_split(const PoleProblem& p, Rho rho, double tol);

/// Mild part computed as the (n-1)-th derivative in the pole position of the
/// simple-pole integral, by iterated central differences of width dc_step.
double mild_via_derivative(const PoleProblem& p, Rho rho, double tol, double dc_step);

/// Step small against rho so the punctured geometry varies smoothly.
double default_dc_step(Rho rho);

/// |LHS - RHS| of the pole-position derivative identity relating orders
/// n+1 and n (p carries n).
double lemma2_check(const PoleProblem& p, Rho rho, double tol, double dc_step);

}  // namespace apv

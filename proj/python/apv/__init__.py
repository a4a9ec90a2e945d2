"""Asymptotic principal values for singular pole integrals.

Evaluates punctured-interval integrals of f(x)/(x-c)^n as functions of the
cutoff rho, reduces higher-order poles to simple ones, splits off the explicit
singular terms, and compares the asymptotic-principal-value, mild-part and
smoothed-kernel regularizations.
"""

from ._core import (
    AccuracyError,
    ApvError,
    ApvResult,
    AsymptoticFit,
    ComparisonReport,
    ComparisonRow,
    CounterexampleReport,
    CounterexampleRow,
    DiracReport,
    DiracRow,
    DomainError,
    Integrand,
    InvalidArgumentError,
    MirrorConfig,
    MirrorRegime,
    PoleProblem,
    QuadResult,
    RegMethod,
    SingularDecomposition,
    SingularTerm,
    __version__,
    apv_direct,
    apv_rho_curve,
    bracket_term,
    compare_methods,
    correlator_xx,
    correlator_zz,
    counterexample_i1,
    differentiate_expression,
    dirac_formula_check,
    dispersion_problem_x,
    dispersion_problem_z,
    dispersion_z_asymptotic,
    expression_integrand,
    fd_integrand,
    fit_asymptotic,
    integrate,
    kernel_integral,
    lemma2_check,
    mild_part,
    mild_via_derivative,
    order_estimate,
    polynomial_integrand,
    punctured_boundary,
    reduce_once,
    reduce_to_simple,
    regularize,
    singular_split,
    useful_formula,
    velocity_dispersion_x,
    velocity_dispersion_z,
    zeta_term,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]

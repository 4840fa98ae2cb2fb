"""Operator radii for dense complex matrices.

Computes the numerical radius, the Euclidean operator norm of tuples, and
the generalized f-operator radius, each as a certified value (best lower
witness plus, where available, a rigorous upper certificate).  A registry of
named inequality/equality checks and a randomized verification harness sit
on top; the ``opr`` CLI drives everything.
"""

from .linalg import (
    EigensolverError,
    HermitianContractError,
    HermitianEigen,
    QuadratureError,
    absolute,
    adjoint,
    apply_scalar_function_psd,
    as_operator,
    hermitian_eigen,
    imag_part,
    integrate_matrix_function,
    offdiag_block,
    op_norm,
    psd_power,
    real_part,
)
from .functions import (
    DivergenceError,
    ScalarRadiusFunction,
    farissi_chain,
    numeric_inverse,
    parse_function_spec,
    power_function,
)
from .radii import (
    CertifiedValue,
    OptimizerBudget,
    euclidean_norm,
    euclidean_objective,
    numerical_radius,
    omega_e,
    omega_f,
    omega_f_objective,
    omega_objective,
    omega_q,
    sup_theta_norm,
    sup_theta_objective,
)
from .oracle import (
    grid_euclidean_norm_pair,
    grid_numerical_range_sup,
    grid_omega_f_pair,
)
from .registry import (
    ChainReport,
    CheckDescriptor,
    HypothesisViolation,
    UnknownCheckError,
    evaluate_check,
    list_checks,
)
from .suite import (
    SuiteConfig,
    SuiteReport,
    compare_bounds,
    run_suite,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Exact-arithmetic toolkit for the integrated Legendre family.

Members of the family are the antiderivatives of Legendre polynomials pinned
to vanish at both endpoints; they are orthogonal under the weight 1/(1-x^2).
The package builds their exact tables, reproducing kernels, constrained
extremal solutions, Fourier expansions and Moebius-transformed orthogonal
systems, and ships a verification registry that confirms or corrects every
closed-form identity it relies on.
"""

from .exactpoly import NotDivisible, Poly, X
from .legendre import LegendreTable, build_legendre, legendre_special_values
from .qfamily import (
    QTable,
    RootCountMismatch,
    build_q_table,
    q_norm_sq,
    q_roots,
    weighted_inner_product,
)
from .kernel import (
    InadmissibleFunction,
    KernelSection,
    kernel_cd,
    kernel_confluent,
    kernel_sum,
    reproducing_check,
)
from .approx import (
    ExpansionReport,
    ExtremalSolution,
    brute_force_minimizer,
    expand,
    fourier_coeff_moments,
    fourier_coeff_quadrature,
    minimize_constrained,
)
from .moebius import (
    DegenerateMap,
    MoebiusMap,
    RFamily,
    TransformedSystem,
    build_r_family,
    build_transformed_system,
    induced_endpoints,
    induced_weight,
)
from .quad import QuadratureRule, gauss_legendre, integrate
from .verdict import Verdict
from .verify import VerificationReport, run_verification

__version__ = "0.1.0"

__all__ = [
    "DegenerateMap",
    "ExpansionReport",
    "ExtremalSolution",
    "InadmissibleFunction",
    "KernelSection",
    "LegendreTable",
    "MoebiusMap",
    "NotDivisible",
    "Poly",
    "QTable",
    "QuadratureRule",
    "RFamily",
    "RootCountMismatch",
    "TransformedSystem",
    "VerificationReport",
    "Verdict",
    "X",
    "brute_force_minimizer",
    "build_legendre",
    "build_q_table",
    "build_r_family",
    "build_transformed_system",
    "expand",
    "fourier_coeff_moments",
    "fourier_coeff_quadrature",
    "gauss_legendre",
    "induced_endpoints",
    "induced_weight",
    "integrate",
    "kernel_cd",
    "kernel_confluent",
    "kernel_sum",
    "legendre_special_values",
    "minimize_constrained",
    "q_norm_sq",
    "q_roots",
    "reproducing_check",
    "run_verification",
    "weighted_inner_product",
]

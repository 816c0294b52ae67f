"""Constrained extremal problem and Fourier expansion in the integrated
Legendre family.

The kernel solution of the minimization problem is always cross-checked
against an independent brute-force quadratic program solved in exact
rational arithmetic, and expansion coefficients computed from endpoint
moments are cross-checked against the orthogonality-based integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

from . import quad
from .exactpoly import Poly
from .kernel import kernel_sum
from .qfamily import QTable, X2_MINUS_1, weighted_inner_product


class SingularSystem(ArithmeticError):
    """Exact linear solve hit a zero pivot; the Gram matrix of a positive
    definite form can never do this, so it signals an implementation bug."""


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over Fractions; any nonzero pivot is exact."""
    n = len(rhs)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"zero pivot in column {col}")
        a[col], a[pivot] = a[pivot], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


@dataclass(frozen=True)
class BruteForceResult:
    m_value: Fraction
    poly: Poly


def brute_force_minimizer(n: int, qtable: QTable) -> BruteForceResult:
    """Minimize the weighted square integral over degree-n polynomials with
    value 1 at 0, independently of the kernel machinery.

    Feasible polynomials factor as (1-x^2) r(x) with deg r <= n-2 and
    r(0) = 1 (anything not vanishing at both endpoints has a divergent
    objective). The objective is then the plain integral of (1-x^2) r^2,
    a positive definite quadratic form solved by exact normal equations.
    """
    if n < 2:
        raise ValueError("minimization needs degree >= 2")
    dim = n - 1  # coefficients r_0..r_{n-2}

    def gram(i: int, j: int) -> Fraction:
        s = i + j
        if s % 2:
            return Fraction(0)
        return 2 * (Fraction(1, s + 1) - Fraction(1, s + 3))

    free = dim - 1
    coeffs = [Fraction(1)] + [Fraction(0)] * free
    if free:
        matrix = [[gram(i, j) for j in range(1, dim)] for i in range(1, dim)]
        rhs = [-gram(i, 0) for i in range(1, dim)]
        solution = solve_exact(matrix, rhs)
        coeffs = [Fraction(1)] + solution
    r = Poly(coeffs)
    m_value = ((-X2_MINUS_1) * r * r).integral(-1, 1)
    return BruteForceResult(m_value, (-X2_MINUS_1) * r)


@dataclass(frozen=True)
class ExtremalSolution:
    """Kernel-form solution of the constrained minimization, with the
    brute-force oracle carried alongside. The two agree exactly."""

    n: int
    q_coeffs: Mapping[int, Fraction]
    minimizer: Poly
    min_value: Fraction
    oracle_value: Fraction
    oracle_minimizer: Poly


def minimize_constrained(n: int, qtable: QTable) -> ExtremalSolution:
    """Solve the degree-n problem through the kernel section at 0.

    The minimum is 1/K_n(0,0) and the minimizer is the section scaled to 1
    at 0. Sums involve even members only; odd members vanish at 0.
    """
    if n < 2:
        raise ValueError("minimization needs degree >= 2")
    section = kernel_sum(n, 0, qtable)
    k00 = section.value_at_y
    m_value = 1 / k00
    minimizer = section.poly * m_value
    q_coeffs = {
        k: qtable.q(k).at(0) / qtable.norm_sq(k) * m_value
        for k in range(2, n + 1, 2)
    }
    oracle = brute_force_minimizer(n, qtable)
    if oracle.m_value != m_value or oracle.poly != minimizer:
        raise AssertionError(f"kernel and brute-force solutions disagree at n={n}")
    return ExtremalSolution(n, q_coeffs, minimizer, m_value, oracle.m_value, oracle.poly)


# -- Fourier coefficients -----------------------------------------------------


def fourier_coeff_quadrature(f: Poly, n: int, qtable: QTable) -> Fraction:
    """Coefficient on the degree-n member via the weighted inner product.

    The weight singularity cancels against the endpoint factor of the
    member, so the value is the exact integral of -f times the interior
    factor, scaled by n(n-1)(2n-1)/2. Defined for any polynomial f.
    """
    if n < 2:
        raise ValueError("family starts at degree 2")
    scale = Fraction(n * (n - 1) * (2 * n - 1), 2)
    return -scale * (f * qtable.interior_factor(n)).integral(-1, 1)


def moment_vector(f: Poly, n: int) -> list[Fraction]:
    """Even moments of the n-th derivative: integral of x^(2k) f^(n) over
    [-1, 1] for k = 0..n-1, exact."""
    fn = f.deriv(n)
    return [(Poly.monomial(2 * k) * fn).integral(-1, 1) for k in range(n)]


@dataclass(frozen=True)
class MomentCoefficient:
    """Moment-formula coefficient with both signs.

    stated_value carries the alternating sign (-1)^n as stated;
    corrected_value fixes the sign so that the value matches the
    quadrature coefficient whenever f vanishes at both endpoints (the
    regime where the underlying integration by parts has no boundary
    terms)."""

    stated_value: Fraction
    corrected_value: Fraction
    moments: tuple[Fraction, ...]


def fourier_coeff_moments(f: Poly, n: int) -> MomentCoefficient:
    """Coefficient from endpoint moments of the n-th derivative.

    The binomial sum runs over k = 0..n-1; the k = n term carries a
    vanishing binomial and is dropped.
    """
    if n < 2:
        raise ValueError("family starts at degree 2")
    moments = moment_vector(f, n)
    acc = sum(
        ((-1) ** k * math.comb(n - 1, k)) * moments[k] for k in range(n)
    )
    corrected = Fraction(2 * n - 1, 2**n * math.factorial(n - 1)) * acc
    stated = Fraction((-1) ** n) * corrected
    return MomentCoefficient(stated, corrected, tuple(moments))


@dataclass(frozen=True)
class MonomialCoefficient:
    """Three values attached to the k-th monomial: the stated closed form,
    the moment-functional value, and the true expansion coefficient. They
    are not expected to coincide; x^k does not vanish at the endpoints, and
    the discrepancy is itself part of the verification record."""

    stated_value: Fraction
    moment_functional_value: Fraction
    quadrature_value: Fraction


def monomial_coeff_closed_form(k: int, qtable: QTable) -> MonomialCoefficient:
    """Evaluate the stated closed form (-1)^k k 2^(k-1) ((k-1)!)^2/(2k-2)!
    next to both computed values for f = x^k."""
    if k < 2:
        raise ValueError("needs k >= 2")
    stated = Fraction(
        (-1) ** k * k * 2 ** (k - 1) * math.factorial(k - 1) ** 2,
        math.factorial(2 * k - 2),
    )
    xk = Poly.monomial(k)
    return MonomialCoefficient(
        stated,
        fourier_coeff_moments(xk, k).corrected_value,
        fourier_coeff_quadrature(xk, k, qtable),
    )


# -- expansion ----------------------------------------------------------------

FUNCTIONS: dict[str, Callable[[float], float]] = {
    # smooth functions vanishing at both endpoints: spectral coefficient decay
    "one-minus-x2-exp": lambda x: (1.0 - x * x) * math.exp(x),
    "sin-pi": lambda x: math.sin(math.pi * x),
}

_GRID = [(-1.0 + 2.0 * i / 1000.0) for i in range(1001)]


@dataclass(frozen=True)
class ExpansionReport:
    """Partial-sum expansion data.

    coeffs maps member degree to the coefficient (Fraction for polynomial
    input, float for named functions). residual_weighted_l2 is math.inf for
    polynomial input that does not vanish at both endpoints, where the
    weighted residual genuinely diverges.
    """

    coeffs: Mapping[int, Union[Fraction, float]]
    residual_sup: float
    residual_weighted_l2: float
    method: str


def expand(
    f: Union[Poly, str], top_degree: int, qtable: QTable, tol: float = 1e-12
) -> ExpansionReport:
    """Expand f over family members 2..top_degree.

    Polynomial input stays exact end to end (method 'quadrature_exact');
    named functions from FUNCTIONS use floating quadrature against the
    interior factors (method 'quadrature_float').
    """
    if top_degree < 2:
        raise ValueError("expansion needs top degree >= 2")
    if top_degree > qtable.max_degree:
        raise ValueError("table too shallow for requested expansion")
    if isinstance(f, str):
        try:
            fn = FUNCTIONS[f]
        except KeyError:
            raise ValueError(f"unknown function name {f!r}") from None
        return _expand_named(fn, top_degree, qtable, tol)
    return _expand_poly(f, top_degree, qtable)


def _expand_poly(f: Poly, top_degree: int, qtable: QTable) -> ExpansionReport:
    coeffs: dict[int, Fraction] = {}
    partial = Poly()
    for n in range(2, top_degree + 1):
        a = fourier_coeff_quadrature(f, n, qtable)
        if a:
            coeffs[n] = a
            partial = partial + qtable.q(n).scale(a)
    diff = f - partial
    if diff.is_zero():
        return ExpansionReport(coeffs, 0.0, 0.0, "quadrature_exact")
    sup = max(abs(diff.at_float(x)) for x in _GRID)
    if diff.at(1) == 0 and diff.at(-1) == 0:
        l2 = math.sqrt(float(weighted_inner_product(diff, diff)))
    else:
        l2 = math.inf
    return ExpansionReport(coeffs, sup, l2, "quadrature_exact")


def _expand_named(
    fn: Callable[[float], float], top_degree: int, qtable: QTable, tol: float
) -> ExpansionReport:
    coeffs: dict[int, float] = {}
    for n in range(2, top_degree + 1):
        interior = qtable.interior_factor(n)
        scale = n * (n - 1) * (2 * n - 1) / 2.0
        value = quad.integrate(lambda x: fn(x) * interior.at_float(x), -1.0, 1.0, tol)
        coeffs[n] = -scale * value.value

    members = {n: qtable.q(n) for n in coeffs}

    def partial(x: float) -> float:
        return math.fsum(a * members[n].at_float(x) for n, a in coeffs.items())

    sup = max(abs(fn(x) - partial(x)) for x in _GRID)
    res = quad.integrate(
        lambda x: (fn(x) - partial(x)) ** 2 / (1.0 - x * x), -1.0, 1.0, max(tol, 1e-14)
    )
    return ExpansionReport(coeffs, sup, math.sqrt(max(res.value, 0.0)), "quadrature_float")


def parseval_gap(f: Poly, top_degree: int, qtable: QTable) -> Fraction:
    """Exact difference between the weighted square norm of f and the sum of
    squared coefficients times member norms; zero on the admissible span."""
    lhs = weighted_inner_product(f, f)
    rhs = sum(
        (fourier_coeff_quadrature(f, n, qtable) ** 2 * qtable.norm_sq(n)
         for n in range(2, top_degree + 1)),
        Fraction(0),
    )
    return lhs - rhs

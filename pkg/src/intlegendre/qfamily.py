"""The integrated Legendre family: antiderivatives of Legendre polynomials
pinned to vanish at both endpoints, orthogonal under the weight 1/(1-x^2).

Family indices start at 2. There is no degree-0 member, and the degree-1
candidate x - 1 has a divergent weighted norm, so every sum over the family
in this package begins at index 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactpoly import NotDivisible, Poly, X
from .legendre import LegendreTable, build_legendre, double_factorial, legendre_float
from .verdict import Verdict

X2_MINUS_1 = Poly((-1, 0, 1))


class RootCountMismatch(RuntimeError):
    """Interior root search located the wrong number of sign changes."""


@dataclass(frozen=True)
class QTable:
    """Exact data for family members 2..max_degree.

    Index n of each tuple holds the degree-n data; slots 0 and 1 are None.
    ``interior`` holds the cofactor of x^2 - 1, ``norms_sq`` the weighted
    squared norms 2/(n(n-1)(2n-1)), ``leading`` the leading coefficients.
    """

    max_degree: int
    legendre: LegendreTable
    polys: tuple[Optional[Poly], ...]
    interior: tuple[Optional[Poly], ...]
    norms_sq: tuple[Optional[Fraction], ...]
    leading: tuple[Optional[Fraction], ...]

    def _get(self, seq, n: int):
        if n < 2 or n > self.max_degree:
            raise IndexError(f"family holds degrees 2..{self.max_degree}, got {n}")
        return seq[n]

    def q(self, n: int) -> Poly:
        return self._get(self.polys, n)

    def interior_factor(self, n: int) -> Poly:
        return self._get(self.interior, n)

    def norm_sq(self, n: int) -> Fraction:
        return self._get(self.norms_sq, n)

    def lead(self, n: int) -> Fraction:
        return self._get(self.leading, n)


def build_q_table(max_degree: int, ltable: Optional[LegendreTable] = None) -> QTable:
    """Build family members 2..max_degree.

    Constructor of record is the difference form (P_n - P_{n-2})/(2n-1); the
    pinned antiderivative of P_{n-1} is recomputed independently and must
    agree coefficient for coefficient.
    """
    if max_degree < 2:
        raise ValueError("max_degree must be >= 2")
    if ltable is None:
        ltable = build_legendre(max_degree)
    if ltable.max_degree < max_degree:
        raise ValueError("Legendre table too shallow for requested depth")
    polys: list[Optional[Poly]] = [None, None]
    interior: list[Optional[Poly]] = [None, None]
    norms: list[Optional[Fraction]] = [None, None]
    leading: list[Optional[Fraction]] = [None, None]
    for n in range(2, max_degree + 1):
        qn = (ltable.poly(n) - ltable.poly(n - 2)) / (2 * n - 1)
        anti = ltable.poly(n - 1).antideriv()
        if qn != anti - anti.at(1):
            raise AssertionError(f"construction cross-check failed at degree {n}")
        polys.append(qn)
        interior.append(qn.divexact(X2_MINUS_1))
        norms.append(Fraction(2, n * (n - 1) * (2 * n - 1)))
        leading.append(qn.coeffs[-1])
    return QTable(
        max_degree,
        ltable,
        tuple(polys),
        tuple(interior),
        tuple(norms),
        tuple(leading),
    )


def q_rodrigues(n: int) -> Poly:
    """Degree-n member from (x^2-1) times the n-th derivative of (x^2-1)^(n-1),
    scaled by 1/(2^(n-1) n! (n-1))."""
    if n < 2:
        raise ValueError("family starts at degree 2")
    core = ((X * X - 1) ** (n - 1)).deriv(n)
    return (X2_MINUS_1 * core) / (2 ** (n - 1) * math.factorial(n) * (n - 1))


def q_norm_sq(n: int) -> Fraction:
    """Closed-form weighted squared norm 2/(n(n-1)(2n-1))."""
    if n < 2:
        raise ValueError("family starts at degree 2")
    return Fraction(2, n * (n - 1) * (2 * n - 1))


def weighted_inner_product(p: Poly, q: Poly) -> Fraction:
    """Exact integral of p*q/(1-x^2) over [-1, 1].

    Finite only when 1 - x^2 divides p*q, which holds whenever either factor
    vanishes at both endpoints; otherwise NotDivisible is raised because the
    integral genuinely diverges.
    """
    for first, second in ((p, q), (q, p)):
        try:
            reduced = first.divexact(X2_MINUS_1)
        except NotDivisible:
            continue
        return -(reduced * second).integral(-1, 1)
    reduced = (p * q).divexact(X2_MINUS_1)
    return -reduced.integral(-1, 1)


@dataclass(frozen=True)
class ZeroValueComparison:
    """Exact value at 0 next to the stated closed form for it."""

    oracle: Fraction
    stated: Optional[Fraction]
    verdict: Verdict


def q_at_zero(n: int, table: QTable) -> ZeroValueComparison:
    """Value at 0: oracle from the coefficient table, stated form
    (-1)^((n-2)/2) (n-3)!!/n!! for even n. Odd degrees are NOT_APPLICABLE
    because the stated exponent is non-integral there (the oracle gives 0)."""
    oracle = table.q(n).at(0)
    if n % 2:
        return ZeroValueComparison(oracle, None, Verdict.NOT_APPLICABLE)
    stated = Fraction(
        (-1) ** ((n - 2) // 2) * double_factorial(n - 3), double_factorial(n)
    )
    if oracle == stated:
        verdict = Verdict.CONFIRMED
    elif oracle == -stated:
        verdict = Verdict.CONFIRMED_UP_TO_SIGN
    else:
        verdict = Verdict.FAILED
    return ZeroValueComparison(oracle, stated, verdict)


@dataclass(frozen=True)
class BoundaryDerivatives:
    d1_at_plus1: Fraction
    d1_at_minus1: Fraction
    d2_at_plus1: Fraction


def q_boundary_derivatives(n: int, table: QTable) -> BoundaryDerivatives:
    """Exact first and second derivatives at the endpoints."""
    d1 = table.q(n).deriv()
    d2 = d1.deriv()
    return BoundaryDerivatives(d1.at(1), d1.at(-1), d2.at(1))


def q_float(n: int, x: float) -> tuple[float, float]:
    """(value, derivative) of the degree-n member at x via stable recurrences.

    Avoids the monomial coefficients, whose float evaluation loses accuracy
    for large n.
    """
    if n < 2:
        raise ValueError("family starts at degree 2")
    pn, _ = legendre_float(n, x)
    pm, _ = legendre_float(n - 2, x)
    dv, _ = legendre_float(n - 1, x)
    return (pn - pm) / (2 * n - 1), dv


def q_roots(n: int, table: QTable, tol: float = 1e-12) -> list[float]:
    """All n roots, sorted ascending: -1 and 1 exactly, plus n-2 interior
    roots located to |value| < tol.

    Sign-change bisection over a Chebyshev grid of 8n interior points
    brackets every root of the interior factor (spacing is ~8x finer than
    the root spacing); a short Newton polish then tightens each bracket.
    """
    if n < 2:
        raise ValueError("family starts at degree 2")
    if n == 2:
        return [-1.0, 1.0]
    grid_size = 8 * n
    pts = sorted(
        math.cos(math.pi * (2 * j + 1) / (2 * grid_size)) for j in range(grid_size)
    )

    def value(x: float) -> float:
        return q_float(n, x)[0]

    def interior_value(x: float) -> float:
        return value(x) / (x * x - 1.0)

    vals = [interior_value(x) for x in pts]
    roots: list[float] = []
    for i in range(grid_size - 1):
        v0, v1 = vals[i], vals[i + 1]
        if v0 == 0.0:
            roots.append(pts[i])
            continue
        if v0 * v1 >= 0.0:
            continue
        lo, hi, flo = pts[i], pts[i + 1], v0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fmid = interior_value(mid)
            if fmid == 0.0:
                lo = hi = mid
                break
            if flo * fmid < 0.0:
                hi = mid
            else:
                lo, flo = mid, fmid
        root = 0.5 * (lo + hi)
        for _ in range(4):
            v, dv = q_float(n, root)
            if dv != 0.0:
                root -= v / dv
        roots.append(root)
    if vals[-1] == 0.0:
        roots.append(pts[-1])
    if len(roots) != n - 2:
        raise RootCountMismatch(f"found {len(roots)} interior roots, expected {n - 2}")
    for r in roots:
        if abs(value(r)) >= tol:
            raise RootCountMismatch(f"root {r} has residual {value(r)!r} >= {tol}")
    return [-1.0] + roots + [1.0]


def q_integral_relation_check(n: int, table: QTable) -> Verdict:
    """Exact ladder between neighbours: the antiderivative of the degree-n
    member pinned at -1 equals (Q_{n+1} - Q_{n-1})/(2n-1), and the member
    itself equals (Q'_{n+1} - Q'_{n-1})/(2n-1). Needs table depth n+1."""
    if n < 3:
        raise ValueError("needs degree >= 3")
    qn, hi, lo = table.q(n), table.q(n + 1), table.q(n - 1)
    anti = qn.antideriv()
    anti = anti - anti.at(-1)
    integral_ok = anti == (hi - lo) / (2 * n - 1)
    deriv_ok = qn == (hi.deriv() - lo.deriv()) / (2 * n - 1)
    return Verdict.CONFIRMED if (integral_ok and deriv_ok) else Verdict.FAILED


def q_leading_closed_form(n: int) -> Fraction:
    """Leading coefficient: (2n-2)! / (2^(n-1) ((n-1)!)^2 n)."""
    if n < 2:
        raise ValueError("family starts at degree 2")
    return Fraction(
        math.factorial(2 * n - 2), 2 ** (n - 1) * math.factorial(n - 1) ** 2 * n
    )

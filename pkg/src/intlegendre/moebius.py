"""Orthogonal systems induced by rational changes of variable.

A unit-determinant map x -> (lam x + alpha)/(mu x + beta) carries an induced
interval onto [-1, 1]; composing the monic family orthogonal under 1 - t^2
with the map yields a system orthogonal (and integral-minimal) under the
pulled-back weight, which vanishes at both induced endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import quad
from .exactpoly import Poly, Scalar
from .verdict import Verdict


class DegenerateMap(ValueError):
    """Map cannot carry a proper interval onto [-1, 1]."""


def _frac(x: Scalar) -> Fraction:
    if isinstance(x, float):
        raise TypeError("map parameters must be exact rationals")
    return Fraction(x)


@dataclass(frozen=True)
class MoebiusMap:
    """x -> (lam x + alpha)/(mu x + beta) with exact unit determinant."""

    lam: Fraction
    alpha: Fraction
    mu: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        for name in ("lam", "alpha", "mu", "beta"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.lam * self.beta - self.mu * self.alpha != 1:
            raise DegenerateMap("determinant lam*beta - mu*alpha must equal 1")

    @property
    def pole(self) -> Optional[Fraction]:
        return None if self.mu == 0 else -self.beta / self.mu

    def at(self, x: Scalar) -> Fraction:
        x = Fraction(x)
        return (self.lam * x + self.alpha) / (self.mu * x + self.beta)

    def at_float(self, x: float) -> float:
        return (float(self.lam) * x + float(self.alpha)) / (
            float(self.mu) * x + float(self.beta)
        )


@dataclass(frozen=True)
class Endpoints:
    """Induced interval endpoints.

    a and b solve f(a) = -1 and f(b) = 1 exactly. stated_a and stated_b
    evaluate the reference expressions (b-a)/(lam+mu) and (b-a)/(lam-mu)
    in the map parameters; the lower one disagrees with f(a) = -1 in
    general and both are reported for the record.
    """

    a: Fraction
    b: Fraction
    stated_a: Fraction
    stated_b: Fraction


def induced_endpoints(m: MoebiusMap) -> Endpoints:
    if m.lam == m.mu or m.lam == -m.mu:
        raise DegenerateMap("map cannot attain both -1 and 1")
    a = -(m.alpha + m.beta) / (m.lam + m.mu)
    b = (m.beta - m.alpha) / (m.lam - m.mu)
    return Endpoints(
        a,
        b,
        (m.beta - m.alpha) / (m.lam + m.mu),
        (m.beta - m.alpha) / (m.lam - m.mu),
    )


@dataclass(frozen=True)
class RationalWeight:
    """Exact weight numerator/(mu x + beta)^4; equals (1 - f(x)^2) f'(x)."""

    numerator: Poly
    denominator: Poly

    def at_float(self, x: float) -> float:
        return self.numerator.at_float(x) / self.denominator.at_float(x)


def induced_weight(m: MoebiusMap) -> RationalWeight:
    num = Poly((m.beta - m.alpha, m.mu - m.lam)) * Poly((m.beta + m.alpha, m.mu + m.lam))
    den = Poly((m.beta, m.mu)) ** 4
    return RationalWeight(num, den)


def weight_identity_gap(m: MoebiusMap) -> Poly:
    """Cross-multiplied difference between the product-form numerator and
    (1 - f^2) f' written over the same denominator; zero for valid maps."""
    num = induced_weight(m).numerator
    down = Poly((m.beta, m.mu))
    up = Poly((m.alpha, m.lam))
    det = m.lam * m.beta - m.mu * m.alpha
    return num - (down * down - up * up) * det


# -- the reference family -----------------------------------------------------

_W = Poly((1, 0, -1))  # 1 - t^2


@dataclass(frozen=True)
class RFamily:
    """Monic polynomials orthogonal on [-1, 1] under the weight 1 - t^2."""

    max_degree: int
    polys: tuple[Poly, ...]

    def poly(self, n: int) -> Poly:
        return self.polys[n]


def reference_inner_product(p: Poly, q: Poly) -> Fraction:
    """Exact inner product on [-1, 1] under the weight 1 - t^2."""
    return (p * q * _W).integral(-1, 1)


def build_r_family(max_degree: int) -> RFamily:
    """Monic Gram-Schmidt over exact rationals against the weight 1 - t^2.

    Monic normalization is what makes the minimality statement well-posed:
    the extremal property is over monic competitors.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    polys: list[Poly] = []
    for n in range(max_degree + 1):
        p = Poly.monomial(n)
        for prev in polys:
            coef = reference_inner_product(p, prev) / reference_inner_product(prev, prev)
            if coef:
                p = p - prev.scale(coef)
        polys.append(p)
    return RFamily(max_degree, tuple(polys))


@dataclass(frozen=True)
class TransformedSystem:
    """A map together with its induced interval, weight and family."""

    map: MoebiusMap
    a: Fraction
    b: Fraction
    weight: RationalWeight
    family: RFamily


def build_transformed_system(m: MoebiusMap, max_degree: int) -> TransformedSystem:
    """Validate the map and assemble the induced system.

    Rejects maps whose endpoints are out of order and maps whose pole falls
    inside the closed induced interval; either way no proper interval is
    carried onto [-1, 1].
    """
    ends = induced_endpoints(m)
    if not ends.a < ends.b:
        raise DegenerateMap(f"induced endpoints out of order: {ends.a} >= {ends.b}")
    pole = m.pole
    if pole is not None and ends.a <= pole <= ends.b:
        raise DegenerateMap(f"pole {pole} lies inside [{ends.a}, {ends.b}]")
    return TransformedSystem(m, ends.a, ends.b, induced_weight(m), build_r_family(max_degree))


def _composed(system: TransformedSystem, n: int):
    member = system.family.poly(n)
    mob = system.map

    def h(x: float) -> float:
        return member.at_float(mob.at_float(x))

    return h


@dataclass(frozen=True)
class OrthogonalityCheck:
    value: float
    scale: float
    passed: bool


def transformed_orthogonality(
    system: TransformedSystem, n: int, m: int, tol: float = 1e-12
) -> OrthogonalityCheck:
    """Numerically integrate the (n, m) product under the induced weight; the
    off-diagonal value is compared against the geometric mean of the
    diagonal entries."""
    if n == m:
        raise ValueError("off-diagonal check needs n != m")
    a, b = float(system.a), float(system.b)
    hn, hm = _composed(system, n), _composed(system, m)
    w = system.weight.at_float
    itol = min(tol * 1e-2, 1e-13)
    value = quad.integrate(lambda x: hn(x) * hm(x) * w(x), a, b, itol).value
    dn = quad.integrate(lambda x: hn(x) ** 2 * w(x), a, b, itol).value
    dm = quad.integrate(lambda x: hm(x) ** 2 * w(x), a, b, itol).value
    scale = math.sqrt(abs(dn * dm))
    return OrthogonalityCheck(value, scale, abs(value) < tol * scale)


def gram_matrix(
    system: TransformedSystem, size: int, tol: float = 1e-12
) -> tuple[list[list[float]], float]:
    """Gram matrix of composed members 0..size-1 under the induced weight,
    plus the largest off-diagonal entry relative to the diagonal scale."""
    a, b = float(system.a), float(system.b)
    w = system.weight.at_float
    composed = [_composed(system, n) for n in range(size)]
    itol = min(tol * 1e-2, 1e-13)
    matrix = [[0.0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            v = quad.integrate(lambda x: composed[i](x) * composed[j](x) * w(x), a, b, itol).value
            matrix[i][j] = matrix[j][i] = v
    worst = 0.0
    for i in range(size):
        for j in range(size):
            if i != j:
                rel = abs(matrix[i][j]) / math.sqrt(matrix[i][i] * matrix[j][j])
                worst = max(worst, rel)
    return matrix, worst


_PERTURBATION_SIZES = (
    Fraction(1, 4),
    Fraction(-1, 4),
    Fraction(1, 16),
    Fraction(-1, 16),
)


def minimality_check(system: TransformedSystem, n: int, tol: float = 1e-12) -> Verdict:
    """Check that the monic member of degree n minimizes the induced-weight
    square integral: every perturbation by a lower-degree member must
    strictly increase it (by eps^2 times that member's norm)."""
    a, b = float(system.a), float(system.b)
    w = system.weight.at_float
    mob = system.map
    itol = min(tol * 1e-2, 1e-13)

    def objective(p: Poly) -> float:
        return quad.integrate(lambda x: p.at_float(mob.at_float(x)) ** 2 * w(x), a, b, itol).value

    base_poly = system.family.poly(n)
    base = objective(base_poly)
    for j in range(n):
        for eps in _PERTURBATION_SIZES:
            if objective(base_poly + system.family.poly(j).scale(eps)) <= base:
                return Verdict.FAILED
    return Verdict.CONFIRMED


def change_of_variables_residual(system: TransformedSystem, n: int, m: int, tol: float = 1e-12) -> float:
    """Difference between the transformed integral and the exact reference
    inner product under 1 - t^2; an identity under the substitution."""
    a, b = float(system.a), float(system.b)
    hn, hm = _composed(system, n), _composed(system, m)
    w = system.weight.at_float
    itol = min(tol * 1e-2, 1e-13)
    value = quad.integrate(lambda x: hn(x) * hm(x) * w(x), a, b, itol).value
    exact = float(reference_inner_product(system.family.poly(n), system.family.poly(m)))
    return abs(value - exact)

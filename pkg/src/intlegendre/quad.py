"""Gauss-Legendre quadrature with certified polynomial exactness.

Used for every floating-point integral in the package: non-polynomial
integrands and transformed-weight integrals. Weighted integrals against
1/(1-x^2) are never computed here; admissible integrands cancel that
singularity polynomially and stay in exact arithmetic.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable

from .legendre import legendre_float

MAX_ORDER = 512
_NEWTON_STEP_TOL = 5e-16
_NEWTON_STEPS = 100


class ConvergenceFailure(RuntimeError):
    """Newton iteration for a quadrature node failed to settle."""


class NoConvergence(RuntimeError):
    """Order doubling hit the cap before reaching the tolerance."""

    def __init__(self, message: str, value: float, est_error: float) -> None:
        super().__init__(message)
        self.value = value
        self.est_error = est_error


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of the order-m rule, exact on degree <= 2m-1."""

    order: int
    nodes: tuple[float, ...]
    weights: tuple[float, ...]

    @property
    def exact_degree(self) -> int:
        return 2 * self.order - 1

    def apply(self, f: Callable[[float], float], a: float = -1.0, b: float = 1.0) -> float:
        mid, half = (a + b) / 2.0, (b - a) / 2.0
        return half * math.fsum(
            w * f(mid + half * x) for x, w in zip(self.nodes, self.weights)
        )


_cache: dict[int, QuadratureRule] = {}
_cache_lock = threading.Lock()


def _newton_node(m: int, x0: float) -> tuple[float, float]:
    """Polish one node from the asymptotic initial guess; returns (node, deriv).

    Converges on the Newton step, not the raw residual: once the step falls
    under a few ulp the node is as close to the true root as a double can
    get, even where the slope at the root is large.
    """
    x = x0
    for _ in range(_NEWTON_STEPS):
        p, dp = legendre_float(m, x)
        dx = p / dp
        x -= dx
        if abs(dx) < _NEWTON_STEP_TOL:
            _, dp = legendre_float(m, x)
            return x, dp
    raise ConvergenceFailure(f"node near {x0} did not settle in {_NEWTON_STEPS} steps")


def gauss_legendre(m: int) -> QuadratureRule:
    """Order-m rule: nodes at the roots of the degree-m Legendre polynomial,
    weights 2/((1-x^2) P'_m(x)^2).

    Initial guesses are cos(pi (4i-1)/(4m+2)); only the positive half is
    iterated and the rule is mirrored, so node antisymmetry and weight
    symmetry hold exactly. Rules are cached behind a lock.
    """
    if not 1 <= m <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}")
    with _cache_lock:
        rule = _cache.get(m)
    if rule is not None:
        return rule

    positive: list[tuple[float, float]] = []
    for i in range(1, m // 2 + 1):
        x0 = math.cos(math.pi * (4 * i - 1) / (4 * m + 2))
        x, dp = _newton_node(m, x0)
        positive.append((x, 2.0 / ((1.0 - x * x) * dp * dp)))
    positive.sort()

    nodes = [-x for x, _ in reversed(positive)]
    weights = [w for _, w in reversed(positive)]
    if m % 2:
        _, dp = legendre_float(m, 0.0)
        nodes.append(0.0)
        weights.append(2.0 / (dp * dp))
    nodes.extend(x for x, _ in positive)
    weights.extend(w for _, w in positive)

    rule = QuadratureRule(m, tuple(nodes), tuple(weights))
    with _cache_lock:
        _cache.setdefault(m, rule)
    return rule


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    est_error: float


def integrate(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-12
) -> IntegrationResult:
    """Adaptive-order integral of f over [a, b].

    Doubles the order through 16, 32, ..., 512 until two successive values
    differ by less than tol; the last difference is the error estimate. All
    integrands in this package are analytic on the closed interval, so order
    doubling beats adaptive bisection here.
    """
    prev: float | None = None
    err = math.inf
    value = 0.0
    order = 16
    while order <= MAX_ORDER:
        value = gauss_legendre(order).apply(f, a, b)
        if prev is not None:
            err = abs(value - prev)
            if err < tol:
                return IntegrationResult(value, err)
        prev = value
        order *= 2
    raise NoConvergence(f"tolerance {tol} unmet at order {MAX_ORDER}", value, err)

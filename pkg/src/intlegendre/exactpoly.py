"""Exact dense polynomial arithmetic over arbitrary-precision rationals.

This is the oracle layer: every closed form elsewhere in the package is
ultimately checked against ring operations, derivatives and definite
integrals computed here, with no rounding anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Union

Scalar = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


def _frac(value: Scalar) -> Fraction:
    # floats are rejected: nothing in this module may round
    if isinstance(value, float):
        raise TypeError(f"refusing float coefficient {value!r}; pass Fraction or int")
    return value if isinstance(value, Fraction) else Fraction(value)


class Poly:
    """Dense polynomial with Fraction coefficients stored in ascending degree.

    Trailing zero coefficients are stripped on construction; the zero
    polynomial is the empty tuple and reports degree None. Instances are
    immutable and hashable, so they can be shared freely between threads.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coefficient: Scalar = 1) -> "Poly":
        if degree < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls([0] * degree + [coefficient])

    @property
    def degree(self) -> int | None:
        """Degree of the leading term; None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly('{self.pretty()}')"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Poly | Scalar") -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly | Scalar") -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Poly":
        return (-self) + other

    def __mul__(self, other: "Poly | Scalar") -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        # Clear denominators once so the convolution runs on plain integers;
        # coefficients are reduced only at the end.
        da = math.lcm(*(c.denominator for c in self.coeffs))
        db = math.lcm(*(c.denominator for c in other.coeffs))
        a = [c.numerator * (da // c.denominator) for c in self.coeffs]
        b = [c.numerator * (db // c.denominator) for c in other.coeffs]
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        den = da * db
        return Poly(Fraction(v, den) for v in out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Poly":
        c = _frac(c)
        if c == 0:
            return Poly()
        return Poly(c * x for x in self.coeffs)

    def __truediv__(self, c: Scalar) -> "Poly":
        return self.scale(Fraction(1) / _frac(c))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus -----------------------------------------------------------

    def deriv(self, order: int = 1) -> "Poly":
        """Exact derivative of the given order (default 1)."""
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        cs = self.coeffs
        for _ in range(order):
            if len(cs) <= 1:
                return Poly()
            cs = tuple(k * cs[k] for k in range(1, len(cs)))
        return Poly(cs)

    def antideriv(self) -> "Poly":
        """The antiderivative with constant term 0."""
        return Poly([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def integral(self, a: Scalar, b: Scalar) -> Fraction:
        """Exact definite integral over [a, b]."""
        a, b = _frac(a), _frac(b)
        if a == -1 and b == 1:
            # odd-degree terms cancel on a symmetric interval
            return 2 * sum(
                (c / (k + 1) for k, c in enumerate(self.coeffs) if k % 2 == 0),
                Fraction(0),
            )
        f = self.antideriv()
        return f.at(b) - f.at(a)

    def divexact(self, d: "Poly") -> "Poly":
        """Exact quotient self / d; raises NotDivisible on any remainder."""
        if not isinstance(d, Poly):
            raise TypeError("divisor must be a Poly")
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return Poly()
        dd = d.degree
        if self.degree < dd:
            raise NotDivisible(f"degree {self.degree} below divisor degree {dd}")
        rem = list(self.coeffs)
        lead = d.coeffs[-1]
        qlen = len(rem) - dd
        quot = [Fraction(0)] * qlen
        for k in range(qlen - 1, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q:
                for j, dc in enumerate(d.coeffs):
                    rem[k + j] -= q * dc
        if any(rem[:dd]):
            raise NotDivisible("remainder is nonzero")
        return Poly(quot)

    # -- evaluation ---------------------------------------------------------

    def at(self, x: Scalar) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_float(self, x: float) -> float:
        """Horner evaluation in double precision.

        For |x| <= 1 the result lies within about (2*degree + 1) ulp of the
        correctly rounded exact value, provided the coefficients themselves
        convert to float without overflow.
        """
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def pretty(self, var: str = "x") -> str:
        """Human-readable form, ascending powers, e.g. '1 - x^2'."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                term = str(mag)
            else:
                base = var if k == 1 else f"{var}^{k}"
                term = base if mag == 1 else f"{mag}*{base}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)


X = Poly((0, 1))
ONE = Poly((1,))

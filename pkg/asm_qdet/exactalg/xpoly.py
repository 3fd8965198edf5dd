"""
Dense univariate polynomials in x over the rationals.

Coefficients are stored low degree first; integral rationals are kept as ``int``.
"""

import math
from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Self

from asm_qdet.core.exceptions import InexactDivision

type Scalar = int | Fraction

SCALAR_TYPES = (int, Fraction)


def normalize(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def scalar_div(a: Scalar, b: Scalar) -> Scalar:
    if b == 0:
        raise ZeroDivisionError("division by zero scalar")
    return normalize(Fraction(a) / b)


def _trim(coeffs: Sequence[Scalar]) -> tuple[Scalar, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(normalize(c) for c in coeffs[:end])


class XPoly:
    __slots__ = ("coeffs",)

    coeffs: tuple[Scalar, ...]

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        self.coeffs = _trim(list(coeffs))

    @classmethod
    def const(cls, c: Scalar) -> Self:
        return cls((c,))

    @classmethod
    def x(cls) -> Self:
        return cls((0, 1))

    @classmethod
    def linear(cls, c: Scalar) -> Self:
        """x + c"""
        return cls((c, 1))

    @classmethod
    def coerce(cls, other: "XPoly | Scalar") -> "XPoly":
        if isinstance(other, XPoly):
            return other
        return cls((other,))

    @classmethod
    def maybe_coerce(cls, other: object) -> "XPoly | None":
        """None for operands of the larger rings, which handle mixed arithmetic themselves."""
        if isinstance(other, XPoly):
            return other
        if isinstance(other, SCALAR_TYPES):
            return cls((other,))
        return None

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Scalar:
        return self.coeffs[0] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, XPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, SCALAR_TYPES):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("XPoly", self.coeffs))

    def __add__(self, other: "XPoly | Scalar") -> "XPoly":
        rhs = XPoly.maybe_coerce(other)
        if rhs is None:
            return NotImplemented
        b = rhs.coeffs
        a = self.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return XPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "XPoly":
        return XPoly(-c for c in self.coeffs)

    def __sub__(self, other: "XPoly | Scalar") -> "XPoly":
        rhs = XPoly.maybe_coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Scalar) -> "XPoly":
        return XPoly.coerce(other) - self

    def __mul__(self, other: "XPoly | Scalar") -> "XPoly":
        if isinstance(other, SCALAR_TYPES):
            return self.scale(other)
        rhs = XPoly.maybe_coerce(other)
        if rhs is None:
            return NotImplemented
        a, b = self.coeffs, rhs.coeffs
        if not a or not b:
            return XPoly()
        out: list[Scalar] = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return XPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "XPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial in x")
        result = XPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, s: Scalar) -> "XPoly":
        if s == 0:
            return XPoly()
        return XPoly(c * s for c in self.coeffs)

    def divmod(self, other: "XPoly") -> tuple["XPoly", "XPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.leading
        quot: list[Scalar] = [0] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            t = scalar_div(c, lead)
            quot[i - db] = t
            for j, cb in enumerate(other.coeffs):
                rem[i - db + j] -= t * cb
        return XPoly(quot), XPoly(rem[:db] if db > 0 else ())

    def exact_divide(self, other: "XPoly | Scalar") -> "XPoly":
        if isinstance(other, SCALAR_TYPES):
            return self.scale(scalar_div(1, other))
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise InexactDivision(remainder=str(rem), dividend=str(self), divisor=str(other))
        return quot

    def shift(self, c: Scalar) -> "XPoly":
        """Substitute x -> x + c."""
        if c == 0 or self.is_constant():
            return self
        result = XPoly()
        step = XPoly.linear(c)
        for coeff in reversed(self.coeffs):
            result = result * step + coeff
        return result

    def eval(self, r: Scalar) -> Scalar:
        acc: Scalar = 0
        for coeff in reversed(self.coeffs):
            acc = acc * r + coeff
        return normalize(acc)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __str__(self) -> str:
        """Canonical text, highest power first: ``x^2+3/2*x+1``."""
        terms: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            else:
                power = "x" if i == 1 else f"x^{i}"
                term = power if c == 1 else f"-{power}" if c == -1 else f"{c}*{power}"
            terms.append(term if not terms or term.startswith("-") else f"+{term}")
        return "".join(terms) or "0"

    def __repr__(self) -> str:
        return f"XPoly({self})"


X = XPoly.x()
ONE = XPoly.const(1)
ZERO = XPoly()


def xpoly_binomial(c: Scalar, m: int) -> XPoly:
    """binom(x + c, m) as a polynomial in x."""
    if m < 0:
        raise ValueError(f"binomial lower index must be non-negative, got {m}")
    result = ONE
    for t in range(m):
        result = result * XPoly.linear(c - t)
    return result.scale(Fraction(1, math.factorial(m)))


def pochhammer(base: XPoly | Scalar, j: int) -> XPoly:
    """Rising factorial base (base+1) ... (base+j-1); 1 whenever j <= 0."""
    base = XPoly.coerce(base)
    result = ONE
    for t in range(j):
        result = result * (base + t)
    return result


def half_x(c: Scalar) -> XPoly:
    """x/2 + c"""
    return XPoly((c, Fraction(1, 2)))


def linear_product(shifts: Iterable[Scalar]) -> XPoly:
    """prod (x + c) over the given shifts."""
    result = ONE
    for c in shifts:
        result = result * XPoly.linear(c)
    return result

"""
Laurent polynomials in q with coefficients in Q[x].

The value is ``sum(coeffs[i] * q**(lo + i))``; the canonical zero is ``lo == 0`` with no
coefficients, so equality is structural.
"""

from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction
from typing import Self

from asm_qdet.core.exceptions import InexactDivision, NotSymmetric
from asm_qdet.exactalg.cyclo import CycloElem, check_order
from asm_qdet.exactalg.xpoly import SCALAR_TYPES, XPoly, Scalar, normalize


class QLaurent:
    __slots__ = ("lo", "coeffs")

    lo: int
    coeffs: tuple[XPoly, ...]

    def __init__(self, lo: int = 0, coeffs: Iterable[XPoly | Scalar] = ()) -> None:
        items = [XPoly.coerce(c) for c in coeffs]
        start, end = 0, len(items)
        while start < end and items[start].is_zero():
            start += 1
        while end > start and items[end - 1].is_zero():
            end -= 1
        if start == end:
            self.lo, self.coeffs = 0, ()
        else:
            self.lo, self.coeffs = lo + start, tuple(items[start:end])

    @classmethod
    def const(cls, c: XPoly | Scalar) -> Self:
        return cls(0, (c,))

    @classmethod
    def monomial(cls, e: int, c: XPoly | Scalar = 1) -> Self:
        return cls(e, (c,))

    @classmethod
    def from_terms(cls, terms: dict[int, XPoly]) -> Self:
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, (terms.get(e, XPoly()) for e in range(lo, hi + 1)))

    @classmethod
    def coerce(cls, other: "QLaurent | XPoly | Scalar") -> "QLaurent":
        if isinstance(other, QLaurent):
            return other
        return QLaurent.const(other)

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, e: int) -> XPoly:
        i = e - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return XPoly()

    def terms(self) -> dict[int, XPoly]:
        return {self.lo + i: c for i, c in enumerate(self.coeffs) if not c.is_zero()}

    def is_polynomial(self) -> bool:
        return self.is_zero() or self.lo >= 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QLaurent):
            return self.lo == other.lo and self.coeffs == other.coeffs
        if isinstance(other, (XPoly, *SCALAR_TYPES)):
            return self == QLaurent.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("QLaurent", self.lo, self.coeffs))

    def __add__(self, other: "QLaurent | XPoly | Scalar") -> "QLaurent":
        b = QLaurent.coerce(other)
        if self.is_zero():
            return b
        if b.is_zero():
            return self
        lo = min(self.lo, b.lo)
        hi = max(self.hi, b.hi)
        out = [XPoly() for _ in range(hi - lo + 1)]
        for src in (self, b):
            for i, c in enumerate(src.coeffs):
                out[src.lo - lo + i] = out[src.lo - lo + i] + c
        return QLaurent(lo, out)

    __radd__ = __add__

    def __neg__(self) -> "QLaurent":
        return QLaurent(self.lo, (-c for c in self.coeffs))

    def __sub__(self, other: "QLaurent | XPoly | Scalar") -> "QLaurent":
        return self + (-QLaurent.coerce(other))

    def __rsub__(self, other: XPoly | Scalar) -> "QLaurent":
        return QLaurent.coerce(other) - self

    def __mul__(self, other: "QLaurent | XPoly | Scalar") -> "QLaurent":
        if isinstance(other, (XPoly, *SCALAR_TYPES)):
            return QLaurent(self.lo, (c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return QLaurent()
        out = [XPoly() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, ca in enumerate(self.coeffs):
            if ca.is_zero():
                continue
            for j, cb in enumerate(other.coeffs):
                out[i + j] = out[i + j] + ca * cb
        return QLaurent(self.lo + other.lo, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QLaurent":
        if e < 0:
            if len(self.coeffs) != 1 or not self.coeffs[0].is_constant():
                raise ValueError("only rational monomials in q have negative powers")
            inv = XPoly.const(1).exact_divide(self.coeffs[0].constant())
            return QLaurent.monomial(-self.lo, inv) ** (-e)
        result = QLaurent.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift_q(self, e: int) -> "QLaurent":
        """Multiply by q^e."""
        if self.is_zero():
            return self
        return QLaurent(self.lo + e, self.coeffs)

    def invert_q(self) -> "QLaurent":
        """Substitute q -> q^-1."""
        if self.is_zero():
            return self
        return QLaurent(-self.hi, reversed(self.coeffs))

    def map_x(self, fn: Callable[[XPoly], XPoly]) -> "QLaurent":
        return QLaurent(self.lo, (fn(c) for c in self.coeffs))

    def shift_x(self, c: Scalar) -> "QLaurent":
        """Substitute x -> x + c."""
        if c == 0:
            return self
        return self.map_x(lambda p: p.shift(c))

    def eval_x(self, r: Scalar) -> "QLaurent":
        return self.map_x(lambda p: XPoly.const(p.eval(r)))

    def eval_q(self, r: Scalar) -> XPoly:
        if r == 0 and self.lo < 0:
            raise ZeroDivisionError("q = 0 in a Laurent polynomial with negative powers")
        acc = XPoly()
        for i, c in enumerate(self.coeffs):
            acc = acc + c * normalize(Fraction(r) ** (self.lo + i))
        return acc

    def exact_divide(self, other: "QLaurent | XPoly | Scalar") -> "QLaurent":
        """
        Exact quotient in Q[x][q, 1/q]. Powers of q are units, so both sides are stripped to
        polynomials with nonzero constant term and divided by long division on q, the leading
        coefficients dividing exactly in Q[x].
        """
        if isinstance(other, (XPoly, *SCALAR_TYPES)):
            return self.map_x(lambda p: p.exact_divide(other))
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return self
        rem = list(self.coeffs)
        div = other.coeffs
        db = len(div) - 1
        if len(rem) - 1 < db:
            raise InexactDivision(remainder=str(self), dividend=str(self), divisor=str(other))
        quot = [XPoly() for _ in range(len(rem) - db)]
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c.is_zero():
                continue
            try:
                t = c.exact_divide(div[-1])
            except InexactDivision:
                remainder = QLaurent(self.lo, rem)
                raise InexactDivision(
                    remainder=str(remainder), dividend=str(self), divisor=str(other)
                ) from None
            quot[i - db] = t
            for j, cb in enumerate(div):
                rem[i - db + j] = rem[i - db + j] - t * cb
        remainder = QLaurent(self.lo, rem[:db])
        if not remainder.is_zero():
            raise InexactDivision(remainder=str(remainder), dividend=str(self), divisor=str(other))
        return QLaurent(self.lo - other.lo, quot)

    def is_palindromic(self) -> bool:
        return self == self.invert_q()

    def substitute_root(self, order: int, power: int = 1) -> CycloElem:
        return qlaurent_substitute_root(self, order, power)

    def __str__(self) -> str:
        """Canonical text ``q^-1*(x^2+1/2) + q^0*(3)``; values free of q print as their x part."""
        if not self.coeffs:
            return "0"
        if self.lo == 0 and len(self.coeffs) == 1:
            return str(self.coeffs[0])
        return " + ".join(f"q^{e}*({c})" for e, c in self.terms().items())

    def __repr__(self) -> str:
        return f"QLaurent({self})"


Q = QLaurent.monomial(1)


def _tpoly_add(a: Sequence[XPoly], b: Sequence[XPoly]) -> list[XPoly]:
    size = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else XPoly()) + (b[i] if i < len(b) else XPoly())
        for i in range(size)
    ]


def _tpoly_scale(a: Sequence[XPoly], s: XPoly | Scalar) -> list[XPoly]:
    return [c * s for c in a]


def _tpoly_mul_linear(a: Sequence[XPoly], c: Scalar) -> list[XPoly]:
    """a(t) * (t + c)"""
    return _tpoly_add([XPoly(), *a], _tpoly_scale(a, c))


def qlaurent_to_Qpoly(v: QLaurent) -> list[XPoly]:
    """
    Coefficients c_0..c_d with v = sum c_j (q + 1/q + 2)^j, for v invariant under q -> 1/q.

    q^e + q^-e is expanded in t = q + 1/q through P_0 = 2, P_1 = t, P_{e+1} = t P_e - P_{e-1};
    then t = Q - 2.
    """
    if not v.is_palindromic():
        raise NotSymmetric(detail=str(v))
    if v.is_zero():
        return []
    t_coeffs: list[XPoly] = [v.coefficient(0)]
    p_prev: list[XPoly] = [XPoly.const(2)]
    p_cur: list[XPoly] = [XPoly(), XPoly.const(1)]
    for e in range(1, v.hi + 1):
        t_coeffs = _tpoly_add(t_coeffs, _tpoly_scale(p_cur, v.coefficient(e)))
        p_prev, p_cur = p_cur, _tpoly_add([XPoly(), *p_cur], _tpoly_scale(p_prev, -1))
    # Taylor shift t -> Q - 2 by Horner
    result: list[XPoly] = []
    for c in reversed(t_coeffs):
        result = _tpoly_add(_tpoly_mul_linear(result, -2), [c])
    while result and result[-1].is_zero():
        result.pop()
    return result


def qlaurent_from_Qpoly(coeffs: Sequence[XPoly | Scalar]) -> QLaurent:
    """sum c_j (q + 1/q + 2)^j"""
    big_q = QLaurent(-1, (1, 2, 1))
    result = QLaurent()
    for c in reversed(coeffs):
        result = result * big_q + XPoly.coerce(c)
    return result


def qlaurent_substitute_root(v: QLaurent, order: int, power: int = 1) -> CycloElem:
    """Ring homomorphism q -> zeta_order^power into Q(zeta_order)[x]."""
    check_order(order)
    dense = [XPoly() for _ in range(order)]
    for e, c in v.terms().items():
        dense[(e * power) % order] = dense[(e * power) % order] + c
    return CycloElem(order, dense)

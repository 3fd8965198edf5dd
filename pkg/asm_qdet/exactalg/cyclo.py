"""
Elements of Q(zeta_l)[x] for l in {1, 2, 3, 4, 6}, stored as q-polynomials reduced modulo the
cyclotomic polynomial Phi_l(q).
"""

from collections.abc import Iterable, Mapping
from typing import Self

from asm_qdet.core.exceptions import UnsupportedOrder
from asm_qdet.exactalg.xpoly import SCALAR_TYPES, XPoly, Scalar

# Phi_l, low degree first, monic
CYCLOTOMIC: dict[int, tuple[int, ...]] = {
    1: (-1, 1),
    2: (1, 1),
    3: (1, 1, 1),
    4: (1, 0, 1),
    6: (1, -1, 1),
}

SUPPORTED_ORDERS = tuple(CYCLOTOMIC)


def check_order(order: int) -> int:
    if order not in CYCLOTOMIC:
        raise UnsupportedOrder(order=order)
    return order


def _reduce(order: int, coeffs: list[XPoly]) -> tuple[XPoly, ...]:
    phi = CYCLOTOMIC[order]
    d = len(phi) - 1
    # q^order = 1 in the quotient, Phi_l divides q^l - 1
    folded = [XPoly() for _ in range(max(order, d))]
    for e, c in enumerate(coeffs):
        if c:
            folded[e % order] = folded[e % order] + c
    for p in range(len(folded) - 1, d - 1, -1):
        c = folded[p]
        if c.is_zero():
            continue
        folded[p] = XPoly()
        for i in range(d):
            if phi[i]:
                folded[p - d + i] = folded[p - d + i] - c * phi[i]
    return tuple(folded[:d])


class CycloElem:
    __slots__ = ("order", "coeffs")

    order: int
    coeffs: tuple[XPoly, ...]

    def __init__(self, order: int, coeffs: Iterable[XPoly | Scalar] = ()) -> None:
        self.order = check_order(order)
        self.coeffs = _reduce(self.order, [XPoly.coerce(c) for c in coeffs])

    @classmethod
    def from_exponents(cls, order: int, terms: Mapping[int, XPoly]) -> Self:
        """Sum of c * q^e for possibly negative exponents e."""
        check_order(order)
        dense = [XPoly() for _ in range(order)]
        for e, c in terms.items():
            dense[e % order] = dense[e % order] + c
        return cls(order, dense)

    @classmethod
    def const(cls, order: int, c: XPoly | Scalar) -> Self:
        return cls(order, (c,))

    @classmethod
    def q_power(cls, order: int, e: int, c: XPoly | Scalar = 1) -> Self:
        return cls.from_exponents(order, {e: XPoly.coerce(c)})

    def _coerce(self, other: "CycloElem | XPoly | Scalar") -> "CycloElem":
        if isinstance(other, CycloElem):
            if other.order != self.order:
                raise ValueError(f"mixing orders {self.order} and {other.order}")
            return other
        return CycloElem.const(self.order, other)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_constant(self) -> bool:
        """True when the value lies in Q[x] (no q component)."""
        return all(c.is_zero() for c in self.coeffs[1:])

    def rational_part(self) -> XPoly:
        return self.coeffs[0]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloElem):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (XPoly, *SCALAR_TYPES)):
            return self == CycloElem.const(self.order, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("CycloElem", self.order, self.coeffs))

    def __add__(self, other: "CycloElem | XPoly | Scalar") -> "CycloElem":
        b = self._coerce(other)
        return CycloElem(self.order, (x + y for x, y in zip(self.coeffs, b.coeffs, strict=True)))

    __radd__ = __add__

    def __neg__(self) -> "CycloElem":
        return CycloElem(self.order, (-c for c in self.coeffs))

    def __sub__(self, other: "CycloElem | XPoly | Scalar") -> "CycloElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other: XPoly | Scalar) -> "CycloElem":
        return self._coerce(other) - self

    def __mul__(self, other: "CycloElem | XPoly | Scalar") -> "CycloElem":
        if isinstance(other, (XPoly, *SCALAR_TYPES)):
            return CycloElem(self.order, (c * other for c in self.coeffs))
        b = self._coerce(other)
        out = [XPoly() for _ in range(len(self.coeffs) + len(b.coeffs) - 1)]
        for i, ca in enumerate(self.coeffs):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b.coeffs):
                out[i + j] = out[i + j] + ca * cb
        return CycloElem(self.order, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycloElem":
        if e < 0:
            return CycloElem.const(self.order, 1).exact_divide(self ** (-e))
        result = CycloElem.const(self.order, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "CycloElem":
        """The automorphism q -> q^-1."""
        return CycloElem.from_exponents(self.order, {-i: c for i, c in enumerate(self.coeffs)})

    def norm(self) -> XPoly:
        """v * conj(v), an element of Q[x]."""
        product = self * self.conjugate()
        if not product.is_constant():
            raise ArithmeticError(f"norm of {self} is not rational")
        return product.rational_part()

    def exact_divide(self, other: "CycloElem | XPoly | Scalar") -> "CycloElem":
        b = self._coerce(other)
        if b.is_zero():
            raise ZeroDivisionError("division by zero in the cyclotomic ring")
        if b.is_constant():
            den = b.rational_part()
            return CycloElem(self.order, (c.exact_divide(den) for c in self.coeffs))
        num = self * b.conjugate()
        den = b.norm()
        return CycloElem(self.order, (c.exact_divide(den) for c in num.coeffs))

    def shift_x(self, c: Scalar) -> "CycloElem":
        return CycloElem(self.order, (p.shift(c) for p in self.coeffs))

    def eval_x(self, r: Scalar) -> "CycloElem":
        return CycloElem(self.order, (XPoly.const(p.eval(r)) for p in self.coeffs))

    def __str__(self) -> str:
        """Canonical text: ``zeta6[q^0*(x+1) + q^1*(-1)]``."""
        body = " + ".join(f"q^{i}*({c})" for i, c in enumerate(self.coeffs) if not c.is_zero())
        return f"zeta{self.order}[{body or '0'}]"

    def __repr__(self) -> str:
        return f"CycloElem({self})"


def zeta(order: int) -> CycloElem:
    """The generator q of Q(zeta_l)."""
    return CycloElem.q_power(order, 1)

from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol, Self

from asm_qdet.exactalg.cyclo import CycloElem, check_order
from asm_qdet.exactalg.qlaurent import QLaurent
from asm_qdet.exactalg.xpoly import XPoly, Scalar, scalar_div


class RingElement(Protocol):
    def __add__(self, other: Self, /) -> Self: ...
    def __sub__(self, other: Self, /) -> Self: ...
    def __mul__(self, other: Self, /) -> Self: ...
    def __neg__(self) -> Self: ...


class Ring[T: RingElement](Protocol):
    """Integral domain the determinant engines run over."""

    name: str

    def zero(self) -> T: ...
    def one(self) -> T: ...
    def is_zero(self, a: T) -> bool: ...
    def exact_divide(self, a: T, b: T) -> T: ...


@dataclass(frozen=True)
class RationalField:
    name: str = "QQ"

    def zero(self) -> Scalar:
        return 0

    def one(self) -> Scalar:
        return 1

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    def exact_divide(self, a: Scalar, b: Scalar) -> Scalar:
        return scalar_div(Fraction(a), b)


@dataclass(frozen=True)
class XPolyRing:
    name: str = "QQ[x]"

    def zero(self) -> XPoly:
        return XPoly()

    def one(self) -> XPoly:
        return XPoly.const(1)

    def is_zero(self, a: XPoly) -> bool:
        return a.is_zero()

    def exact_divide(self, a: XPoly, b: XPoly) -> XPoly:
        return a.exact_divide(b)


@dataclass(frozen=True)
class QLaurentRing:
    name: str = "QQ[x][q,1/q]"

    def zero(self) -> QLaurent:
        return QLaurent()

    def one(self) -> QLaurent:
        return QLaurent.const(1)

    def is_zero(self, a: QLaurent) -> bool:
        return a.is_zero()

    def exact_divide(self, a: QLaurent, b: QLaurent) -> QLaurent:
        return a.exact_divide(b)


@dataclass(frozen=True)
class CycloRing:
    order: int

    def __post_init__(self) -> None:
        check_order(self.order)

    @property
    def name(self) -> str:
        return f"QQ(zeta{self.order})[x]"

    def zero(self) -> CycloElem:
        return CycloElem(self.order)

    def one(self) -> CycloElem:
        return CycloElem.const(self.order, 1)

    def is_zero(self, a: CycloElem) -> bool:
        return a.is_zero()

    def exact_divide(self, a: CycloElem, b: CycloElem) -> CycloElem:
        return a.exact_divide(b)


QQ = RationalField()
QQ_X = XPolyRing()
QQ_X_Q = QLaurentRing()

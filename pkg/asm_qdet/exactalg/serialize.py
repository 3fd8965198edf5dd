"""
Canonical text and JSON forms of ring elements.

Text:  ``x^2+3/2*x+1`` (XPoly), ``q^-1*(x+1) + q^0*(2)`` (QLaurent), ``zeta6[q^0*(1) + q^1*(x)]``
(CycloElem). JSON: rationals are ``"p/q"`` strings, XPoly is a list of them (low degree first),
QLaurent maps exponents to such lists.
"""

import re
from fractions import Fraction
from typing import Any

from asm_qdet.exactalg.cyclo import CycloElem
from asm_qdet.exactalg.qlaurent import QLaurent
from asm_qdet.exactalg.xpoly import SCALAR_TYPES, XPoly, Scalar, normalize

type RingValue = Scalar | XPoly | QLaurent | CycloElem
type JSONValue = str | list[str] | dict[str, Any]

_XTERM = re.compile(r"([+-]?)([^+-]+)")
_QTERM = re.compile(r"q\^(-?\d+)\*\(([^()]*)\)")
_CYCLO = re.compile(r"zeta(\d+)\[(.*)\]")


def parse_rational(text: str) -> Scalar:
    try:
        return normalize(Fraction(text.strip()))
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc


def parse_xpoly(text: str) -> XPoly:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    matches = list(_XTERM.finditer(s))
    if "".join(m.group(0) for m in matches) != s:
        raise ValueError(f"malformed polynomial in x: {text!r}")
    coeffs: dict[int, Scalar] = {}
    for m in matches:
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        if "x" not in body:
            coef, power = parse_rational(body), 0
        else:
            head, _, tail = body.partition("x")
            coef = parse_rational(head.removesuffix("*")) if head else 1
            power = int(tail.removeprefix("^")) if tail else 1
        coeffs[power] = coeffs.get(power, 0) + sign * coef
    size = max(coeffs) + 1
    return XPoly(coeffs.get(i, 0) for i in range(size))


def parse_qlaurent(text: str) -> QLaurent:
    s = text.strip()
    if "q" not in s:
        return QLaurent.const(parse_xpoly(s))
    terms: dict[int, XPoly] = {}
    consumed = 0
    for m in _QTERM.finditer(s):
        e = int(m.group(1))
        terms[e] = terms.get(e, XPoly()) + parse_xpoly(m.group(2))
        consumed += 1
    if not consumed or len(s.split(" + ")) != consumed:
        raise ValueError(f"malformed Laurent polynomial: {text!r}")
    return QLaurent.from_terms(terms)


def parse_cyclo(text: str) -> CycloElem:
    m = _CYCLO.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"malformed cyclotomic element: {text!r}")
    order = int(m.group(1))
    body = m.group(2)
    if body == "0":
        return CycloElem(order)
    return parse_qlaurent(body).substitute_root(order)


def rational_to_json(c: Scalar) -> str:
    f = Fraction(c)
    return f"{f.numerator}/{f.denominator}"


def xpoly_to_json(p: XPoly) -> list[str]:
    return [rational_to_json(c) for c in p.coeffs]


def xpoly_from_json(data: list[str]) -> XPoly:
    return XPoly(parse_rational(c) for c in data)


def qlaurent_to_json(v: QLaurent) -> dict[str, list[str]]:
    return {str(e): xpoly_to_json(c) for e, c in v.terms().items()}


def qlaurent_from_json(data: dict[str, list[str]]) -> QLaurent:
    return QLaurent.from_terms({int(e): xpoly_from_json(c) for e, c in data.items()})


def cyclo_to_json(v: CycloElem) -> dict[str, Any]:
    return {"order": v.order, "coeffs": [xpoly_to_json(c) for c in v.coeffs]}


def cyclo_from_json(data: dict[str, Any]) -> CycloElem:
    return CycloElem(int(data["order"]), (xpoly_from_json(c) for c in data["coeffs"]))


def to_text(value: RingValue) -> str:
    return str(value)


def to_json(value: RingValue) -> JSONValue:
    match value:
        case XPoly():
            return xpoly_to_json(value)
        case QLaurent():
            return qlaurent_to_json(value)
        case CycloElem():
            return cyclo_to_json(value)
        case _ if isinstance(value, SCALAR_TYPES):
            return rational_to_json(value)
        case _:
            raise TypeError(f"cannot serialize {type(value).__name__}")

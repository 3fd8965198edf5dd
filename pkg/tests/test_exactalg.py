import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings as hypothesis_settings, strategies as st

from asm_qdet.core.exceptions import InexactDivision, NotSymmetric, UnsupportedOrder
from asm_qdet.detkernel import bareiss_det, cofactor_det, random_xpoly_matrix
from asm_qdet.exactalg import (
    QQ_X,
    SUPPORTED_ORDERS,
    CycloElem,
    Q,
    QLaurent,
    RingMatrix,
    X,
    XPoly,
    pochhammer,
    qlaurent_from_Qpoly,
    qlaurent_to_Qpoly,
    xpoly_binomial,
    zeta,
)
from asm_qdet.exactalg.serialize import (
    cyclo_from_json,
    cyclo_to_json,
    parse_cyclo,
    parse_qlaurent,
    parse_rational,
    parse_xpoly,
    qlaurent_from_json,
    qlaurent_to_json,
    to_json,
)
from asm_qdet.exactalg.xpoly import normalize

scalars = st.fractions(min_value=-6, max_value=6, max_denominator=4).map(normalize)
xpolys = st.lists(scalars, max_size=4).map(XPoly)
qlaurents = st.builds(QLaurent, st.integers(-3, 3), st.lists(xpolys, max_size=4))


def cyclos(order: int) -> st.SearchStrategy[CycloElem]:
    return st.lists(xpolys, max_size=order + 1).map(lambda cs: CycloElem(order, cs))


@given(xpolys, xpolys, xpolys)
def test_xpoly_ring_axioms(a: XPoly, b: XPoly, c: XPoly):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@given(xpolys, xpolys)
def test_xpoly_exact_divide_recovers_factor(a: XPoly, b: XPoly):
    assume(not b.is_zero())
    assert (a * b).exact_divide(b) == a


def test_xpoly_inexact_division_reports_remainder():
    with pytest.raises(InexactDivision) as exc_info:
        (X**2 + 1).exact_divide(X + 1)
    assert exc_info.value.remainder == "2"


@given(xpolys, scalars)
def test_xpoly_shift_is_invertible(p: XPoly, c: Fraction | int):
    assert p.shift(c).shift(-c) == p


def test_xpoly_helpers():
    assert XPoly.linear(0).shift(2) == XPoly.linear(2)
    assert pochhammer(1, 3) == 6
    assert pochhammer(X, 0) == 1
    assert pochhammer(X, -2) == 1
    assert xpoly_binomial(0, 2).eval(3) == 3
    assert xpoly_binomial(1, 1) == X + 1


def test_xpoly_text():
    assert str(XPoly((1, Fraction(3, 2), 1))) == "x^2+3/2*x+1"
    assert str(XPoly()) == "0"
    assert str(XPoly((0, -1))) == "-x"
    assert str(XPoly((-2, 0, Fraction(-1, 3)))) == "-1/3*x^2-2"


@given(qlaurents, qlaurents, qlaurents)
@hypothesis_settings(max_examples=50)
def test_qlaurent_ring_axioms(a: QLaurent, b: QLaurent, c: QLaurent):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@given(qlaurents, qlaurents)
@hypothesis_settings(max_examples=50)
def test_qlaurent_exact_divide_recovers_factor(a: QLaurent, b: QLaurent):
    assume(not b.is_zero())
    assert (a * b).exact_divide(b) == a


def test_qlaurent_canonical_zero_and_powers():
    assert QLaurent(5, (0, 0)) == QLaurent()
    assert QLaurent(-2, (0, 1, 0)) == QLaurent.monomial(-1)
    assert Q**3 == QLaurent.monomial(3)
    assert (Q + 1).invert_q() == QLaurent(-1, (1, 1))
    assert QLaurent(-1, (1, 2, 1)).is_palindromic()


@given(st.lists(xpolys, max_size=4))
def test_Qpoly_conversion_inverts_construction(coeffs: list[XPoly]):
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    assert qlaurent_to_Qpoly(qlaurent_from_Qpoly(coeffs)) == coeffs


def test_Qpoly_of_asm_enumeration_n3():
    # q^-1 + 8 + q = 6 + (2 + q + q^-1)
    assert qlaurent_to_Qpoly(QLaurent(-1, (1, 8, 1))) == [XPoly.const(6), XPoly.const(1)]


def test_Qpoly_rejects_asymmetric_values():
    with pytest.raises(NotSymmetric):
        qlaurent_to_Qpoly(Q)


@pytest.mark.parametrize("order", SUPPORTED_ORDERS)
@given(data=st.data())
@hypothesis_settings(max_examples=30)
def test_substitute_root_is_a_ring_homomorphism(order: int, data: st.DataObject):
    a, b = data.draw(qlaurents), data.draw(qlaurents)
    assert (a * b).substitute_root(order) == a.substitute_root(order) * b.substitute_root(order)
    assert (a + b).substitute_root(order) == a.substitute_root(order) + b.substitute_root(order)


@pytest.mark.parametrize("order", SUPPORTED_ORDERS)
@given(data=st.data())
@hypothesis_settings(max_examples=30)
def test_cyclo_ring_axioms(order: int, data: st.DataObject):
    a, b, c = (data.draw(cyclos(order)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


def test_mixed_arithmetic_defers_to_the_larger_ring():
    p = X + 1
    v = Q + 1
    assert isinstance(p * v, QLaurent)
    assert p * v == v * p == QLaurent(0, (X + 1, X + 1))
    assert p + v == v + p
    assert p - v == -(v - p)
    z = zeta(3)
    assert isinstance(p * z, CycloElem)
    assert p * z == z * p
    assert p + z == z + p
    assert p != v


@pytest.mark.parametrize("order", SUPPORTED_ORDERS)
@given(data=st.data())
@hypothesis_settings(max_examples=30)
def test_cyclo_exact_divide_recovers_factor(order: int, data: st.DataObject):
    a, b = data.draw(cyclos(order)), data.draw(cyclos(order))
    assume(not b.is_zero())
    assert (a * b).exact_divide(b) == a


def test_roots_of_unity():
    assert zeta(6) ** 6 == 1
    assert zeta(6) ** 3 == -1
    assert zeta(3) ** 3 == 1
    assert 1 + zeta(3) + zeta(3) ** 2 == 0
    assert zeta(4) ** 2 == -1
    assert zeta(2) == -1
    assert zeta(1) == 1
    assert zeta(6) ** -1 == zeta(6).conjugate()
    assert (zeta(3) + zeta(3) ** 2).is_constant()


def test_unsupported_order():
    with pytest.raises(UnsupportedOrder):
        CycloElem(5)
    with pytest.raises(UnsupportedOrder):
        Q.substitute_root(8)


@given(qlaurents)
def test_qlaurent_text_parses_back(v: QLaurent):
    assert parse_qlaurent(str(v)) == v


@pytest.mark.parametrize("order", SUPPORTED_ORDERS)
@given(data=st.data())
@hypothesis_settings(max_examples=30)
def test_cyclo_text_parses_back(order: int, data: st.DataObject):
    v = data.draw(cyclos(order))
    assert parse_cyclo(str(v)) == v


def test_parse_xpoly_accepts_canonical_terms():
    assert parse_xpoly("3/2*x") == XPoly((0, Fraction(3, 2)))
    assert parse_xpoly("-x^2+5") == XPoly((5, 0, -1))
    assert parse_xpoly("x + 2") == X + 2
    with pytest.raises(ValueError):
        parse_xpoly("")


def test_parse_rational_rejects_zero_denominators():
    assert parse_rational(" -6/4 ") == Fraction(-3, 2)
    assert parse_rational("4/2") == 2
    with pytest.raises(ValueError, match="zero denominator"):
        parse_rational("1/0")
    with pytest.raises(ValueError, match="zero denominator"):
        parse_xpoly("1/0*x")


@given(qlaurents)
def test_qlaurent_json(v: QLaurent):
    assert qlaurent_from_json(qlaurent_to_json(v)) == v


def test_json_forms():
    assert to_json(Fraction(-3, 2)) == "-3/2"
    assert to_json(XPoly((1, 2))) == ["1/1", "2/1"]
    assert to_json(QLaurent.monomial(-1, X)) == {"-1": ["0/1", "1/1"]}
    assert to_json(zeta(3)) == {"order": 3, "coeffs": [[], ["1/1"]]}
    assert cyclo_from_json(cyclo_to_json(zeta(6) * (X + 1))) == zeta(6) * (X + 1)


def test_matrix_minor_uses_one_based_indices():
    m = RingMatrix.from_rows(QQ_X, [[XPoly.const(v) for v in row] for row in [[1, 2], [3, 4]]])
    assert m.entry(1, 2) == 2
    assert m.minor({1}, {2}).rows == ((XPoly.const(3),),)


@pytest.mark.parametrize("seed", range(5))
def test_engines_agree_on_random_polynomial_matrices(seed: int):
    m = random_xpoly_matrix(random.Random(seed), 4)
    assert bareiss_det(m) == cofactor_det(m)

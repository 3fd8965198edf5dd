from fractions import Fraction

import pytest

from asm_qdet import structure
from asm_qdet.core.exceptions import StructuralViolation
from asm_qdet.detkernel import d
from asm_qdet.exactalg import QLaurent, X, XPoly
from asm_qdet.structure import (
    F_extract,
    c_exponent,
    expected_product_scalar,
    f,
    f_extract_suite,
    f_recursion_suite,
    factorize,
    integrality_observation,
    k2_exploration,
    leading_coeff,
    leading_coeff_check,
    maximality_suite,
    p_poly,
    p_scalar,
    p_tilde,
    q_product_corollary,
    structural_suite,
)

F_2 = QLaurent(0, (X + 1, 2 * X + 8, X + 1))


@pytest.mark.parametrize(
    ("n", "k", "expected"),
    [(2, 2, 0), (5, 7, 0), (3, -3, -9), (2, -3, -6), (2, 0, -1), (3, 1, -1), (4, 0, -4)],
)
def test_c_exponent(n: int, k: int, expected: int):
    assert c_exponent(n, k) == expected


def test_p_scalar_and_poly():
    assert p_scalar(1) == 1
    assert p_scalar(3) == Fraction(1, 2)
    assert p_poly(3, 1) == (X + 2).scale(Fraction(1, 2))
    assert p_poly(2, 0) == X + 1
    assert p_poly(1, 1) == 1


def test_small_f():
    assert f(0, 4) == QLaurent.const(1)
    assert f(1, 1) == QLaurent.const(1)
    assert f(2, 0) == QLaurent.const(-1)
    assert f(2, 2) == QLaurent(0, (1, -(X + 3), 1))
    assert f(3, 1) == F_2
    assert f(3, 0).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("k", [-3, -1, 0, 1, 2, 4])
def test_factorization_recomposes(n: int, k: int):
    fact = factorize(n, k)
    assert fact.recompose() == d(n, k)
    assert fact.f.is_polynomial()
    assert fact.degenerate == d(n, k).is_zero()


def test_factorize_rejects_values_outside_the_structure(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr(structure, "d", lambda n, k: QLaurent.monomial(-5, X + 2))
    with pytest.raises(StructuralViolation):
        factorize(2, 1)
    monkeypatch.setattr(structure, "d", lambda n, k: QLaurent.const(X + 3))
    with pytest.raises(StructuralViolation):
        factorize(2, 1)


def test_structural_suite():
    report = structural_suite(4)
    assert report.passed
    assert len(report.checks) == 4 * 7


def test_recursions():
    assert f_recursion_suite(4).passed


def test_F_extract():
    factors = F_extract(5)
    assert len(factors) == 3
    assert factors[0] == QLaurent.const(1)
    assert factors[1] == F_2
    with pytest.raises(ValueError):
        F_extract(0)


def test_f_extract_suite_publishes_factors():
    report = f_extract_suite(5)
    assert report.passed
    assert report.published["F_2"] == str(F_2)


def test_leading_coefficient():
    assert leading_coeff(F_2) == 1
    assert leading_coeff(QLaurent()) == 0
    assert leading_coeff_check(5).passed


def test_observations_never_fail():
    assert integrality_observation(4).passed
    assert k2_exploration(2).passed


def test_maximality():
    assert maximality_suite(4).passed


def test_p_tilde():
    factors = F_extract(5)
    assert p_tilde(1, factors) == QLaurent.const(Fraction(1, 2))
    assert p_tilde(2, factors) == QLaurent.const(2)
    assert p_tilde(4, factors) == QLaurent(-1, (1, 8, 1))


def test_q_product_corollary():
    report = q_product_corollary(1)
    assert report.passed
    assert report.published["scalar_3"] == "2"
    assert report.published["p_tilde_4(Q)"] == [str(XPoly.const(6)), str(XPoly.const(1))]
    assert [expected_product_scalar(size) for size in (1, 2, 3, 4, 5)] == [1, 1, 2, 4, 8]


def test_q_product_corollary_up_to_size_seven():
    report = q_product_corollary(3)
    assert report.passed
    assert {c.n for c in report.checks if c.identity == "q-product:proportional"} == set(
        range(1, 8)
    )
    assert "scalar_7" in report.published

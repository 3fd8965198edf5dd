import random
from fractions import Fraction

import pytest

from asm_qdet import detkernel
from asm_qdet.core.exceptions import EngineDisagreement, GuardExceeded, InvalidInstance
from asm_qdet.detkernel import (
    DetInstance,
    a_coeff,
    bareiss_det,
    build_matrix,
    cofactor_det,
    condensation_check,
    d,
    deletion_identities_check,
    desnanot_jacobi_check,
    determinant,
    divisibility_check,
    engines_suite,
    random_xpoly_matrix,
    specialization_check,
    transposition_check,
    transposition_suite,
)
from asm_qdet.exactalg import QLaurent, X, XPoly


def test_a_coeff():
    assert a_coeff(0).is_zero()
    assert a_coeff(1) == QLaurent.const(1)
    assert a_coeff(2) == QLaurent(0, (1, -1))
    assert a_coeff(3) == QLaurent(0, (1, -1, 1))
    assert a_coeff(-1) == QLaurent.monomial(-1)
    assert a_coeff(-2) == QLaurent(-2, (-1, 1))


def test_small_determinants():
    assert d(0, 5) == QLaurent.const(1)
    assert d(1, 4) == a_coeff(4)
    assert d(2, 1) == QLaurent.const(X + 2)
    assert d(2, 0) == QLaurent.monomial(-1, -(X + 1))
    assert d(2, 2) == QLaurent(0, (1, -(X + 3), 1))


def test_d_3_1():
    expected = QLaurent(-1, (X + 1, 2 * X + 8, X + 1)) * (X + 2).scale(Fraction(1, 2))
    assert d(3, 1) == expected
    assert d(3, 1).eval_x(0) == QLaurent(-1, (1, 8, 1))


@pytest.mark.parametrize("n", [1, 3, 5])
def test_odd_size_vanishes_at_k_zero(n: int):
    assert d(n, 0).is_zero()


def test_build_matrix_entries():
    m = build_matrix(DetInstance(3, 1))
    assert m.entry(1, 1) == a_coeff(1)
    assert m.entry(2, 1) == QLaurent()
    assert m.entry(2, 3) == a_coeff(2) * XPoly((6, 5, 1)).scale(Fraction(1, 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("k", [-2, 0, 1, 3])
def test_engines_agree_on_the_family(n: int, k: int):
    m = build_matrix(DetInstance(n, k))
    assert cofactor_det(m) == determinant(m)


def test_bareiss_on_plain_polynomials():
    m = random_xpoly_matrix(random.Random(3), 3, degree=1)
    assert bareiss_det(m) == cofactor_det(m)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("k", [-2, -1, 0, 1, 2, 3])
def test_deletion_identities(n: int, k: int):
    results = deletion_identities_check(DetInstance(n, k))
    assert len(results) == 5
    assert all(r.passed for r in results), [r.identity for r in results if not r.passed]


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("k", [-1, 0, 1, 2])
def test_condensation(n: int, k: int):
    assert condensation_check(DetInstance(n, k)).passed


@pytest.mark.parametrize(("n", "k"), [(1, 2), (2, 3), (3, 2), (4, 1)])
def test_transposition(n: int, k: int):
    assert transposition_check(n, k).passed


def test_transposition_suite():
    report = transposition_suite(5)
    assert report.passed
    assert len(report.checks) == 25


@pytest.mark.parametrize(("n", "k"), [(3, 1), (4, 1), (4, 2), (5, 1), (5, 3)])
def test_divisibility(n: int, k: int):
    assert divisibility_check(n, k).passed


def test_desnanot_jacobi():
    rng = random.Random(11)
    for n in (2, 3, 4):
        assert desnanot_jacobi_check(random_xpoly_matrix(rng, n))
    assert desnanot_jacobi_check(build_matrix(DetInstance(4, 1)))


@pytest.mark.parametrize("order", [None, 3, 4, 6])
def test_specialization(order: int | None):
    assert specialization_check(3, 1, Fraction(1, 2), order=order).passed


def test_engines_suite():
    report = engines_suite(3, samples=8, seed=7)
    assert report.passed
    assert {c.identity for c in report.checks} == {
        "engines:family",
        "engines:random",
        "specialization",
    }


def test_invalid_instances():
    with pytest.raises(InvalidInstance):
        DetInstance(0, 1)
    with pytest.raises(InvalidInstance):
        deletion_identities_check(DetInstance(1, 1))
    with pytest.raises(InvalidInstance):
        condensation_check(DetInstance(2, 1))


def test_guards():
    with pytest.raises(GuardExceeded) as exc_info:
        d(13, 1)
    assert exc_info.value.exit_code == 2
    big = random_xpoly_matrix(random.Random(0), 7, degree=0)
    with pytest.raises(GuardExceeded):
        cofactor_det(big)


def test_engine_disagreement_is_fatal(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr(detkernel, "cofactor_det", lambda m: m.ring.zero())
    with pytest.raises(EngineDisagreement):
        determinant(build_matrix(DetInstance(2, 1)))


def test_cross_check_can_be_disabled(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr(detkernel.settings, "CROSS_CHECK_ENGINES", False)
    monkeypatch.setattr(detkernel, "cofactor_det", lambda m: m.ring.zero())
    assert determinant(build_matrix(DetInstance(2, 1))) == QLaurent.const(X + 2)

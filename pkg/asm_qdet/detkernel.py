"""
The binomial determinants d_{n,k}(x, q) = det(binom(x+i+j-2, j-1) * a_{j-i+k}), 1 <= i, j <= n,
two independent determinant engines, and the row/column deletion identities they satisfy.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import cast

import structlog

from asm_qdet.core.cache import DeterminantCache
from asm_qdet.core.config import settings
from asm_qdet.core.exceptions import (
    EngineDisagreement,
    GuardExceeded,
    InexactDivision,
    InvalidInstance,
)
from asm_qdet.core.report import CheckResult, SuiteReport, check
from asm_qdet.exactalg import (
    QQ_X,
    QQ_X_Q,
    CycloElem,
    CycloRing,
    QLaurent,
    RingElement,
    RingMatrix,
    XPoly,
    xpoly_binomial,
)
from asm_qdet.exactalg.ring import QLaurentRing
from asm_qdet.exactalg.xpoly import Scalar, linear_product

logger: structlog.stdlib.BoundLogger = structlog.get_logger()

cache_ = DeterminantCache(settings.CACHE_DIR)


@dataclass(frozen=True)
class DetInstance:
    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidInstance(detail=f"matrix size must be positive, got n={self.n}")


@cache
def a_coeff(j: int) -> QLaurent:
    """(1 - (-q)^j) / (1 + q) as a Laurent polynomial."""
    if j > 0:
        return QLaurent(0, ((-1) ** i for i in range(j)))
    if j == 0:
        return QLaurent()
    return QLaurent(j, (-1 if e % 2 == 0 else 1 for e in range(j, 0)))


@cache
def _binom_entry(i: int, j: int) -> XPoly:
    return xpoly_binomial(i + j - 2, j - 1)


def build_matrix(inst: DetInstance) -> RingMatrix[QLaurent]:
    return RingMatrix.build(
        QQ_X_Q, inst.n, lambda i, j: a_coeff(j - i + inst.k) * _binom_entry(i, j)
    )


def cofactor_det[T: RingElement](m: RingMatrix[T]) -> T:
    """Laplace expansion along rows, memoized over the set of remaining columns."""
    n, ring = m.n, m.ring
    if n > settings.COFACTOR_MAX_N:
        raise GuardExceeded(what="cofactor expansion", n=n, limit=settings.COFACTOR_MAX_N)
    memo: dict[int, T] = {}

    def expand(row: int, cols: int) -> T:
        if row == n:
            return ring.one()
        if cols in memo:
            return memo[cols]
        total = ring.zero()
        pos = 0
        for j in range(n):
            if not cols & (1 << j):
                continue
            entry = m.rows[row][j]
            if not ring.is_zero(entry):
                term = entry * expand(row + 1, cols & ~(1 << j))
                total = total + term if pos % 2 == 0 else total - term
            pos += 1
        memo[cols] = total
        return total

    return expand(0, (1 << n) - 1)


def bareiss_det[T: RingElement](m: RingMatrix[T]) -> T:
    """Fraction-free elimination with row pivoting; every division is exact in the ring."""
    n, ring = m.n, m.ring
    if n == 0:
        return ring.one()
    a = [list(row) for row in m.rows]
    sign = 1
    prev: T | None = None
    for k in range(n - 1):
        if ring.is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not ring.is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                elt = pivot * a[i][j] - a[i][k] * a[k][j]
                if prev is not None:
                    try:
                        elt = ring.exact_divide(elt, prev)
                    except InexactDivision:
                        logger.error(
                            "Bareiss division not exact", ring=ring.name, step=k, divisor=prev
                        )
                        raise
                a[i][j] = elt
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def _integral_rescaling(
    m: RingMatrix[QLaurent],
) -> tuple[RingMatrix[QLaurent], int, int]:
    """
    Scale column j by the lcm of its coefficient denominators and row i by q^-lo_i, so every
    entry lies in Z[x][q]. Returns the scaled matrix, the column scale product and the q shift.
    """
    n = m.n
    col_scale = [
        math.lcm(
            1,
            *(
                Fraction(c).denominator
                for i in range(n)
                for p in m.rows[i][j].coeffs
                for c in p.coeffs
            ),
        )
        for j in range(n)
    ]
    row_shift = [min((v.lo for v in row if v), default=0) for row in m.rows]
    scaled = RingMatrix.build(
        m.ring,
        n,
        lambda i, j: (m.entry(i, j) * col_scale[j - 1]).shift_q(-row_shift[i - 1]),
    )
    return scaled, math.prod(col_scale), sum(row_shift)


def _bareiss_qlaurent(m: RingMatrix[QLaurent]) -> QLaurent:
    scaled, col_product, q_shift = _integral_rescaling(m)
    return bareiss_det(scaled).exact_divide(col_product).shift_q(q_shift)


def _bareiss[T: RingElement](m: RingMatrix[T]) -> T:
    if isinstance(m.ring, QLaurentRing):
        return cast(T, _bareiss_qlaurent(cast(RingMatrix[QLaurent], m)))
    return bareiss_det(m)


def engines_agree[T: RingElement](m: RingMatrix[T]) -> bool:
    return cofactor_det(m) == _bareiss(m)


def determinant[T: RingElement](m: RingMatrix[T]) -> T:
    """Exact determinant; both engines run and must agree while the cofactor engine is allowed."""
    value = _bareiss(m)
    if settings.CROSS_CHECK_ENGINES and m.n <= settings.COFACTOR_MAX_N:
        reference = cofactor_det(m)
        if reference != value:
            raise EngineDisagreement(n=m.n, detail=f"cofactor {reference} != bareiss {value}")
        logger.debug("Determinant engines agree", n=m.n, ring=m.ring.name)
    return value


def d(n: int, k: int) -> QLaurent:
    """Symbolic d_{n,k}(x, q), memoized by (n, k); the empty determinant d_{0,k} is 1."""
    if n == 0:
        return QLaurent.const(1)
    inst = DetInstance(n, k)
    if n > settings.DET_HARD_MAX_N:
        raise GuardExceeded(what="symbolic determinant", n=n, limit=settings.DET_HARD_MAX_N)
    return cache_.get_or_compute((n, k), lambda: determinant(build_matrix(inst)))


def d_at_root(n: int, k: int, order: int, power: int = 1) -> CycloElem:
    return d(n, k).substitute_root(order, power)


def _difference_witness(lhs: object, rhs: object) -> str:
    if isinstance(lhs, QLaurent) and isinstance(rhs, QLaurent):
        return f"lhs - rhs = {lhs - rhs}"
    return f"lhs = {lhs}, rhs = {rhs}"


def deletion_identities_check(inst: DetInstance) -> list[CheckResult]:
    """
    Minors of D_{n,k} against shifted smaller determinants:

    rows/cols deleted    value
    1 / 1                binom(x+n, n-1) d_{n-1,k}(x+2)
    n / n                d_{n-1,k}(x)
    {1,n} / {1,n}        binom(x+n-1, n-2) d_{n-2,k}(x+2)
    1 / n                d_{n-1,k-1}(x+1)
    n / 1                binom(x+n-1, n-1) d_{n-1,k+1}(x+1)
    """
    n, k = inst.n, inst.k
    if n < 2:
        raise InvalidInstance(detail=f"deletion identities need n >= 2, got n={n}")
    m = build_matrix(inst)
    cases: list[tuple[str, set[int], set[int], QLaurent]] = [
        ("deletion:1/1", {1}, {1}, d(n - 1, k).shift_x(2) * xpoly_binomial(n, n - 1)),
        ("deletion:n/n", {n}, {n}, d(n - 1, k)),
        (
            "deletion:1n/1n",
            {1, n},
            {1, n},
            d(n - 2, k).shift_x(2) * xpoly_binomial(n - 1, n - 2),
        ),
        ("deletion:1/n", {1}, {n}, d(n - 1, k - 1).shift_x(1)),
        ("deletion:n/1", {n}, {1}, d(n - 1, k + 1).shift_x(1) * xpoly_binomial(n - 1, n - 1)),
    ]
    results: list[CheckResult] = []
    for identity, rows, cols, expected in cases:
        minor = determinant(m.minor(rows, cols))
        results.append(
            check(
                identity,
                minor == expected,
                n=n,
                k=k,
                witness=_difference_witness(minor, expected),
            )
        )
    return results


def condensation_sides(n: int, k: int) -> tuple[QLaurent, QLaurent]:
    lhs = d(n, k) * d(n - 2, k).shift_x(2) * (n - 1)
    rhs = d(n - 1, k) * d(n - 1, k).shift_x(2) * XPoly.linear(n) - d(n - 1, k + 1).shift_x(
        1
    ) * d(n - 1, k - 1).shift_x(1) * XPoly.linear(1)
    return lhs, rhs


def condensation_check(inst: DetInstance) -> CheckResult:
    if inst.n < 3:
        raise InvalidInstance(detail=f"condensation needs n >= 3, got n={inst.n}")
    lhs, rhs = condensation_sides(inst.n, inst.k)
    return check(
        "condensation",
        lhs == rhs,
        n=inst.n,
        k=inst.k,
        witness=_difference_witness(lhs, rhs),
    )


def desnanot_jacobi_check[T: RingElement](m: RingMatrix[T]) -> bool:
    n = m.n
    if n < 2:
        raise InvalidInstance(detail=f"Desnanot-Jacobi needs n >= 2, got n={n}")
    lhs = determinant(m) * determinant(m.minor({1, n}, {1, n}))
    rhs = determinant(m.minor({1}, {1})) * determinant(m.minor({n}, {n})) - determinant(
        m.minor({1}, {n})
    ) * determinant(m.minor({n}, {1}))
    return lhs == rhs


def transposition_check(n: int, k: int) -> CheckResult:
    """d_{n,-k} = (-1)^{n(k-1)} q^{-nk} d_{n,k}"""
    lhs = d(n, -k)
    rhs = d(n, k).shift_q(-n * k) * (1 if n * (k - 1) % 2 == 0 else -1)
    return check("transposition", lhs == rhs, n=n, k=k, witness=_difference_witness(lhs, rhs))


def divisor_polynomial(n: int, k: int) -> XPoly:
    """prod_{l=0}^{floor((n-k-1)/2)} (x + k + 2l + 1)"""
    return linear_product(k + 2 * l + 1 for l in range((n - k - 1) // 2 + 1))


def divisibility_check(n: int, k: int) -> CheckResult:
    divisor = divisor_polynomial(n, k)
    try:
        d(n, k).exact_divide(divisor)
    except InexactDivision as exc:
        return check("divisibility", False, n=n, k=k, witness=exc.remainder, detail=str(divisor))
    return check("divisibility", True, n=n, k=k, detail=str(divisor))


def specialization_check(n: int, k: int, r: Scalar, order: int | None = None) -> CheckResult:
    """Specializing the symbolic value agrees with the determinant of the specialized matrix."""
    m = build_matrix(DetInstance(n, k))
    symbolic = d(n, k).eval_x(r)
    direct = determinant(m.map(QQ_X_Q, lambda v: v.eval_x(r)))
    ok = symbolic == direct
    if order is not None:
        ring = CycloRing(order)
        ok = ok and d_at_root(n, k, order) == determinant(
            m.map(ring, lambda v: v.substitute_root(order))
        )
    return check("specialization", ok, n=n, k=k, detail={"x": str(r), "order": order})


def random_xpoly(rng: random.Random, degree: int, bound: int = 3) -> XPoly:
    return XPoly(rng.randint(-bound, bound) for _ in range(degree + 1))


def random_xpoly_matrix(rng: random.Random, n: int, degree: int = 2) -> RingMatrix[XPoly]:
    return RingMatrix.build(QQ_X, n, lambda i, j: random_xpoly(rng, degree))


def random_qlaurent_matrix(rng: random.Random, n: int) -> RingMatrix[QLaurent]:
    return RingMatrix.build(
        QQ_X_Q,
        n,
        lambda i, j: QLaurent(rng.randint(-2, 1), (random_xpoly(rng, 1) for _ in range(3))),
    )


def _k_range(k_max: int) -> range:
    return range(-k_max, k_max + 1)


def deletion_suite(n_max: int, k_max: int = 3) -> SuiteReport:
    checks: list[CheckResult] = []
    for n in range(2, n_max + 1):
        for k in _k_range(k_max):
            checks.extend(deletion_identities_check(DetInstance(n, k)))
    return SuiteReport(suite="deletion", checks=checks)


def condensation_suite(n_max: int, k_max: int = 3) -> SuiteReport:
    checks = [
        condensation_check(DetInstance(n, k))
        for n in range(3, n_max + 1)
        for k in _k_range(k_max)
    ]
    return SuiteReport(suite="condensation", checks=checks)


def transposition_suite(n_max: int, k_max: int = 4) -> SuiteReport:
    checks = [transposition_check(n, k) for n in range(1, n_max + 1) for k in range(k_max + 1)]
    return SuiteReport(suite="transposition", checks=checks)


def divisibility_suite(n_max: int) -> SuiteReport:
    checks = [divisibility_check(n, k) for n in range(1, n_max + 1) for k in range(1, n + 1)]
    return SuiteReport(suite="divisibility", checks=checks)


def engines_suite(n_max: int, samples: int = 100, seed: int | None = None) -> SuiteReport:
    """Cofactor vs Bareiss on the determinant family and on random polynomial matrices."""
    rng = random.Random(settings.RANDOM_SEED if seed is None else seed)
    limit = min(n_max, settings.COFACTOR_MAX_N)
    checks: list[CheckResult] = []
    for n in range(1, limit + 1):
        for k in range(-2, 4):
            m = build_matrix(DetInstance(n, k))
            checks.append(check("engines:family", engines_agree(m), n=n, k=k))
    for sample in range(samples):
        n = rng.randint(1, min(limit, 5))
        if sample % 2:
            sample_matrix = random_xpoly_matrix(rng, n)
            agree = engines_agree(sample_matrix)
        else:
            sample_matrix = random_qlaurent_matrix(rng, n)
            agree = engines_agree(sample_matrix)
        checks.append(check("engines:random", agree, n=n, k=sample, witness=sample_matrix))
    for n in range(1, limit + 1):
        k = rng.randint(-2, 3)
        r = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        checks.append(specialization_check(n, k, r, order=rng.choice((3, 4, 6))))
    return SuiteReport(suite="engines", checks=checks)


def desnanot_jacobi_suite(n_max: int, samples: int = 20, seed: int | None = None) -> SuiteReport:
    rng = random.Random(settings.RANDOM_SEED if seed is None else seed)
    checks: list[CheckResult] = []
    for sample in range(samples):
        n = rng.randint(2, max(2, min(n_max, 5)))
        m = random_xpoly_matrix(rng, n)
        checks.append(
            check("desnanot-jacobi:random", desnanot_jacobi_check(m), n=n, k=sample, witness=m)
        )
    for n in range(2, n_max + 1):
        for k in range(-1, 3):
            m = build_matrix(DetInstance(n, k))
            checks.append(check("desnanot-jacobi:family", desnanot_jacobi_check(m), n=n, k=k))
    return SuiteReport(suite="desnanot-jacobi", checks=checks)


"""
Structural factorization d_{n,k} = q^{c_q(n,k)} p_{n,k}(x) f_{n,k}(x, q) and the identities of
the polynomial part f.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import structlog

from asm_qdet.core.exceptions import (
    FFactorizationViolation,
    InexactDivision,
    StructuralViolation,
)
from asm_qdet.core.report import CheckResult, SuiteReport, check, observe
from asm_qdet.detkernel import d
from asm_qdet.exactalg import QLaurent, XPoly, qlaurent_to_Qpoly
from asm_qdet.exactalg.xpoly import Scalar, linear_product
from asm_qdet.oracle import enumeration_in_q

logger: structlog.stdlib.BoundLogger = structlog.get_logger()


def c_exponent(n: int, k: int) -> int:
    if k > 0 and n <= k:
        return 0
    if k < 0 and n <= -k:
        return n * k
    return -sum(i // 2 for i in range(1, n - k + 1))


def p_scalar(n: int) -> Fraction:
    """prod_{i=1}^{n-1} floor(i/2)! / i!"""
    return Fraction(
        math.prod(math.factorial(i // 2) for i in range(1, n)),
        math.prod(math.factorial(i) for i in range(1, n)),
    )


def p_poly(n: int, k: int) -> XPoly:
    a = abs(k)
    return linear_product(a + 2 * i + 1 for i in range((n - a - 1) // 2 + 1)).scale(p_scalar(n))


@dataclass(frozen=True)
class Factorization:
    n: int
    k: int
    cq: int
    p: XPoly
    f: QLaurent
    degenerate: bool = False

    def recompose(self) -> QLaurent:
        return (self.f * self.p).shift_q(self.cq)


def factorize(n: int, k: int) -> Factorization:
    value = d(n, k)
    cq = c_exponent(n, k)
    p = p_poly(n, k)
    if value.is_zero():
        return Factorization(n, k, cq, p, QLaurent(), degenerate=True)
    try:
        f = value.shift_q(-cq).exact_divide(p)
    except InexactDivision as exc:
        detail = f"p does not divide d: {exc.remainder}"
        raise StructuralViolation(n=n, k=k, detail=detail) from exc
    if not f.is_polynomial():
        raise StructuralViolation(n=n, k=k, detail=f"negative power of q left in f: q^{f.lo}")
    return Factorization(n, k, cq, p, f)


@cache
def f(n: int, k: int) -> QLaurent:
    """f_{n,k}; f_{0,k} = 1 and degenerate (zero) determinants give 0."""
    if n == 0:
        return QLaurent.const(1)
    return factorize(n, k).f


def structural_suite(n_max: int, k_max: int = 3) -> SuiteReport:
    checks: list[CheckResult] = []
    for n in range(1, n_max + 1):
        for k in range(-k_max, k_max + 1):
            try:
                fact = factorize(n, k)
            except StructuralViolation as exc:
                checks.append(check("structural", False, n=n, k=k, witness=exc.detail))
                continue
            exact = fact.recompose() == d(n, k)
            checks.append(
                check(
                    "structural",
                    exact,
                    n=n,
                    k=k,
                    witness=f"recomposed {fact.recompose()}",
                    detail={"cq": fact.cq, "p": str(fact.p), "degenerate": fact.degenerate},
                )
            )
    return SuiteReport(suite="structural", checks=checks)


def _sign(e: int) -> int:
    return 1 if e % 2 == 0 else -1


def _long_recursion_sides(n: int, k: int) -> tuple[QLaurent, QLaurent]:
    """Division-free form of the recursion expressing f_{n,k} through sizes n-1 and n-2."""
    lhs = f(n, k) * f(n - 2, k).shift_x(2)
    if n % 2 == 1:
        lhs = lhs * Fraction(n - 1, 2)
    # Iverson brackets over N = {0, 1, 2, ...}
    in_odd_class = n >= k + 1 and (n - k - 1) % 2 == 0
    in_even_class = n >= k + 2 and (n - k - 2) % 2 == 0
    first = f(n - 1, k) * f(n - 1, k).shift_x(2)
    if not in_odd_class:
        first = first * XPoly.linear(n)
    if in_even_class:
        first = first.shift_q(1) * XPoly.linear(n + 1)
    second = f(n - 1, k - 1).shift_x(1) * f(n - 1, k + 1).shift_x(1) * XPoly.linear(1)
    return lhs, first - second


def f_recursion_suite(n_max: int, k_max: int = 3) -> SuiteReport:
    checks: list[CheckResult] = []
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            lhs, rhs = f(n, -k), f(n, k) * _sign(n * (k + 1))
            checks.append(check("f:quasisymmetry", lhs == rhs, n=n, k=k, witness=lhs - rhs))
    for m in range(1, n_max // 2 + 1):
        lhs = f(2 * m, 0) * f(2 * m - 2, 0).shift_x(2)
        rhs = -(f(2 * m - 1, 1).shift_x(1) ** 2)
        checks.append(check("f:k0-first", lhs == rhs, n=2 * m, k=0, witness=lhs - rhs))
        lhs = f(2 * m, 0) * f(2 * m, 0).shift_x(2)
        rhs = f(2 * m, 1).shift_x(1) ** 2
        checks.append(check("f:k0-second", lhs == rhs, n=2 * m, k=0, witness=lhs - rhs))
    for n in range(2, n_max + 1):
        for k in range(1, k_max + 1):
            lhs, rhs = _long_recursion_sides(n, k)
            checks.append(check("f:recursion", lhs == rhs, n=n, k=k, witness=lhs - rhs))
    return SuiteReport(suite="recursions", checks=checks)


def F_extract(n_max: int) -> list[QLaurent]:
    """
    F_1 .. F_M, M = ceil(n_max / 2), peeled from f_{2m-1,1}(x) = F_m(x) F_{m-1}(x+2) with
    F_0 = F_1 = f_{1,1}.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    factors = [QLaurent.const(1), f(1, 1)]
    for m in range(2, (n_max + 1) // 2 + 1):
        try:
            factors.append(f(2 * m - 1, 1).exact_divide(factors[m - 1].shift_x(2)))
        except InexactDivision as exc:
            raise FFactorizationViolation(m=m, detail=exc.remainder) from exc
    return factors[1:]


def _F(factors: list[QLaurent], m: int) -> QLaurent:
    return QLaurent.const(1) if m == 0 else factors[m - 1]


def f_extract_suite(n_max: int) -> SuiteReport:
    try:
        factors = F_extract(n_max)
    except FFactorizationViolation as exc:
        return SuiteReport(
            suite="f-extract", checks=[check("F:extract", False, witness=exc.detail)]
        )
    checks: list[CheckResult] = []
    for m in range(1, n_max // 2 + 1):
        Fm = _F(factors, m)
        lhs = f(2 * m, 1)
        rhs = Fm * Fm.shift_x(2)
        checks.append(check("F:even-k1", lhs == rhs, n=2 * m, k=1, witness=lhs - rhs))
        lhs = f(2 * m, 0)
        rhs = Fm.shift_x(1) ** 2 * _sign(m)
        checks.append(check("F:even-k0", lhs == rhs, n=2 * m, k=0, witness=lhs - rhs))
    return SuiteReport(
        suite="f-extract",
        checks=checks,
        published={f"F_{m}": str(v) for m, v in enumerate(factors, start=1)},
    )


def leading_coeff(v: QLaurent) -> Scalar:
    """Coefficient of the largest monomial x^a q^b ordered by b first, then a."""
    if v.is_zero():
        return 0
    return v.coeffs[-1].leading


def leading_coeff_check(n_max: int) -> SuiteReport:
    checks = [
        check("leading-coeff", (lc := leading_coeff(f(n, 1))) == 1, n=n, k=1, witness=lc)
        for n in range(1, n_max + 1)
    ]
    return SuiteReport(suite="leading-coeff", checks=checks)


def integrality_observation(n_max: int, k_max: int = 3) -> SuiteReport:
    """Integer coefficients and a unit leading coefficient of f_{n,k}, recorded only."""
    checks: list[CheckResult] = []
    for n in range(1, n_max + 1):
        for k in range(-k_max, k_max + 1):
            value = f(n, k)
            if value.is_zero():
                continue
            integral = all(c.is_integral() for c in value.coeffs)
            lc = leading_coeff(value)
            checks.append(
                observe(
                    "f:integrality",
                    integral and lc in (1, -1),
                    n=n,
                    k=k,
                    witness=f"leading {lc}",
                    detail={"integral": integral, "leading": str(lc)},
                )
            )
    return SuiteReport(suite="integrality", checks=checks)


def maximality_check(n: int, k: int) -> CheckResult:
    """No (x + c), |c| <= 2n + 2, divides f_{n,k}."""
    value = f(n, k)
    bound = 2 * n + 2
    hits = [] if value.is_zero() else [
        c for c in range(-bound, bound + 1) if value.eval_x(-c).is_zero()
    ]
    return check("maximality", not hits, n=n, k=k, witness=f"divisible by x+c for c in {hits}")


def maximality_suite(n_max: int, k_max: int = 3) -> SuiteReport:
    checks = [
        maximality_check(n, k)
        for n in range(1, n_max + 1)
        for k in range(0, k_max + 1)
        if not f(n, k).is_zero()
    ]
    return SuiteReport(suite="maximality", checks=checks)


def k2_exploration(n_max: int) -> SuiteReport:
    """
    Whether (q(x+2n+1)(x+2n+2) F_n(x) F_n(x+4) - n F_{n+1}(x) F_{n-1}(x+4)) / F_n(x+2) is a
    polynomial. Exploratory, never a hard failure.
    """
    factors = F_extract(2 * n_max + 1)
    checks: list[CheckResult] = []
    published: dict[str, str] = {}
    for n in range(1, n_max + 1):
        Fn = _F(factors, n)
        first = Fn * Fn.shift_x(4) * XPoly.linear(2 * n + 1) * XPoly.linear(2 * n + 2)
        second = _F(factors, n + 1) * _F(factors, n - 1).shift_x(4) * n
        numerator = first.shift_q(1) - second
        try:
            quotient = numerator.exact_divide(Fn.shift_x(2))
        except InexactDivision as exc:
            checks.append(observe("k2:polynomial", False, n=n, k=2, witness=exc.remainder))
            continue
        published[f"n={n}"] = str(quotient)
        checks.append(observe("k2:polynomial", quotient.is_polynomial(), n=n, k=2))
    return SuiteReport(suite="k2-exploration", checks=checks, published=published)


def _pochhammer_int(a: int, j: int) -> int:
    return math.prod(range(a, a + j))


def p_tilde(size: int, factors: list[QLaurent]) -> QLaurent:
    """The Laurent polynomials whose products give A_n(Q), built from F_m at x = 0 and x = 2."""
    m, odd = divmod(size, 2)
    shift = -math.comb(m, 2)
    if odd:
        scalar = Fraction(1, 2 * math.prod(_pochhammer_int(i, i) for i in range(1, m + 1)))
        value = _F(factors, m).eval_x(2)
    else:
        scalar = Fraction(2, math.prod(_pochhammer_int(i + 1, i) for i in range(1, m)))
        value = _F(factors, m).eval_x(0)
    return (value * scalar).shift_q(shift)


def expected_product_scalar(size: int) -> int:
    """A_N(Q) / (printed product): 2^(n-1) n! for N = 2n and 2^n n! for N = 2n + 1."""
    m, odd = divmod(size, 2)
    if odd:
        return 2**m * math.factorial(m)
    return 2 ** (m - 1) * math.factorial(m)


def q_product_corollary(n_max: int) -> SuiteReport:
    """
    For ASM sizes N = 1 .. 2 n_max + 1: every p-tilde is palindromic and a polynomial in
    Q = 2 + q + 1/q, and A_N(Q) is a constant multiple of the product formula.
    """
    max_size = 2 * n_max + 1
    factors = F_extract(2 * (n_max + 1) - 1)
    checks: list[CheckResult] = []
    published: dict[str, object] = {}
    tildes = {size: p_tilde(size, factors) for size in range(1, max_size + 2)}
    for size, value in tildes.items():
        palindromic = value.is_palindromic()
        checks.append(check("q-product:palindromic", palindromic, n=size, witness=value))
        if palindromic:
            published[f"p_tilde_{size}(Q)"] = [str(c) for c in qlaurent_to_Qpoly(value)]
    for size in range(1, max_size + 1):
        m, odd = divmod(size, 2)
        if odd:
            product = tildes[2 * m + 1] * tildes[2 * m + 2]
        else:
            product = tildes[2 * m] * tildes[2 * m + 1] * 2
        enumeration = enumeration_in_q(size)
        try:
            ratio = enumeration.exact_divide(product)
        except (InexactDivision, ZeroDivisionError) as exc:
            checks.append(check("q-product:proportional", False, n=size, witness=str(exc)))
            continue
        constant = ratio.lo == 0 and len(ratio.coeffs) == 1 and ratio.coeffs[0].is_constant()
        checks.append(check("q-product:proportional", constant, n=size, witness=ratio))
        if not constant:
            continue
        scalar = ratio.coeffs[0].constant()
        published[f"scalar_{size}"] = str(scalar)
        checks.append(observe("q-product:as-printed", scalar == 1, n=size, witness=scalar))
        checks.append(
            observe(
                "q-product:scalar-formula",
                scalar == expected_product_scalar(size),
                n=size,
                witness=scalar,
                detail={"expected": expected_product_scalar(size)},
            )
        )
    return SuiteReport(suite="q-product", checks=checks, published=published)

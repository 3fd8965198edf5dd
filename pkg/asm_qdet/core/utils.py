import math
from fractions import Fraction

from asm_qdet.core.exceptions import ErrorCode, NonIntegralExponent


def double_factorial(m: int) -> int:
    """(2m-1)!! = 1*3*...*(2m-1); 1 for m <= 0."""
    return math.prod(2 * j - 1 for j in range(1, m + 1))


def integral_quotient(num: int, den: int, *, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise NonIntegralExponent(
            code=ErrorCode.NON_INTEGRAL_EXPONENT,
            detail=f"{what}: {num}/{den} is not an integer",
        )
    return q


def exact_log(value: Fraction | int, base: int) -> int | None:
    """Integer e with base**e == value, or None."""
    value = Fraction(value)
    if value <= 0:
        return None
    e = 0
    while value.denominator == 1 and value.numerator % base == 0 and value != 1:
        value /= base
        e += 1
    while value.numerator == 1 and value.denominator % base == 0:
        value *= base
        e -= 1
    return e if value == 1 else None

from dataclasses import dataclass
from enum import StrEnum
from typing import Literal, TypedDict

from pydantic import BaseModel, Field, create_model

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class ErrorCode(StrEnum):
    USAGE_ERROR = "USAGE_ERROR"
    GUARD_EXCEEDED = "GUARD_EXCEEDED"
    INEXACT_DIVISION = "INEXACT_DIVISION"
    UNSUPPORTED_ORDER = "UNSUPPORTED_ORDER"
    NOT_SYMMETRIC = "NOT_SYMMETRIC"
    STRUCTURAL_VIOLATION = "STRUCTURAL_VIOLATION"
    F_FACTORIZATION_VIOLATION = "F_FACTORIZATION_VIOLATION"
    RECURSION_VIOLATION = "RECURSION_VIOLATION"
    ENGINE_DISAGREEMENT = "ENGINE_DISAGREEMENT"
    INVALID_INSTANCE = "INVALID_INSTANCE"
    INVALID_ASM = "INVALID_ASM"
    INVALID_TRIANGLE = "INVALID_TRIANGLE"
    NON_INTEGRAL_EXPONENT = "NON_INTEGRAL_EXPONENT"
    CONFIG_VALIDATION_ERROR = "CONFIG_VALIDATION_ERROR"


@dataclass
class ConfigValidationError:
    error: Literal["Invalid Run Configuration"] = "Invalid Run Configuration"
    code: ErrorCode = ErrorCode.CONFIG_VALIDATION_ERROR
    detail: None = None


class JSONAsmQdetError(TypedDict):
    error: str
    code: str | None
    detail: str | None


class AsmQdetError(Exception):
    error: str
    code: ErrorCode | None
    detail: str | None
    exit_code: int

    def __init__(
        self,
        *,
        exit_code: int = EXIT_FAILURE,
        error: str | None = None,
        code: ErrorCode | None = None,
        detail: str | None = None,
    ):
        self.exit_code = exit_code
        self.error = error or type(self).__name__
        self.code = code
        self.detail = detail
        super().__init__(str(self))

    def __str__(self) -> str:
        return f"{self.error}[{self.exit_code}]: {self.detail}"

    def __repr__(self) -> str:
        class_name = self.__class__.__name__
        return f"{class_name}(error={self.error!r}, code={self.code!r}, detail={self.detail!r}, exit_code={self.exit_code!r})"

    def to_json_error_dict(self) -> JSONAsmQdetError:
        return {
            "error": self.error,
            "code": self.code,
            "detail": self.detail,
        }

    @classmethod
    def schema(cls) -> type[BaseModel]:
        """
        https://docs.pydantic.dev/latest/concepts/models/#dynamic-model-creation

        Pydantic model documenting the error JSON written to stderr
        """

        return create_model(
            cls.__name__,
            error=(str, Field()),
            code=(str | None, Field()),
            detail=(str | None, Field()),
        )


class UsageError(AsmQdetError):
    def __init__(
        self,
        *,
        exit_code: int = EXIT_USAGE,
        error: str | None = None,
        code: ErrorCode | None = ErrorCode.USAGE_ERROR,
        detail: str | None = None,
    ):
        super().__init__(exit_code=exit_code, error=error, code=code, detail=detail)


class GuardExceeded(UsageError):
    def __init__(self, *, what: str, n: int, limit: int):
        super().__init__(
            error="Size guard exceeded",
            code=ErrorCode.GUARD_EXCEEDED,
            detail=f"{what}: n={n} exceeds the guard {limit}",
        )
        self.n = n
        self.limit = limit


class InexactDivision(AsmQdetError):
    """Division with nonzero remainder; ``remainder`` is the canonical text of the remainder."""

    def __init__(self, *, remainder: str, dividend: str | None = None, divisor: str | None = None):
        super().__init__(
            error="Inexact division",
            code=ErrorCode.INEXACT_DIVISION,
            detail=f"remainder {remainder}",
        )
        self.remainder = remainder
        self.dividend = dividend
        self.divisor = divisor


class UnsupportedOrder(AsmQdetError):
    def __init__(self, *, order: int):
        super().__init__(
            exit_code=EXIT_USAGE,
            error="Unsupported cyclotomic order",
            code=ErrorCode.UNSUPPORTED_ORDER,
            detail=f"order {order} is not one of 1, 2, 3, 4, 6",
        )
        self.order = order


class NotSymmetric(AsmQdetError):
    def __init__(self, *, detail: str | None = None):
        super().__init__(
            error="not symmetric under q -> q^-1",
            code=ErrorCode.NOT_SYMMETRIC,
            detail=detail,
        )


class StructuralViolation(AsmQdetError):
    def __init__(self, *, n: int, k: int, detail: str | None = None):
        super().__init__(
            error="structural theorem violated",
            code=ErrorCode.STRUCTURAL_VIOLATION,
            detail=f"n={n}, k={k}: {detail}",
        )


class FFactorizationViolation(AsmQdetError):
    def __init__(self, *, m: int, detail: str | None = None):
        super().__init__(
            error="F-factorization violated",
            code=ErrorCode.F_FACTORIZATION_VIOLATION,
            detail=f"m={m}: {detail}",
        )


class RecursionViolation(AsmQdetError):
    def __init__(self, *, m: int, detail: str | None = None):
        super().__init__(
            error="Theorem q=1 recursion violated",
            code=ErrorCode.RECURSION_VIOLATION,
            detail=f"p_{m}: {detail}",
        )


class EngineDisagreement(AsmQdetError):
    def __init__(self, *, n: int, detail: str | None = None):
        super().__init__(
            error="Determinant engines disagree",
            code=ErrorCode.ENGINE_DISAGREEMENT,
            detail=f"size {n}: {detail}",
        )


class InvalidInstance(UsageError):
    def __init__(self, *, detail: str):
        super().__init__(error="Invalid instance", code=ErrorCode.INVALID_INSTANCE, detail=detail)


class InvalidAsm(AsmQdetError):
    def __init__(self, *, detail: str):
        super().__init__(
            error="Not an alternating sign matrix", code=ErrorCode.INVALID_ASM, detail=detail
        )


class InvalidTriangle(AsmQdetError):
    def __init__(self, *, detail: str):
        super().__init__(
            error="Not a monotone triangle", code=ErrorCode.INVALID_TRIANGLE, detail=detail
        )


class NonIntegralExponent(AsmQdetError):
    pass

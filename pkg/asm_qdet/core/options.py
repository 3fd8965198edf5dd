from enum import StrEnum


class Command(StrEnum):
    EVAL = "eval"
    TABLE = "table"
    VERIFY = "verify"
    ORACLE = "oracle"


class OutputFormat(StrEnum):
    PLAIN = "plain"
    JSON = "json"
    CSV = "csv"


class Suite(StrEnum):
    DELETION = "deletion"
    CONDENSATION = "condensation"
    STRUCTURAL = "structural"
    RECURSIONS = "recursions"
    CLOSEDFORMS = "closedforms"
    MAIN_THEOREM = "main-theorem"
    CONNECTION = "connection"
    APPENDIX = "appendix"
    COROLLARIES = "corollaries"
    TRANSPOSITION = "transposition"
    DIVISIBILITY = "divisibility"
    ENGINES = "engines"
    DESNANOT_JACOBI = "desnanot-jacobi"
    LEADING_COEFF = "leading-coeff"
    F_EXTRACT = "f-extract"
    Q_PRODUCT = "q-product"
    MAXIMALITY = "maximality"
    BRANCHES = "branches"


ALL_SUITES = "all"

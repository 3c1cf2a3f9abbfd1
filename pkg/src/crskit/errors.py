"""Exception hierarchy shared by all modules."""


class CRSError(Exception):
    """Base class for every error raised by crskit."""


class BackendMismatch(CRSError):
    pass


class ZeroPolynomial(CRSError):
    pass


class NotSquarefree(CRSError):
    pass


class NonRealCoefficients(CRSError):
    pass


class DegenerateLeadingCoefficient(CRSError):
    pass


class ShapeMismatch(CRSError):
    pass


class AmbientMismatch(CRSError):
    pass


class JacobiViolation(CRSError):
    def __init__(self, triple, residual):
        self.triple = triple
        self.residual = residual
        super().__init__(f"Jacobi identity fails on basis triple {triple}")


class AntisymmetryViolation(CRSError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"structure constants not antisymmetric on pair {pair}")


class NotSolvable(CRSError):
    pass


class NotNilpotent(CRSError):
    pass


class NotAnIdeal(CRSError):
    pass


class NotAbelian(CRSError):
    pass


class ActionNotCentral(CRSError):
    pass


class NotSubalgebra(CRSError):
    def __init__(self, pair=None, msg=None):
        self.pair = pair
        super().__init__(msg or f"g0 not closed under bracket; witness basis pair {pair}")


class NotGeneric(CRSError):
    def __init__(self, deficit):
        self.deficit = deficit
        super().__init__(f"g0 + J g0 misses {deficit} real dimensions of g")


class InvalidComplexStructure(CRSError):
    pass


class MNotIdeal(CRSError):
    pass


class SubtripleNotGeneric(CRSError):
    def __init__(self, dim_n, dim_sum):
        self.dim_n = dim_n
        self.dim_sum = dim_sum
        super().__init__(f"n0 + J n0 has real dimension {dim_sum}, nilradical has {dim_n}")


class MNotZero(CRSError):
    pass


class VerdictNotTrue(CRSError):
    pass


class CodimOutOfRange(CRSError):
    pass


class RootPatternViolation(CRSError):
    pass


class NotSalem(CRSError):
    pass


class NonImaginaryWeight(CRSError):
    pass


class UnknownExample(CRSError):
    pass


class BadParameters(CRSError):
    pass


class ParseError(CRSError):
    def __init__(self, msg, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc += f" line {line}"
        if column is not None:
            loc += f" column {column}"
        super().__init__(msg + (f" (at{loc})" if loc else ""))


class ValidationError(CRSError):
    def __init__(self, msg, location=None):
        self.location = location
        super().__init__(msg + (f" [{location}]" if location else ""))

"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 for parse errors, 3 for math-domain errors, 4 for exceeded caps.
"""


class PepError(Exception):
    exit_code = 3
    code = "error"


class ParseError(PepError):
    exit_code = 2
    code = "syntax_error"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UnknownSymbol(ParseError):
    code = "unknown_symbol"


class NonIntegerExponentCoefficient(ParseError):
    code = "non_integer_exponent_coefficient"


class MathDomainError(PepError):
    exit_code = 3
    code = "math_domain"


class CapExceeded(PepError):
    exit_code = 4
    code = "cap_exceeded"


# numfield
class NonMonic(MathDomainError):
    code = "non_monic"


class ReduciblePolynomial(MathDomainError):
    code = "reducible_polynomial"


class IntegralBasisRequired(MathDomainError):
    code = "integral_basis_required"


class DivisionByZero(MathDomainError, ZeroDivisionError):
    code = "division_by_zero"


class FieldMismatch(MathDomainError):
    code = "field_mismatch"


class AllZero(MathDomainError):
    code = "all_zero"


class NotIntegral(MathDomainError):
    code = "not_integral"


class DegreeTooLarge(CapExceeded):
    code = "degree_too_large"


class PrecisionCapExceeded(CapExceeded):
    code = "precision_cap_exceeded"


# exppoly
class DimensionMismatch(MathDomainError):
    code = "dimension_mismatch"


class TorsionBoundExceeded(MathDomainError):
    code = "torsion_bound_exceeded"


class TooManyTerms(CapExceeded):
    code = "too_many_terms"


# matrixk
class NotSemisimple(MathDomainError):
    code = "not_semisimple"


class EigenvaluesNotInField(MathDomainError):
    code = "eigenvalues_not_in_field"

    def __init__(self, message, factors=()):
        super().__init__(message)
        self.factors = list(factors)


class NotInvertible(MathDomainError):
    code = "not_invertible"


class NotUnipotent(MathDomainError):
    code = "not_unipotent"


# experiments
class BoxTooLarge(CapExceeded):
    code = "box_too_large"


class ExponentBoxTooLarge(CapExceeded):
    code = "exponent_box_too_large"


class NonMonotoneThresholds(MathDomainError):
    code = "non_monotone_thresholds"


class UnsupportedField(MathDomainError):
    code = "unsupported_field"

"""Exception hierarchy.

Every domain error carries a short machine-readable ``code`` which the CLI
emits as ``{"error": code, "detail": message}``.
"""


class TomographyError(ValueError):
    code = "domain_error"


class MalformedDirection(TomographyError):
    code = "malformed_direction"


class InvalidDirectionSet(TomographyError):
    code = "invalid_direction_set"


class IncompatibleLineSums(TomographyError):
    code = "incompatible_line_sums"


class InconsistentTotals(TomographyError):
    code = "inconsistent_totals"


class NotZeroSum(TomographyError):
    code = "not_zero_sum"


class DecompositionResidual(TomographyError):
    code = "decomposition_residual"


class IndexOutOfRange(TomographyError, IndexError):
    code = "index_out_of_range"


class NegativeRadicand(TomographyError):
    code = "no_binary_solution"


class NegativeSlack(TomographyError):
    code = "no_binary_solution"


class NonIntegerResult(TomographyError):
    code = "non_integer_result"


class DimensionTooLarge(TomographyError):
    code = "dimension_too_large"


class NotAdmissible(TomographyError):
    code = "not_admissible"


class DependentDirections(TomographyError):
    code = "dependent_directions"


class OverlappingRectangles(TomographyError):
    code = "overlapping_rectangles"


class EnumerationTruncated(UserWarning):
    """Issued when binary enumeration stops at its cap."""

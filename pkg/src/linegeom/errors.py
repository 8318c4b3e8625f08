"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map it onto the stable
exit-code contract (0 ok, 1 validation, 2 hypothesis violated, 3 dimension
too small, 4 budget/cap).
"""

from __future__ import annotations


class LineGeomError(Exception):
    exit_code = 1


# -- validation (exit 1) -----------------------------------------------------


class ValidationError(LineGeomError):
    exit_code = 1


class PairOnNoLine(ValidationError):
    def __init__(self, p: int, q: int):
        self.pair = (p, q)
        super().__init__(f"points {p} and {q} lie on no line")


class PairOnTwoLines(ValidationError):
    def __init__(self, p: int, q: int, l1: int, l2: int):
        self.pair = (p, q)
        self.lines = (l1, l2)
        super().__init__(f"points {p} and {q} lie on two lines: {l1} and {l2}")


class ShortLine(ValidationError):
    def __init__(self, line: int):
        self.line = line
        super().__init__(f"line {line} has fewer than 2 points")


class DuplicateLine(ValidationError):
    def __init__(self, l1: int, l2: int):
        self.lines = (l1, l2)
        super().__init__(f"lines {l1} and {l2} are identical")


class UnknownPoint(ValidationError):
    def __init__(self, p):
        self.point = p
        super().__init__(f"unknown point {p!r}")


class UnknownLine(ValidationError):
    def __init__(self, line):
        self.line = line
        super().__init__(f"unknown line {line!r}")


class NotClosed(ValidationError):
    pass


class PreconditionViolated(ValidationError):
    pass


class FormatError(ValidationError):
    pass


class UnsupportedOrder(ValidationError):
    def __init__(self, q):
        self.q = q
        super().__init__(f"unsupported order {q}: only prime fields are supported")


class WrongProvenance(ValidationError):
    pass


class NotThreeDimensional(ValidationError):
    pass


class NotGeneralizedProjective(ValidationError):
    pass


class NotRelatedSet(ValidationError):
    pass


class NotMaximal(ValidationError):
    pass


class NotBijective(ValidationError):
    pass


class NotCollineation(ValidationError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NotCorrelation(ValidationError):
    pass


class NotStarPreserving(ValidationError):
    pass


class NotCoplanarPreserving(ValidationError):
    pass


# -- hypothesis / dimension (exit 2, 3) --------------------------------------


class HypothesisViolated(LineGeomError):
    """The line map does not preserve the related relation in both directions."""

    exit_code = 2

    def __init__(self, witness: tuple[int, int]):
        self.witness = witness
        a, b = witness
        super().__init__(f"adjacency not preserved for line pair ({a}, {b})")


class DimensionTooSmall(LineGeomError):
    exit_code = 3

    def __init__(self, which: str, dim: int):
        self.which = which
        self.dimension = dim
        super().__init__(f"{which} space has dimension {dim} < 3")


# -- budgets and caps (exit 4) -----------------------------------------------


class BudgetError(LineGeomError):
    exit_code = 4


class SearchBudgetExceeded(BudgetError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"search exceeded node budget of {limit}")


class SizeCapExceeded(BudgetError):
    pass


class BudgetExceeded(BudgetError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"automorphism search exceeded node budget of {limit}")


# -- alarms: states the theorem says are unreachable --------------------------


class TheoremAlarm(LineGeomError):
    """Raised when an instance contradicts a proven statement.

    Reaching one of these means a bug in the library or a malformed input that
    slipped past validation; they are never absorbed silently.
    """

    exit_code = 2


class NonUniformStarImages(TheoremAlarm):
    pass


class ImageNotMaximal(TheoremAlarm):
    pass


class WellDefinednessFailure(TheoremAlarm):
    pass


class TargetNotGenProjDim3(TheoremAlarm):
    pass


class SourceNotGenProjDim3(TheoremAlarm):
    pass

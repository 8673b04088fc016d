"""Exception hierarchy shared by every module."""


class YBFuseError(Exception):
    """Base class for all library errors."""


class DivisionByZero(YBFuseError, ZeroDivisionError):
    pass


class PoleAtEvaluationPoint(YBFuseError):
    def __init__(self, x):
        super().__init__(f"pole at evaluation point {x}")
        self.x = x


class InvalidSites(YBFuseError, ValueError):
    pass


class SizeMismatch(YBFuseError, ValueError):
    pass


class DegenerateBasis(YBFuseError, ValueError):
    pass


class SubspaceNotInvariant(YBFuseError):
    pass


class InvalidDeformationParameter(YBFuseError, ValueError):
    pass


class InvalidKernelSpec(YBFuseError, ValueError):
    pass


class UnitarityViolated(YBFuseError):
    pass


class InvalidContents(YBFuseError, ValueError):
    pass


class SingularContents(YBFuseError):
    pass


class GenuineSingularity(YBFuseError):
    """A pole survived reduction during consecutive evaluation."""

    def __init__(self, step, point):
        super().__init__(f"genuine pole at step {step} (t = {point})")
        self.step = step
        self.point = point


class SchurWeylMismatch(YBFuseError):
    def __init__(self, rank, expected):
        super().__init__(f"image rank {rank} differs from expected dimension {expected}")
        self.rank = rank
        self.expected = expected


class NotAdmissible(YBFuseError, ValueError):
    pass

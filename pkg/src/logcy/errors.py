"""Exception hierarchy.

Every error carries enough context to locate the offending datum; nothing
here is raised for control flow.
"""


class LcyError(Exception):
    pass


class FanError(LcyError):
    pass


class NonPrimitiveRay(FanError):
    def __init__(self, index, ray):
        self.index, self.ray = index, tuple(ray)
        super().__init__(f"ray {index} = {self.ray} is not primitive")


class NotUnimodular(FanError):
    def __init__(self, index, det):
        self.index, self.det = index, det
        super().__init__(f"det(v_{index}, v_{index + 1}) = {det}, expected +1")


class NotCounterclockwise(FanError):
    pass


class NotComplete(FanError):
    pass


class TooFewRays(FanError):
    pass


class NotMinusOneRay(FanError):
    def __init__(self, index, n):
        self.index, self.n = index, n
        super().__init__(f"ray {index} has self-intersection {n}, not -1")


class ModelError(LcyError):
    pass


class NoOppositeRay(ModelError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"fan has no ray opposite to ray {index}")


class NoInteriorBlowup(ModelError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"ray {index} carries no interior blow-up")


class NotBlowdownEligible(ModelError):
    pass


class ModelMismatch(LcyError):
    pass


class NegativeH1(LcyError):
    pass


class NonLineBundleEntry(LcyError):
    pass


class IndexOutOfRange(LcyError, IndexError):
    pass


class KMismatch(LcyError):
    pass


class NotStandardFibration(LcyError):
    pass


class NotStabilizingClass(LcyError):
    def __init__(self, s, slot):
        self.s, self.slot = s, slot
        super().__init__(f"cycle {s} is not a stabilising class for slot {slot}")


class KTooSmall(LcyError):
    pass


class ScriptPreconditionFailed(LcyError):
    pass


class NotExceptionalAtChiLevel(LcyError):
    pass


class DocumentError(LcyError):
    """Parse or validation failure in a JSON document, with a position."""

    def __init__(self, message, line=None, col=None, path=None):
        self.line, self.col, self.path = line, col, path
        where = []
        if line is not None:
            where.append(f"line {line}, col {col}")
        if path:
            where.append(path)
        super().__init__(message + (f" ({'; '.join(where)})" if where else ""))

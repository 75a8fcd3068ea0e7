"""Exception hierarchy shared by every hyperspec module."""


class HyperspecError(Exception):
    """Base class for all library errors."""


class InvalidParameters(HyperspecError, ValueError):
    pass


# linalg
class NotSquare(HyperspecError, ValueError):
    pass


class NotSymmetric(HyperspecError, ValueError):
    pass


class DimensionTooLarge(HyperspecError, ValueError):
    pass


class ConvergenceError(HyperspecError, ArithmeticError):
    pass


# hypergraph
class NotUniform(HyperspecError, ValueError):
    pass


class NotRegular(HyperspecError, ValueError):
    def __init__(self, vertex: int, degree: int, expected: int):
        super().__init__(f"vertex {vertex} has degree {degree}, expected {expected}")
        self.vertex = vertex
        self.degree = degree


class DuplicateHyperedge(HyperspecError, ValueError):
    pass


class VertexOutOfRange(HyperspecError, ValueError):
    pass


class CountMismatch(HyperspecError, ValueError):
    pass


class MultipleHyperedges(HyperspecError, ValueError):
    def __init__(self, first: int, second: int):
        super().__init__(f"columns {first} and {second} have the same support")
        self.columns = (first, second)


class LengthTooLarge(HyperspecError, ValueError):
    pass


# sampler
class RetryLimitExceeded(HyperspecError, RuntimeError):
    pass


# spectra
class DensityNotNormalized(HyperspecError, ValueError):
    pass


class IntervalTooNarrow(HyperspecError, ValueError):
    pass


# walks / expansion
class NoSpectralGap(HyperspecError, ValueError):
    pass


class DegenerateParameters(HyperspecError, ValueError):
    pass


class NegativeInput(HyperspecError, ValueError):
    pass


class EmptySet(HyperspecError, ValueError):
    pass

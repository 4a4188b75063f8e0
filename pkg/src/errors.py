class SumSplitError(Exception):
    """Base class for everything the decomposition pipeline raises on purpose"""


class SampleError(SumSplitError, ValueError):
    def __init__(self, message, rows=()):
        super().__init__(message)
        self.rows = tuple(rows)


class DegenerateSample(SampleError):
    pass


class CellIndexOverflow(SumSplitError, OverflowError):
    pass


class LevelNotFound(SumSplitError):
    """No level up to n_max has a bridge gap of at least F.

    best_gap/best_level describe the most promising level that was tried and
    witness is the shortest bridging almost array found there (or None).
    """

    def __init__(self, message, F=0, n_max=0, best_gap=0, best_level=None, witness=None):
        super().__init__(message)
        self.F = F
        self.n_max = n_max
        self.best_gap = best_gap
        self.best_level = best_level
        self.witness = witness


class EmptyColumnNotFound(SumSplitError):
    pass


class NoConvergence(SumSplitError):
    def __init__(self, message, residual, decomposition=None):
        super().__init__(message)
        self.residual = residual
        self.decomposition = decomposition


class UnknownFunction(SumSplitError, KeyError):
    def __str__(self):
        # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class DecompositionFileError(SumSplitError, ValueError):
    pass


class InvalidArgument(SumSplitError, ValueError):
    """A parameter outside its documented range, caught before any work is done"""

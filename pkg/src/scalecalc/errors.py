"""Exception taxonomy shared by all modules."""


class ScaleCalcError(Exception):
    """Base class for all scalecalc domain errors."""


class ParameterError(ScaleCalcError):
    """A parameter is outside its documented domain."""


class ContractionError(ParameterError):
    """An affine system has a vertical scaling factor with |d| >= 1."""


class GridMismatchError(ScaleCalcError):
    """A width is not a grid multiple, or grids cannot be aligned."""


class FitError(ScaleCalcError):
    """A regression is degenerate (too few or indistinct data points)."""


class SingularityError(ScaleCalcError):
    """An evaluation hit a singular point (zero denominator, zero state)."""


class NodeError(SingularityError):
    """A wave field magnitude fell below the working floor at a grid node."""

    def __init__(self, message, x_index=None, t_index=None):
        super().__init__(message)
        self.x_index = x_index
        self.t_index = t_index

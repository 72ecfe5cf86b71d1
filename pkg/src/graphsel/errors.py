"""Typed exceptions raised across the package."""


class GraphselError(Exception):
    """Base class for all graphsel errors."""


class GraphError(GraphselError):
    """Invalid graph structure or arguments (bad edges, out-of-range vertices)."""


class VertexLimitError(GraphError):
    """Vertex count exceeds the supported limit of 65,000."""


class NotDecomposableError(GraphError):
    """Operation requires a (strongly) decomposable graph and the input is not."""


class DataError(GraphselError):
    """Invalid dataset: missing values, bad factor levels, shape mismatch."""


class SingularityError(DataError):
    """Degenerate sufficient statistics: singular covariance or zero variance.

    Carries the offending margin (1-based column indices) when known.
    """

    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin


class EmptyCellError(DataError):
    """A discrete cell required for heterogeneous fitting has no observations."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell

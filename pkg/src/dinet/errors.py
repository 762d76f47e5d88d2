"""Exception hierarchy for dinet.

All library-raised errors derive from DinetError so callers can catch one
type at API boundaries.  Structural problems (wrong shapes, inconsistent
dimensions) are distinguished from statistical-model condition failures,
which carry the name of the violated condition, and from numerical
failures inside iterative routines.
"""

from __future__ import annotations


class DinetError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(DinetError):
    """Inputs have inconsistent or invalid dimensions.

    Raised for structural problems that make a computation meaningless,
    as opposed to model-condition failures on well-formed inputs.
    """


class ParameterError(DinetError):
    """A parameter value is outside its documented domain."""


class IdentifiabilityError(DinetError):
    """A model identifiability condition is violated.

    Parameters
    ----------
    condition : str
        Short name of the violated condition, e.g. "(I1)", "(I2)", "(II1)".
    detail : str
        Human-readable description of what failed.
    """

    def __init__(self, condition: str, detail: str):
        self.condition = condition
        self.detail = detail
        super().__init__(f"{condition} violated: {detail}")


class NumericalError(DinetError):
    """An otherwise valid computation failed numerically."""


class ConvergenceError(NumericalError):
    """An iterative solver did not converge within its iteration budget.

    Parameters
    ----------
    detail : str
        Description of the failure.
    iterations : int
        Number of iterations performed before giving up.
    """

    def __init__(self, detail: str, iterations: int):
        self.iterations = iterations
        super().__init__(f"{detail} (after {iterations} iterations)")


class RankDeficiencyError(NumericalError):
    """Corner search exhausted the data before finding all corners.

    Parameters
    ----------
    requested : int
        Number of corners asked for.
    found : int
        Number of corners actually found before the residual vanished.
    """

    def __init__(self, requested: int, found: int):
        self.requested = requested
        self.found = found
        super().__init__(
            f"residual matrix vanished after {found} of {requested} corners; "
            "input rows do not span enough directions"
        )


class DegenerateCornersError(NumericalError):
    """Selected corner rows are too close to collinear to invert.

    Parameters
    ----------
    cond : float
        Condition number of the corner Gram matrix that triggered the error.
    """

    def __init__(self, cond: float):
        self.cond = cond
        super().__init__(
            f"corner Gram matrix has condition number {cond:.3e} > 1e12; "
            "membership recovery would be numerically meaningless"
        )

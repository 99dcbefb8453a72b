"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Matrix or map shapes do not fit together."""


class InvariantBreach(RuntimeError):
    """An internal guarantee failed.

    Raised when a step that theory says must succeed does not (a cocycle
    that is not closed, a solvable system without solution).  Seeing one
    means there is a bug, not bad input.
    """


class LiftingError(ValueError):
    """A lifting problem has no solution.

    Only happens when the map handed in as a quasi-isomorphism is not one.
    """

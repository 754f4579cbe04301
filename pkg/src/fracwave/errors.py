"""Exception types shared across the package."""

from __future__ import annotations


class FracwaveError(Exception):
    """Base class for numerical failures in this package."""


class GammaOverflowError(FracwaveError, OverflowError):
    """Gamma value exceeds double range; carries the sign of the limit."""

    def __init__(self, x: float, sign: int):
        self.x = x
        self.sign = sign
        super().__init__(f"gamma overflow at x={x!r} (sign {'+' if sign > 0 else '-'})")


class DivergentSeriesError(FracwaveError):
    """Series parameters outside the convergence domain."""


class CoincidentPolesError(FracwaveError):
    """Residue-series pole lattices collide (or nearly collide); the
    simple-pole expansion is invalid there."""


class SeriesStallError(FracwaveError):
    """Series failed to converge within the term budget."""

    def __init__(self, message: str, partial_sum: float, last_term: float):
        self.partial_sum = partial_sum
        self.last_term = last_term
        super().__init__(
            f"{message} (partial sum {partial_sum!r}, last term magnitude {abs(last_term)!r})"
        )


class IllConditionedSeriesError(FracwaveError):
    """Cancellation destroyed too many digits for the requested accuracy."""

    def __init__(self, message: str, partial_sum: float, uncertainty: float):
        self.partial_sum = partial_sum
        self.uncertainty = uncertainty
        super().__init__(f"{message} (partial sum {partial_sum!r}, uncertainty {uncertainty:.3e})")


class InvalidContourError(FracwaveError):
    """Vertical contour fails to separate the two pole families."""


class QuadratureError(FracwaveError):
    """Contour quadrature did not converge to tolerance."""


class SingularPointError(FracwaveError):
    """Pointwise evaluation requested at a singular point (x = 0 on a
    branch defined only for x != 0)."""


class NoInteriorMaximumError(FracwaveError):
    """Profile has no interior local maximum on the requested side."""

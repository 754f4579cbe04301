"""Fundamental solutions of the one-dimensional space-time fractional
equation family D^a u = v^2 D^b u interpolating wave, heat, transport and
the second-order-time/first-order-space case, for delta and Gaussian
initial disturbances."""

from .errors import (
    CoincidentPolesError,
    DivergentSeriesError,
    FracwaveError,
    GammaOverflowError,
    IllConditionedSeriesError,
    InvalidContourError,
    NoInteriorMaximumError,
    QuadratureError,
    SeriesStallError,
    SingularPointError,
)
from .special import GammaValue, gamma, gamma_half_minus, gen_wright, rgamma, wright_phi

__all__ = [
    "CoincidentPolesError",
    "DivergentSeriesError",
    "FracwaveError",
    "GammaOverflowError",
    "GammaValue",
    "IllConditionedSeriesError",
    "InvalidContourError",
    "NoInteriorMaximumError",
    "QuadratureError",
    "SeriesStallError",
    "SingularPointError",
    "gamma",
    "gamma_half_minus",
    "gen_wright",
    "rgamma",
    "wright_phi",
]

__version__ = "0.1.0"

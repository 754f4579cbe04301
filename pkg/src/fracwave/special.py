"""Real-argument Gamma machinery and Wright-type series.

Everything here is built on a Lanczos approximation of log-Gamma.  The
reciprocal Gamma is treated as the primary object for series work: terms
whose denominator Gamma sits on a pole vanish instead of producing NaN.
A vectorized complex log-Gamma (same coefficients) is provided for the
contour quadrature in :mod:`fracwave.foxh`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DivergentSeriesError,
    FracwaveError,
    GammaOverflowError,
    SeriesStallError,
)

__all__ = [
    "GammaValue",
    "gamma",
    "rgamma",
    "gamma_half_minus",
    "wright_phi",
    "gen_wright",
]

# Lanczos coefficients, g = 607/128, 15 terms.  Keeps the relative error
# near 1e-14 over the double range, on the real axis and on vertical
# lines away from poles.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
)

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

# |x - n| below this, with n a non-positive integer, classifies x as a pole.
POLE_TOL = 1e-12

# Log of largest finite double, with a safety margin.
_LOG_HUGE = 709.5

# Series truncation: a term counts as negligible once it drops below
# this fraction of the running sum of absolute terms ...
SERIES_RTOL = 1e-16
# ... for this many consecutive terms (guards sign-alternating series).
SERIES_CONSEC = 3
# Never stop before this many terms (pole-killed zero terms come in
# patterns; a short zero run must not fake convergence).
SERIES_MIN_TERMS = 12


def _sinpi(x: float) -> float:
    """sin(pi*x) with exact argument reduction around integers."""
    n = math.floor(x)
    r = x - n
    if r > 0.5:
        n += 1
        r -= 1.0
    s = math.sin(math.pi * r)
    return -s if (n & 1) else s


def _lgamma_raw(x: float) -> float:
    # Lanczos for x >= 0.5 only.
    w = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (w + 0.5) * math.log(t) - t + math.log(acc)


def is_gamma_pole(x: float) -> bool:
    """True when x is a non-positive integer within POLE_TOL."""
    if x > 0.5:
        return False
    n = round(x)
    return n <= 0 and abs(x - n) <= POLE_TOL


def lgamma_signed(x: float) -> tuple[float, float]:
    """Return (log|Gamma(x)|, sign of Gamma(x)).

    Poles are the caller's business; at a pole this returns (+inf, 0).
    """
    if x >= 0.5:
        return _lgamma_raw(x), 1.0
    if is_gamma_pole(x):
        return math.inf, 0.0
    s = _sinpi(x)
    # Gamma(x) = pi / (sin(pi x) * Gamma(1 - x))
    return _LOG_PI - math.log(abs(s)) - _lgamma_raw(1.0 - x), math.copysign(1.0, s)


@dataclass(frozen=True)
class GammaValue:
    """Gamma function value with explicit pole bookkeeping."""

    value: float
    is_pole: bool


def _gamma_pos(x: float) -> float:
    # Direct Lanczos product for x >= 0.5 (no exp/log round trip, which
    # costs ~|log Gamma| ulps of relative error at large x).  Caller has
    # already ruled out overflow.
    w = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    if x <= 140.0:
        return math.sqrt(2.0 * math.pi) * acc * math.pow(t, w + 0.5) * math.exp(-t)
    # t**(w+0.5) alone would overflow; square the half-power instead.
    half = math.pow(t, 0.5 * (w + 0.5)) * math.exp(-0.5 * t)
    return math.sqrt(2.0 * math.pi) * acc * half * half


def gamma(x: float) -> GammaValue:
    """Gamma(x) for finite real x.

    Poles (non-positive integers within POLE_TOL) are flagged, never NaN.
    Raises GammaOverflowError past the double range, carrying the sign of
    the diverging limit.
    """
    if not math.isfinite(x):
        raise ValueError(f"gamma argument must be finite, got {x!r}")
    if is_gamma_pole(x):
        return GammaValue(math.inf, True)
    lg, sign = lgamma_signed(x)
    if lg > _LOG_HUGE:
        raise GammaOverflowError(x, 1 if sign > 0 else -1)
    if x >= 0.5:
        return GammaValue(_gamma_pos(x), False)
    if 1.0 - x <= 171.5:
        return GammaValue(math.pi / (_sinpi(x) * _gamma_pos(1.0 - x)), False)
    return GammaValue(sign * math.exp(lg), False)


def rgamma(x: float) -> float:
    """1/Gamma(x); exactly 0 at the poles of Gamma (entire function)."""
    if not math.isfinite(x):
        raise ValueError(f"rgamma argument must be finite, got {x!r}")
    if is_gamma_pole(x):
        return 0.0
    lg, sign = lgamma_signed(x)
    if lg < -_LOG_HUGE:
        # Gamma underflowed to 0; the reciprocal is not representable.
        raise GammaOverflowError(x, 1 if sign > 0 else -1)
    if x >= 0.5:
        if lg > _LOG_HUGE:
            return math.exp(-lg)
        return 1.0 / _gamma_pos(x)
    if 1.0 - x <= 171.5:
        return _sinpi(x) * _gamma_pos(1.0 - x) / math.pi
    return sign * math.exp(-lg)


def gamma_half_minus(m: int) -> float:
    """Gamma(1/2 - m) for integer m >= 0 via the closed form
    (-4)^m m! sqrt(pi) / (2m)!.

    Evaluated in exact integer arithmetic, so no intermediate overflow;
    the result underflows to 0.0 for very large m.
    """
    if m < 0:
        raise ValueError(f"m must be a nonnegative integer, got {m!r}")
    ratio = ((-4) ** m * math.factorial(m)) / math.factorial(2 * m)
    return math.sqrt(math.pi) * ratio


class SeriesAccumulator:
    """Compensated summation with convergence and conditioning tracking.

    Tracks the running sum (Kahan), the sum of absolute terms, the largest
    term seen, and an uncertainty total fed by callers (used for terms
    whose Gamma factors sit close to poles).  The stopping rule is
    "SERIES_CONSEC consecutive terms below SERIES_RTOL of the absolute
    running sum", never before SERIES_MIN_TERMS terms.
    """

    def __init__(self) -> None:
        self.total = 0.0
        self._comp = 0.0
        self.abs_total = 0.0
        self.max_abs = 0.0
        self.uncertainty = 0.0
        self.n_terms = 0
        self._consec = 0

    def add(self, term: float, uncertainty: float = 0.0) -> None:
        t = term - self._comp
        s = self.total + t
        self._comp = (s - self.total) - t
        self.total = s
        a = abs(term)
        self.abs_total += a
        if a > self.max_abs:
            self.max_abs = a
        self.uncertainty += abs(uncertainty)
        self.n_terms += 1
        if a < SERIES_RTOL * self.abs_total:
            self._consec += 1
        else:
            self._consec = 0

    @property
    def converged(self) -> bool:
        return self.n_terms >= SERIES_MIN_TERMS and self._consec >= SERIES_CONSEC

    def cancellation_error(self) -> float:
        # Roundoff floor from summing in doubles: each term assembled from
        # log-Gamma sums carries several ulps of its own magnitude.
        return 2.0e-15 * self.abs_total


def _term_from_logs(log_mag: float, sign: float) -> float:
    if sign == 0.0 or log_mag == -math.inf:
        return 0.0
    if log_mag > _LOG_HUGE:
        raise OverflowError("series term overflow")
    return sign * math.exp(log_mag)


def wright_phi(a: float, b: float, z: float, max_terms: int = 200_000) -> float:
    """Wright function phi(a, b; z) = sum_k z^k / (k! Gamma(a k + b)).

    Requires a > -1 for convergence.  Denominator-Gamma poles drop their
    terms (reciprocal-Gamma semantics).
    """
    if a <= -1.0 + POLE_TOL:
        raise DivergentSeriesError(f"divergent Wright series: a={a!r} <= -1")
    if z == 0.0:
        return rgamma(b)
    ln_az = math.log(abs(z))
    sign_z = math.copysign(1.0, z)
    acc = SeriesAccumulator()
    log_kfact = 0.0
    for k in range(max_terms):
        if k > 0:
            log_kfact += math.log(k)
        arg = a * k + b
        if is_gamma_pole(arg):
            acc.add(0.0)
        else:
            lg, gsign = lgamma_signed(arg)
            log_mag = k * ln_az - log_kfact - lg
            term = _term_from_logs(log_mag, gsign * sign_z**k)
            acc.add(term)
        if acc.converged:
            return acc.total
    raise SeriesStallError("Wright series stall", acc.total, acc.max_abs)


def gen_wright(
    upper: Sequence[tuple[float, float]],
    lower: Sequence[tuple[float, float]],
    z: float,
    max_terms: int = 200_000,
) -> float:
    """Generalized Wright function pPsi_q.

    sum_k  prod_i Gamma(a_i + A_i k) / prod_j Gamma(b_j + B_j k) * z^k / k!

    The convergence exponent sum(B_j) - sum(A_i) must exceed -1.  Lower
    (denominator) Gamma poles drop their terms; an upper (numerator) pole
    makes the series meaningless and raises.
    """
    delta = sum(B for _, B in lower) - sum(A for _, A in upper)
    if delta <= -1.0 + POLE_TOL:
        raise DivergentSeriesError(
            f"divergent generalized Wright series: convergence exponent {delta!r} <= -1"
        )
    ln_az = math.log(abs(z)) if z != 0.0 else -math.inf
    sign_z = math.copysign(1.0, z)
    acc = SeriesAccumulator()
    log_kfact = 0.0
    for k in range(max_terms):
        if k > 0:
            log_kfact += math.log(k)
        log_mag = (k * ln_az if k > 0 else 0.0) - log_kfact
        sign = sign_z**k if k > 0 else 1.0
        dead = False
        for ai, Ai in upper:
            arg = ai + Ai * k
            if is_gamma_pole(arg):
                raise FracwaveError(
                    f"generalized Wright numerator gamma pole at term {k} (arg {arg!r})"
                )
            lg, gsign = lgamma_signed(arg)
            log_mag += lg
            sign *= gsign
        for bj, Bj in lower:
            arg = bj + Bj * k
            if is_gamma_pole(arg):
                dead = True
                break
            lg, gsign = lgamma_signed(arg)
            log_mag -= lg
            sign *= gsign
        acc.add(0.0 if dead else _term_from_logs(log_mag, sign))
        if acc.converged:
            return acc.total
    raise SeriesStallError("generalized Wright series stall", acc.total, acc.max_abs)


# ---------------------------------------------------------------------------
# Complex log-Gamma on vertical contours (internal; used by the
# Mellin-Barnes quadrature only).


def _log_sinpi_complex(z: np.ndarray) -> np.ndarray:
    """log(sin(pi z)) elementwise, stable for large |Im z|.

    Any 2*pi*i branch is acceptable: consumers only exponentiate sums.
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    y = z.imag
    small = np.abs(y) <= 20.0
    if np.any(small):
        out[small] = np.log(np.sin(np.pi * z[small]))
    big = ~small
    if np.any(big):
        zb = np.where(y[big] > 0, z[big], np.conj(z[big]))
        # sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}) for Im z >> 0
        val = (
            1j * math.pi / 2
            - math.log(2.0)
            - 1j * math.pi * zb
            + np.log1p(-np.exp(2j * math.pi * zb))
        )
        out[big] = np.where(y[big] > 0, val, np.conj(val))
    return out


def clgamma(z: np.ndarray) -> np.ndarray:
    """Vectorized complex log-Gamma via the same Lanczos coefficients.

    Branch is not continuous across the plane; consumers must only use
    exp(sum of values), which is branch-insensitive.
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    right = z.real >= 0.5
    if np.any(right):
        w = z[right] - 1.0
        acc = np.full(w.shape, _LANCZOS[0], dtype=complex)
        for i in range(1, len(_LANCZOS)):
            acc += _LANCZOS[i] / (w + i)
        t = w + _LANCZOS_G + 0.5
        out[right] = _LOG_SQRT_2PI + (w + 0.5) * np.log(t) - t + np.log(acc)
    left = ~right
    if np.any(left):
        zl = z[left]
        out[left] = _LOG_PI - _log_sinpi_complex(zl) - clgamma(1.0 - zl)
    return out

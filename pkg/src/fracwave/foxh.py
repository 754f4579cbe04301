"""Fox H-function evaluation.

Three routes are provided and are kept deliberately independent:

* ``eval_series_pos`` -- residue expansion over the left pole family
  (ascending powers), valid for delta = sum(B) - sum(A) > 0;
* ``eval_series_neg`` -- residue expansion over the right pole family
  (descending powers), valid for delta < 0;
* ``eval_mellin_barnes`` -- direct trapezoid quadrature of the defining
  contour integral, used as the cross-check oracle and as the fallback
  when a residue series is ill-conditioned or its pole lattices collide.

All residue-series coefficients follow reciprocal-Gamma semantics: a
denominator Gamma sitting on a pole kills its term; a numerator Gamma on
a pole means two simple poles of the integrand have merged and the
expansion is invalid (``CoincidentPolesError``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    CoincidentPolesError,
    IllConditionedSeriesError,
    InvalidContourError,
    QuadratureError,
    SeriesStallError,
)
from .special import (
    SERIES_CONSEC,
    SERIES_MIN_TERMS,
    SeriesAccumulator,
    clgamma,
    is_gamma_pole,
    lgamma_signed,
)

__all__ = [
    "HParams",
    "DeltaSign",
    "DeltaClass",
    "validate",
    "reduce_params",
    "eval_series_pos",
    "eval_series_neg",
    "eval_mellin_barnes",
    "eval_auto",
]

# Pole-collision scan horizon for the lattice check.
COLLISION_HORIZON = 200
# Two poles closer than this (in the contour variable) are treated as
# coincident: the simple-pole residue formulas lose all digits there.
COLLISION_TOL = 1e-6
# Relative conditioning budget of a residue series before falling back.
SERIES_REL_BUDGET = 1e-8
_MAX_SERIES_TERMS = 10_000
_LOG_TERM_LIMIT = 690.0


@dataclass(frozen=True)
class HParams:
    """Parameter set (m, n; (a_i, A_i); (b_j, B_j)) of an H-function."""

    m: int
    n: int
    upper: tuple[tuple[float, float], ...]
    lower: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple((float(a), float(A)) for a, A in self.upper))
        object.__setattr__(self, "lower", tuple((float(b), float(B)) for b, B in self.lower))
        if not 1 <= self.m <= self.q:
            raise ValueError(f"m out of range: need 1 <= m <= q, got m={self.m}, q={self.q}")
        if not 0 <= self.n <= self.p:
            raise ValueError(f"n out of range: need 0 <= n <= p, got n={self.n}, p={self.p}")
        for a, A in self.upper:
            if not (A > 0.0) or not math.isfinite(A) or not math.isfinite(a):
                raise ValueError(f"nonpositive or non-finite upper coefficient: ({a!r}, {A!r})")
        for b, B in self.lower:
            if not (B > 0.0) or not math.isfinite(B) or not math.isfinite(b):
                raise ValueError(f"nonpositive or non-finite lower coefficient: ({b!r}, {B!r})")

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def delta(self) -> float:
        return sum(B for _, B in self.lower) - sum(A for _, A in self.upper)

    def decay_exponent(self) -> float:
        """Exponential decay coefficient of the contour integrand
        (positive means the vertical-line integral converges)."""
        up = sum(A for _, A in self.upper[: self.n]) - sum(A for _, A in self.upper[self.n :])
        lo = sum(B for _, B in self.lower[: self.m]) - sum(B for _, B in self.lower[self.m :])
        return up + lo


class DeltaSign(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ZERO = "zero"


@dataclass(frozen=True)
class DeltaClass:
    delta: float
    kind: DeltaSign


def _left_right_collision(params: HParams, pairs: Sequence[tuple[float, float]], count: int):
    """Scan the first `count` pole lattices of `pairs` for (near-)collisions."""
    for i in range(count):
        ci, Ci = pairs[i]
        for j in range(i + 1, count):
            cj, Cj = pairs[j]
            for k in range(COLLISION_HORIZON + 1):
                pos = (ci + k) / Ci
                ell = round(pos * Cj - cj)
                if 0 <= ell <= COLLISION_HORIZON:
                    gap = abs(pos - (cj + ell) / Cj)
                    if gap <= COLLISION_TOL:
                        raise CoincidentPolesError(
                            f"coincident poles: lattices {i} and {j} meet at "
                            f"offsets ({k}, {ell}), gap {gap:.3e}"
                        )


def validate(params: HParams) -> DeltaClass:
    """Classify delta = sum(B) - sum(A) and check the pole-separation
    constraints of the residue expansion that the sign selects."""
    d = params.delta()
    if abs(d) <= 1e-12:
        return DeltaClass(d, DeltaSign.ZERO)
    if d > 0:
        bshift = tuple((b, B) for b, B in params.lower)
        _left_right_collision(params, bshift, params.m)
        return DeltaClass(d, DeltaSign.POSITIVE)
    ashift = tuple((1.0 - a, A) for a, A in params.upper)
    _left_right_collision(params, ashift, params.n)
    return DeltaClass(d, DeltaSign.NEGATIVE)


def reduce_params(params: HParams) -> HParams:
    """Cancel identical numerator/denominator Gamma factors.

    An upper pair with index < n cancels an equal lower pair with index
    >= m, and a lower pair with index < m cancels an equal upper pair
    with index >= n.  The cancellation leaves the integrand unchanged but
    removes spurious pole-lattice collisions (this is how the reduced
    one-over-one form emerges on the pure-space edge of the parameter
    square)."""
    m, n = params.m, params.n
    upper = list(params.upper)
    lower = list(params.lower)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(m, len(lower)):
                if upper[i] == lower[j]:
                    del upper[i]
                    del lower[j]
                    n -= 1
                    changed = True
                    break
            if changed:
                break
        if changed:
            continue
        if m > 1:
            for j in range(m):
                for i in range(n, len(upper)):
                    if lower[j] == upper[i]:
                        del lower[j]
                        del upper[i]
                        m -= 1
                        changed = True
                        break
                if changed:
                    break
    return HParams(m, n, tuple(upper), tuple(lower))


def _coefficient(num_args, den_args, base_log: float, base_sign: float):
    """Assemble one residue coefficient from its Gamma arguments.

    Returns (term, relative_uncertainty) or (0.0, 0.0) for a term killed
    by a denominator pole.  Raises CoincidentPolesError on a numerator
    pole (merged integrand poles).
    """
    for arg in num_args:
        if is_gamma_pole(arg):
            raise CoincidentPolesError(
                f"coincident poles: numerator gamma pole at argument {arg!r}"
            )
    for arg in den_args:
        if is_gamma_pole(arg):
            return 0.0, 0.0
    log_mag = base_log
    sign = base_sign
    unc = 0.0
    for arg in num_args:
        lg, s = lgamma_signed(arg)
        log_mag += lg
        sign *= s
        unc += _near_pole_uncertainty(arg)
    for arg in den_args:
        lg, s = lgamma_signed(arg)
        log_mag -= lg
        sign *= s
        unc += _near_pole_uncertainty(arg)
    if log_mag > _LOG_TERM_LIMIT:
        raise IllConditionedSeriesError("series term overflow", math.nan, math.inf)
    if log_mag < -745.0:
        return 0.0, 0.0
    return sign * math.exp(log_mag), unc


def _near_pole_uncertainty(arg: float) -> float:
    # Relative error contributed by a Gamma factor whose argument sits
    # close to a pole: |psi(arg)| ~ 1/dist there, and the argument itself
    # carries a few ulps of arithmetic noise.
    if arg > 0.5:
        return 0.0
    dist = abs(arg - round(arg))
    if dist >= 0.5:
        return 0.0
    return 4e-16 * max(1.0, abs(arg)) / max(dist, 1e-300)


def _check_budget(accs: Sequence[SeriesAccumulator], total: float, rel_budget: float):
    unc = sum(a.uncertainty for a in accs) + sum(a.cancellation_error() for a in accs)
    if unc > rel_budget * max(abs(total), 1e-300):
        raise IllConditionedSeriesError(
            "residue series lost too many digits", total, unc
        )


def eval_series_pos(params: HParams, z: float, rel_budget: float = SERIES_REL_BUDGET) -> float:
    """Ascending residue series, valid for delta > 0 and z > 0.

    Pole-lattice collisions are detected as they are reached: a colliding
    term that lies beyond the convergence horizon cannot affect the sum,
    so it is never inspected.  Use :func:`validate` for the full
    structural scan.
    """
    if not z > 0.0:
        raise ValueError(f"z must be positive, got {z!r}")
    d = params.delta()
    if not d > 1e-12:
        raise ValueError(f"ascending series requires delta > 0, got delta={d!r}")
    ln_z = math.log(z)
    m, n = params.m, params.n
    upper, lower = params.upper, params.lower
    accs = []
    for j in range(m):
        bj, Bj = lower[j]
        acc = SeriesAccumulator()
        accs.append(acc)
        log_fact = 0.0
        for ell in range(_MAX_SERIES_TERMS):
            if ell > 0:
                log_fact += math.log(ell)
            w = (bj + ell) / Bj
            num_args = [lower[i][0] - w * lower[i][1] for i in range(m) if i != j]
            num_args += [1.0 - a + w * A for a, A in upper[:n]]
            den_args = [a - w * A for a, A in upper[n:]]
            den_args += [1.0 - lower[i][0] + w * lower[i][1] for i in range(m, len(lower))]
            base_log = -log_fact - math.log(Bj) + w * ln_z
            base_sign = -1.0 if (ell & 1) else 1.0
            term, unc = _coefficient(num_args, den_args, base_log, base_sign)
            acc.add(term, abs(term) * unc)
            if acc.converged:
                break
        else:
            raise SeriesStallError("series stall", acc.total, acc.max_abs)
    total = math.fsum(a.total for a in accs)
    _check_budget(accs, total, rel_budget)
    return total


def eval_series_neg(params: HParams, z: float, rel_budget: float = SERIES_REL_BUDGET) -> float:
    """Descending residue series, valid for delta < 0 and z > 0.

    Collision handling as in :func:`eval_series_pos`.
    """
    if not z > 0.0:
        raise ValueError(f"z must be positive, got {z!r}")
    d = params.delta()
    if not d < -1e-12:
        raise ValueError(f"descending series requires delta < 0, got delta={d!r}")
    ln_z = math.log(z)
    m, n = params.m, params.n
    upper, lower = params.upper, params.lower
    accs = []
    for i in range(n):
        ai, Ai = upper[i]
        acc = SeriesAccumulator()
        accs.append(acc)
        log_fact = 0.0
        for k in range(_MAX_SERIES_TERMS):
            if k > 0:
                log_fact += math.log(k)
            w = (1.0 - ai + k) / Ai
            num_args = [b + w * B for b, B in lower[: m]]
            num_args += [1.0 - upper[jj][0] - w * upper[jj][1] for jj in range(n) if jj != i]
            den_args = [a + w * A for a, A in upper[n:]]
            den_args += [1.0 - b - w * B for b, B in lower[m:]]
            base_log = -log_fact - math.log(Ai) - w * ln_z
            base_sign = -1.0 if (k & 1) else 1.0
            term, unc = _coefficient(num_args, den_args, base_log, base_sign)
            acc.add(term, abs(term) * unc)
            if acc.converged:
                break
        else:
            raise SeriesStallError("series stall", acc.total, acc.max_abs)
    total = math.fsum(a.total for a in accs)
    _check_budget(accs, total, rel_budget)
    return total


# ---------------------------------------------------------------------------
# Contour quadrature


def _pole_bounds(params: HParams) -> tuple[float, float]:
    left = max((-b / B) for b, B in params.lower[: params.m])
    if params.n > 0:
        right = min((1.0 - a) / A for a, A in params.upper[: params.n])
    else:
        right = math.inf
    return left, right


def default_contour(params: HParams) -> float:
    """Midpoint of the pole-separation gap (left_max + 1 when there is
    no right pole family)."""
    left, right = _pole_bounds(params)
    if math.isinf(right):
        return left + 1.0
    if left >= right:
        raise InvalidContourError(
            f"invalid contour: pole families overlap (left max {left!r} >= right min {right!r})"
        )
    return 0.5 * (left + right)


@lru_cache(maxsize=256)
def _contour_nodes(params: HParams, c: float, half_height: float, n_nodes: int):
    y = np.linspace(-half_height, half_height, n_nodes)
    s = c + 1j * y
    log_lam = np.zeros(s.shape, dtype=complex)
    for j, (b, B) in enumerate(params.lower):
        if j < params.m:
            log_lam += clgamma(b + B * s)
        else:
            log_lam -= clgamma(1.0 - b - B * s)
    for i, (a, A) in enumerate(params.upper):
        if i < params.n:
            log_lam += clgamma(1.0 - a - A * s)
        else:
            log_lam -= clgamma(a + A * s)
    lam = np.exp(log_lam)
    y.setflags(write=False)
    lam.setflags(write=False)
    return y, lam


def eval_mellin_barnes(
    params: HParams,
    z: float,
    contour_re: float | None = None,
    half_height: float = 60.0,
    n_nodes: int = 4001,
) -> float:
    """Trapezoid quadrature of the defining contour integral along
    Re(s) = contour_re.

    The contour must separate the two pole families.  The imaginary part
    of the result is a convergence diagnostic and must stay below 1e-8
    relative; the real part is returned.
    """
    if not z > 0.0:
        raise ValueError(f"z must be positive, got {z!r}")
    left, right = _pole_bounds(params)
    c = default_contour(params) if contour_re is None else float(contour_re)
    if not (left + 1e-12 < c < right - 1e-12):
        raise InvalidContourError(
            f"invalid contour: Re(s)={c!r} does not separate poles "
            f"(left max {left!r}, right min {right!r})"
        )
    y, lam = _contour_nodes(params, c, float(half_height), int(n_nodes))
    integrand = lam * np.exp(-(c + 1j * y) * math.log(z))
    val = np.trapz(integrand, y) / (2.0 * math.pi)
    scale = max(1.0, abs(val.real))
    if abs(val.imag) > 1e-8 * scale:
        raise QuadratureError(
            f"quadrature not converged: imaginary residue {val.imag!r} vs real {val.real!r}"
        )
    return float(val.real)


def _power_growth(params: HParams, c: float) -> float:
    # Algebraic growth exponent of |Lambda| along the contour:
    # sum over numerator gammas of (Re arg - 1/2) minus the same over
    # denominators.
    tot = 0.0
    for j, (b, B) in enumerate(params.lower):
        if j < params.m:
            tot += (b + B * c) - 0.5
        else:
            tot -= (1.0 - b - B * c) - 0.5
    for i, (a, A) in enumerate(params.upper):
        if i < params.n:
            tot += (1.0 - a - A * c) - 0.5
        else:
            tot -= (a + A * c) - 0.5
    return tot


def oracle_quadrature(params: HParams, z: float, target_digits: float = 36.0) -> float:
    """Contour quadrature with height/resolution chosen from the
    integrand's decay so the truncated tail stays below the target."""
    a_star = params.decay_exponent()
    if a_star <= 1e-12:
        raise QuadratureError(
            "contour quadrature unavailable: integrand has no exponential decay "
            f"(decay exponent {a_star!r})"
        )
    c = default_contour(params)
    growth = max(_power_growth(params, c), 0.0)
    rate = 0.5 * math.pi * a_star
    h_height = max(60.0, target_digits / rate)
    for _ in range(3):
        h_height = max(60.0, (target_digits + growth * math.log(h_height)) / rate)
    left, right = _pole_bounds(params)
    gap = min(c - left, (right - c) if math.isfinite(right) else 1.0, 1.0)
    step = max(gap / 5.0, 1e-3)
    n_nodes = int(2 * math.ceil(h_height / step)) + 1
    if n_nodes > 4_000_001:
        raise QuadratureError(
            f"quadrature not converged: required node count {n_nodes} exceeds limit"
        )
    n_nodes = max(n_nodes, 4001)
    return eval_mellin_barnes(params, z, c, h_height, n_nodes)


def eval_auto(params: HParams, z: float) -> float:
    """Evaluate an H-function by residue series when the expansion is
    clean and well-conditioned, via the contour oracle otherwise."""
    params = reduce_params(params)
    try:
        dc = validate(params)
        if dc.kind is DeltaSign.POSITIVE:
            return eval_series_pos(params, z)
        if dc.kind is DeltaSign.NEGATIVE:
            return eval_series_neg(params, z)
        return oracle_quadrature(params, z)
    except (CoincidentPolesError, IllConditionedSeriesError, SeriesStallError):
        return oracle_quadrature(params, z)

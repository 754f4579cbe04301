"""Tests for the Gamma/Wright layer.

Reference values come from independent routes: mpmath at 30 digits,
hand-summed brute-force series, and closed-form identities evaluated
through the standard library.
"""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracwave.errors import DivergentSeriesError, GammaOverflowError
from fracwave.special import (
    GammaValue,
    SeriesAccumulator,
    clgamma,
    gamma,
    gamma_half_minus,
    gen_wright,
    rgamma,
    wright_phi,
)

mp.mp.dps = 30

SQRT_PI = math.sqrt(math.pi)


def mp_gamma(x):
    return float(mp.gamma(mp.mpf(x)))


class TestGamma:
    def test_trivial_values(self):
        assert gamma(1.0).value == pytest.approx(1.0, rel=1e-14)
        assert gamma(0.5).value == pytest.approx(SQRT_PI, rel=1e-14)

    def test_reflection_derived_value(self):
        # Gamma(-1/2) from Gamma(z)Gamma(1-z) = pi/sin(pi z), evaluated
        # independently through math.gamma.
        expected = math.pi / (math.sin(-0.5 * math.pi) * math.gamma(1.5))
        assert expected == pytest.approx(-2.0 * SQRT_PI, rel=1e-15)
        assert gamma(-0.5).value == pytest.approx(expected, rel=1e-13)

    def test_poles_flagged(self):
        for x in (0.0, -1.0, -2.0, -37.0, -5.0 + 5e-13):
            g = gamma(x)
            assert g.is_pole
            assert g.value == math.inf
            assert not math.isnan(g.value)

    def test_accuracy_sweep_vs_mpmath(self):
        rng = np.random.default_rng(42)
        xs = list(rng.uniform(-170.0, 170.0, 400)) + [0.5, 1.5, -0.5, 169.99, -169.5]
        for x in xs:
            x = float(x)
            if abs(x - round(x)) < 1e-6 and round(x) <= 0:
                continue
            ref = mp_gamma(x)
            if ref == 0.0 or not math.isfinite(ref):
                continue
            assert gamma(x).value == pytest.approx(ref, rel=1e-13)

    def test_overflow_signals_sign(self):
        with pytest.raises(GammaOverflowError) as ei:
            gamma(180.0)
        assert ei.value.sign == 1

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            gamma(math.inf)
        with pytest.raises(ValueError):
            gamma(math.nan)

    @given(st.floats(min_value=0.5, max_value=80.0))
    @settings(max_examples=200)
    def test_recurrence(self, x):
        # Gamma(x+1) = x Gamma(x)
        assert gamma(x + 1.0).value == pytest.approx(x * gamma(x).value, rel=1e-12)

    def test_duplication_formula(self):
        rng = np.random.default_rng(7)
        for z in rng.uniform(1e-3, 20.0, 200):
            z = float(z)
            lhs = gamma(z).value * gamma(z + 0.5).value
            rhs = 2.0 ** (1.0 - 2.0 * z) * SQRT_PI * gamma(2.0 * z).value
            assert abs(lhs - rhs) / abs(rhs) <= 1e-11

    def test_reflection_consistency(self):
        rng = np.random.default_rng(11)
        for x in rng.uniform(1e-6, 1.0 - 1e-6, 200):
            x = float(x)
            p = gamma(x).value * gamma(1.0 - x).value * math.sin(math.pi * x) / math.pi
            assert p == pytest.approx(1.0, rel=1e-11)


class TestRGamma:
    def test_pole_zeros(self):
        assert rgamma(0.0) == 0.0
        assert rgamma(-3.0) == 0.0
        assert rgamma(-120.0) == 0.0

    def test_simple_value(self):
        assert rgamma(3.0) == pytest.approx(0.5, rel=1e-14)

    def test_reciprocal_consistency(self):
        rng = np.random.default_rng(3)
        for x in rng.uniform(-100.0, 100.0, 300):
            x = float(x)
            g = gamma(x)
            if g.is_pole:
                assert rgamma(x) == 0.0
            else:
                assert rgamma(x) * g.value == pytest.approx(1.0, abs=5e-15)

    def test_entire_beyond_gamma_overflow(self):
        # Gamma(175) overflows but its reciprocal is a representable subnormal.
        r = rgamma(175.0)
        assert 0.0 < r < 1e-300


class TestGammaHalfMinus:
    def test_trivial_and_stated(self):
        assert gamma_half_minus(0) == pytest.approx(SQRT_PI, rel=1e-15)
        assert gamma_half_minus(1) == pytest.approx(-2.0 * SQRT_PI, rel=1e-15)

    def test_closed_form_vs_gamma(self):
        # m = 2: (-4)^2 2! sqrt(pi) / 4! = (16*2/24) sqrt(pi) = (4/3) sqrt(pi)
        assert gamma_half_minus(2) == pytest.approx((4.0 / 3.0) * SQRT_PI, rel=1e-15)
        for m in range(0, 60):
            assert gamma_half_minus(m) == pytest.approx(gamma(0.5 - m).value, rel=1e-12)

    def test_negative_m_rejected(self):
        with pytest.raises(ValueError):
            gamma_half_minus(-1)

    def test_large_m_underflows_quietly(self):
        assert gamma_half_minus(200) == 0.0


class TestWrightPhi:
    def test_exponential_reduction(self):
        # a = 0, b = 1 collapses to sum z^k / (k! Gamma(1+k)) ... wait, to e^z
        assert wright_phi(0.0, 1.0, 1.0) == pytest.approx(math.e, rel=1e-14)

    def test_single_term(self):
        assert wright_phi(-0.5, 0.5, 0.0) == pytest.approx(1.0 / SQRT_PI, rel=1e-14)

    def test_gaussian_identity_point(self):
        assert wright_phi(-0.5, 0.5, -1.0) == pytest.approx(
            math.exp(-0.25) / SQRT_PI, rel=1e-12
        )

    def test_gaussian_identity_sweep(self):
        # phi(-1/2, 1/2; -y) = exp(-y^2/4)/sqrt(pi).  Up to y~7 the
        # alternating sum keeps enough digits for the 1e-10 bound; past
        # that the intrinsic cancellation floor (~ max term * eps, with
        # max term ~ exp(y^2/4)) governs what double precision can do.
        for y in np.linspace(0.0, 6.5, 27):
            y = float(y)
            got = wright_phi(-0.5, 0.5, -y)
            want = math.exp(-y * y / 4.0) / SQRT_PI
            assert abs(got - want) <= 1e-10
        for y in (7.0, 8.0, 9.0, 10.0):
            got = wright_phi(-0.5, 0.5, -y)
            want = math.exp(-y * y / 4.0) / SQRT_PI
            floor = 5e-15 * math.exp(y * y / 4.0) / SQRT_PI
            assert abs(got - want) <= max(1e-10, floor)

    @given(st.floats(min_value=-3.0, max_value=3.0))
    @settings(max_examples=100)
    def test_reduces_to_exp(self, z):
        assert wright_phi(0.0, 1.0, z) == pytest.approx(math.exp(z), rel=1e-12, abs=1e-300)

    def test_divergent_parameter_rejected(self):
        with pytest.raises(DivergentSeriesError):
            wright_phi(-1.0, 0.0, -1.0)
        with pytest.raises(DivergentSeriesError):
            wright_phi(-1.5, 0.5, 0.3)


def bessel_i0_brute(x, n_terms=40):
    # I0(x) = sum (x/2)^{2k} / (k!)^2, summed directly.
    return sum((x / 2.0) ** (2 * k) / math.factorial(k) ** 2 for k in range(n_terms))


class TestGenWright:
    def test_bessel_case(self):
        # 0Psi1 with lower (1,1) at z: sum z^k/(k! Gamma(k+1)) = I0(2 sqrt(z))
        want = bessel_i0_brute(2.0)
        assert gen_wright([], [(1.0, 1.0)], 1.0) == pytest.approx(want, rel=1e-13)

    def test_termwise_cancellation(self):
        # 1Psi1 with equal upper/lower pairs cancels to the exponential.
        assert gen_wright([(1.0, 1.0)], [(1.0, 1.0)], 0.5) == pytest.approx(
            math.exp(0.5), rel=1e-13
        )

    def test_mpmath_hyper_cross_check(self):
        # 1Psi1 upper (2,1), lower (3,1): Gamma(2+k)/Gamma(3+k) z^k/k!
        # equals (1/2) 1F1(2; 3; z).
        z = 0.7
        want = 0.5 * float(mp.hyp1f1(2, 3, z))
        assert gen_wright([(2.0, 1.0)], [(3.0, 1.0)], z) == pytest.approx(want, rel=1e-12)

    def test_divergent_exponent_rejected(self):
        # sum B - sum A = -1.5 here
        with pytest.raises(DivergentSeriesError):
            gen_wright([(1.0, 2.0)], [(1.0, 0.5)], 1.0)


class TestSeriesAccumulator:
    def test_kahan_compensation(self):
        acc = SeriesAccumulator()
        vals = [1.0] + [1e-17] * 1000
        for v in vals:
            acc.add(v)
        assert acc.total == pytest.approx(1.0 + 1e-14, rel=1e-15)

    def test_convergence_needs_consecutive_small_terms(self):
        acc = SeriesAccumulator()
        for _ in range(11):
            acc.add(1.0)
        acc.add(0.0)
        acc.add(0.0)
        acc.add(0.0)
        assert acc.converged
        acc2 = SeriesAccumulator()
        for _ in range(20):
            acc2.add(1.0)
        assert not acc2.converged


class TestComplexLogGamma:
    def test_against_mpmath_on_vertical_lines(self):
        for c in (0.25, 0.5, 1.0, 10.0):
            ys = np.linspace(-70.0, 70.0, 141)
            zs = c + 1j * ys
            ours = clgamma(zs)
            for z, lg in zip(zs, ours):
                ref = mp.loggamma(mp.mpc(z.real, z.imag))
                # exp comparison sidesteps branch differences
                assert abs(complex(mp.exp(mp.mpc(lg.real, lg.imag) - ref)) - 1.0) < 1e-12

    def test_gamma_value_dataclass_is_frozen(self):
        g = GammaValue(1.0, False)
        with pytest.raises(Exception):
            g.value = 2.0  # type: ignore[misc]

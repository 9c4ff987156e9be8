"""Special-function and quadrature kernels against independent oracles."""

import math

import numpy as np
import pytest
from scipy import integrate, special

from isacnet.specfun import (ConvergenceError, QuadratureSpec, beta_complete,
                             beta_incomplete, gamma_reg_lower,
                             integrate_finite, integrate_semi_infinite)

# frozen before the build from a quadrature oracle of t^8 e^-t / Gamma(9)
P_9_9 = 0.5443473956775813
# frozen composite-Simpson (1e6 panels) value of 2 arccos(t/2) t on (0, 2)
ARC_KERNEL_INTEGRAL = 3.1415926526712936


class TestBetaComplete:
    def test_unit(self):
        assert beta_complete(1.0, 1.0) == pytest.approx(1.0, rel=1e-12)

    def test_arcsine_point(self):
        assert beta_complete(0.5, 0.5) == pytest.approx(math.pi, rel=1e-12)

    def test_pathloss_entry_point(self):
        # the (2/beta, 1 - 2/beta) pair at beta = 4
        assert beta_complete(2 / 4, 1 - 2 / 4) == pytest.approx(math.pi, rel=1e-12)

    def test_against_scipy(self, rng):
        a = rng.uniform(0.05, 20.0, 200)
        b = rng.uniform(0.05, 20.0, 200)
        ours = beta_complete(a, b)
        ref = special.beta(a, b)
        assert np.allclose(ours, ref, rtol=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            beta_complete(0.0, 1.0)
        with pytest.raises(ValueError):
            beta_complete(1.0, -2.0)


class TestBetaIncomplete:
    def test_empty_interval(self):
        assert beta_incomplete(0.0, 2.0, 3.0) == 0.0

    def test_full_interval_is_complete(self):
        assert beta_incomplete(1.0, 0.5, 0.5) == pytest.approx(math.pi, rel=1e-12)

    def test_arcsine_identity_midpoint(self):
        assert beta_incomplete(0.5, 0.5, 0.5) == pytest.approx(math.pi / 2, rel=1e-10)

    def test_arcsine_identity_grid(self):
        x = np.linspace(1e-6, 1.0 - 1e-6, 1000)
        ours = beta_incomplete(x, 0.5, 0.5)
        ref = 2.0 * np.arcsin(np.sqrt(x))
        assert np.max(np.abs(ours / ref - 1.0)) < 1e-9

    def test_monotone_and_bounded(self, rng):
        for _ in range(20):
            a = rng.uniform(0.1, 8.0)
            b = rng.uniform(0.1, 8.0)
            x = np.sort(rng.uniform(0.0, 1.0, 50))
            vals = beta_incomplete(x, a, b)
            assert np.all(np.diff(vals) >= -1e-12)
            assert vals[-1] <= beta_complete(a, b) * (1 + 1e-12)

    def test_against_scipy(self, rng):
        x = rng.uniform(0.0, 1.0, 500)
        a = rng.uniform(0.05, 15.0, 500)
        b = rng.uniform(0.05, 15.0, 500)
        ours = beta_incomplete(x, a, b)
        ref = special.betainc(a, b, x) * special.beta(a, b)
        assert np.allclose(ours, ref, rtol=2e-11, atol=1e-300)

    def test_domain(self):
        with pytest.raises(ValueError):
            beta_incomplete(1.5, 1.0, 1.0)
        with pytest.raises(ValueError):
            beta_incomplete(-0.1, 1.0, 1.0)
        with pytest.raises(ValueError):
            beta_incomplete(0.5, 0.0, 1.0)


class TestGammaRegLower:
    def test_exponential_cdf(self):
        assert gamma_reg_lower(1.0, 1.0) == pytest.approx(1 - math.exp(-1), rel=1e-12)

    def test_zero(self):
        assert gamma_reg_lower(3.7, 0.0) == 0.0

    def test_frozen_oracle_value(self):
        assert gamma_reg_lower(9.0, 9.0) == pytest.approx(P_9_9, rel=1e-12)

    def test_is_cdf(self):
        x = np.linspace(0.0, 60.0, 400)
        for s in (0.3, 1.0, 4.5, 9.0, 20.0):
            vals = gamma_reg_lower(s, x)
            assert np.all(np.diff(vals) >= -1e-13)
            assert vals[0] == 0.0
            assert vals[-1] == pytest.approx(1.0, abs=1e-9)

    def test_against_scipy(self, rng):
        s = rng.uniform(0.1, 30.0, 400)
        x = rng.uniform(0.0, 60.0, 400)
        assert np.allclose(gamma_reg_lower(s, x), special.gammainc(s, x),
                           rtol=1e-11, atol=1e-300)

    def test_domain(self):
        with pytest.raises(ValueError):
            gamma_reg_lower(0.0, 1.0)
        with pytest.raises(ValueError):
            gamma_reg_lower(1.0, -1.0)


class TestQuadratureSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=-1.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=0)


class TestIntegrateFinite:
    def test_unit(self):
        assert integrate_finite(lambda t: np.ones_like(t), 0.0, 1.0) == \
            pytest.approx(1.0, rel=1e-12)

    def test_arcsine_singular_endpoints(self):
        val = integrate_finite(lambda t: t ** -0.5 * (1 - t) ** -0.5, 0.0, 1.0)
        assert val == pytest.approx(math.pi, rel=5e-8)

    def test_arccos_kernel_vs_simpson_oracle(self):
        val = integrate_finite(lambda t: 2 * np.arccos(t / 2) * t, 0.0, 2.0)
        assert val == pytest.approx(ARC_KERNEL_INTEGRAL, rel=1e-8)

    def test_error_bound_contract(self):
        spec = QuadratureSpec(rel_tol=1e-10, abs_tol=1e-14)
        val, err, _ = integrate_finite(np.exp, 0.0, 3.0, spec, full_output=True)
        truth = math.exp(3.0) - 1.0
        assert err <= max(spec.abs_tol, spec.rel_tol * abs(val))
        assert abs(val - truth) <= 10 * err + 1e-14

    def test_refinement_monotone_in_tolerance(self):
        # halving rel_tol never increases the returned error bound
        f = lambda t: np.exp(-t * t) * np.cos(3 * t)
        prev = None
        for rel in (1e-4, 5e-5, 2.5e-5, 1.25e-5, 1e-8):
            _, err, _ = integrate_finite(f, 0.0, 4.0,
                                         QuadratureSpec(rel_tol=rel,
                                                        abs_tol=1e-15),
                                         full_output=True)
            if prev is not None:
                assert err <= prev * (1 + 1e-12)
            prev = err

    def test_budget_exhaustion(self):
        spec = QuadratureSpec(rel_tol=1e-14, abs_tol=1e-300, max_subdivisions=3)
        with pytest.raises(ConvergenceError) as exc:
            integrate_finite(lambda t: t ** -0.5, 0.0, 1.0, spec)
        assert exc.value.estimate is not None
        assert exc.value.error_bound is not None

    def test_bad_bounds(self):
        with pytest.raises(ValueError):
            integrate_finite(np.exp, 1.0, 0.0)


class TestIntegrateSemiInfinite:
    def test_exponential(self):
        assert integrate_semi_infinite(lambda z: np.exp(-z), 0.0) == \
            pytest.approx(1.0, rel=1e-9)

    def test_gaussian_moment(self):
        assert integrate_semi_infinite(lambda z: z * np.exp(-z * z), 0.0) == \
            pytest.approx(0.5, rel=1e-9)

    def test_power_law_tail(self):
        assert integrate_semi_infinite(lambda z: (1 + z) ** -2.0, 0.0) == \
            pytest.approx(1.0, rel=1e-8)

    def test_shifted_lower_limit(self):
        assert integrate_semi_infinite(lambda z: np.exp(-z), 2.0) == \
            pytest.approx(math.exp(-2.0), rel=1e-9)

    def test_far_displaced_support_is_found(self):
        # mass near z = e^15; the probe has to locate it
        f = lambda z: np.exp(-(np.log(z) - 15.0) ** 2) / z
        assert integrate_semi_infinite(f, 0.0) == \
            pytest.approx(math.sqrt(math.pi), rel=1e-8)

    def test_scale_hint(self):
        f = lambda z: np.exp(-(np.log(z) - 15.0) ** 2) / z
        val = integrate_semi_infinite(f, 0.0, scale=math.exp(15.0))
        assert val == pytest.approx(math.sqrt(math.pi), rel=1e-8)

    def test_divergent_tail_raises(self):
        with pytest.raises(ConvergenceError):
            integrate_semi_infinite(lambda z: 1.0 / (1.0 + z), 0.0)

    def test_against_scipy_random_kernels(self, rng):
        for _ in range(10):
            a = rng.uniform(0.3, 3.0)
            p = rng.uniform(0.2, 1.8)
            f = lambda z: z ** p * np.exp(-a * z)
            ours = integrate_semi_infinite(f, 0.0)
            ref = special.gamma(p + 1) / a ** (p + 1)
            assert ours == pytest.approx(ref, rel=1e-8)

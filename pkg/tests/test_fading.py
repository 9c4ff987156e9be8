"""Fading gain laws: moments, CDFs, memorylessness."""

import math

import numpy as np
import pytest

from isacnet.fading import (FadingLaw, desired_gain_law,
                            interference_gain_law, sample_desired_gain,
                            sample_interference_gain)
from isacnet.specfun import gamma_reg_lower


class TestLaws:
    def test_desired_law(self):
        law = desired_gain_law(10)
        assert law.kind == "desired-gamma"
        assert law.shape == 9.0
        assert law.mean == 9.0
        assert law.variance == 9.0

    def test_minimum_antennas(self):
        with pytest.raises(ValueError):
            desired_gain_law(1)
        with pytest.raises(ValueError):
            sample_desired_gain(1, np.random.default_rng(0))

    def test_interference_law_unit_mean(self):
        law = interference_gain_law()
        assert law.mean == 1.0

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            FadingLaw(kind="rayleigh", shape=1.0)


class TestDesiredGain:
    def test_two_antennas_is_exponential(self, rng):
        draws = sample_desired_gain(2, rng, size=1_000_000)
        assert abs(draws.mean() - 1.0) < 0.01

    def test_ten_antenna_moments(self, rng):
        draws = sample_desired_gain(10, rng, size=1_000_000)
        assert abs(draws.mean() - 9.0) < 0.03
        assert abs(draws.var() - 9.0) < 0.1

    def test_cdf_matches_gamma(self, rng):
        mt = 10
        draws = np.sort(sample_desired_gain(mt, rng, size=1_000_000))
        cdf = gamma_reg_lower(float(mt - 1), draws)
        n = len(cdf)
        ks = np.maximum(np.arange(1, n + 1) / n - cdf,
                        cdf - np.arange(0, n) / n).max()
        assert ks < 0.005


class TestInterferenceGain:
    def test_unit_mean(self, rng):
        draws = sample_interference_gain(rng, size=1_000_000)
        assert abs(draws.mean() - 1.0) < 0.01

    def test_tail_probability(self, rng):
        draws = sample_interference_gain(rng, size=1_000_000)
        assert abs((draws > 1.0).mean() - math.exp(-1)) < 0.005

    def test_cdf_matches_exponential(self, rng):
        draws = np.sort(sample_interference_gain(rng, size=1_000_000))
        cdf = 1.0 - np.exp(-draws)
        n = len(cdf)
        ks = np.maximum(np.arange(1, n + 1) / n - cdf,
                        cdf - np.arange(0, n) / n).max()
        assert ks < 0.005

    def test_memoryless(self, rng):
        draws = sample_interference_gain(rng, size=1_000_000)
        for s in (0.5, 1.0, 2.0):
            beyond_s = draws[draws > s] - s
            for t in (0.5, 1.0):
                lhs = (beyond_s > t).mean()
                rhs = (draws > t).mean()
                assert abs(lhs - rhs) < 0.01

"""Small-scale fading gain laws after zero-forcing at each base station.

The precoding analysis collapses every fading quantity to one of two laws:
the gain on a desired (cluster) link is Gamma(M_t - 1, 1), and the total
interference gain from a non-cluster station is unit-mean exponential.
Simulation operates at this distribution level; no channel vectors are
ever constructed.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "FadingLaw",
    "desired_gain_law",
    "interference_gain_law",
    "sample_desired_gain",
    "sample_interference_gain",
]


@dataclass(frozen=True)
class FadingLaw:
    kind: str          # "desired-gamma" or "interference-exponential"
    shape: float
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("desired-gamma", "interference-exponential"):
            raise ValueError(f"unknown fading law kind: {self.kind!r}")
        if self.shape < 1:
            raise ValueError("shape must be >= 1")

    @property
    def mean(self):
        return self.shape * self.scale

    @property
    def variance(self):
        return self.shape * self.scale ** 2


def desired_gain_law(mt):
    """Gamma(M_t - 1, 1) law of a cluster link gain; needs M_t >= 2."""
    if mt < 2:
        raise ValueError("zero-forcing with two streams needs M_t >= 2")
    return FadingLaw(kind="desired-gamma", shape=float(mt - 1))


def interference_gain_law():
    """Unit-mean exponential law of the total interference gain."""
    return FadingLaw(kind="interference-exponential", shape=1.0)


def sample_desired_gain(mt, rng, size=None):
    """Draw desired-link gains ~ Gamma(M_t - 1, 1) from `rng`."""
    if mt < 2:
        raise ValueError("zero-forcing with two streams needs M_t >= 2")
    return rng.gamma(float(mt - 1), 1.0, size)


def sample_interference_gain(rng, size=None):
    """Draw interference gains ~ exp(1) from `rng`.

    The exponential multiplies the total per-station power p_t: it absorbs
    the communication/sensing beam split of an interfering station in one
    moment-matched unit-mean variable.
    """
    return rng.standard_exponential(size)

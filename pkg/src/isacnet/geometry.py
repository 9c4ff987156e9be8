"""HPPP deployment sampling and the closed-form distance laws built on it.

Deployments live in a finite disk window around the origin; the window
radius policy (`required_radius`) bounds both the probability of realizing
too few points and the interference power neglected beyond the window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .specfun import gamma_reg_lower

__all__ = [
    "Realization",
    "OrderedDistances",
    "InsufficientPointsError",
    "sample_hppp",
    "nearest_k",
    "pdf_kth_distance",
    "pdf_eta",
    "required_radius",
]


class InsufficientPointsError(RuntimeError):
    """A realization holds fewer points than the caller needs."""


@dataclass(frozen=True)
class Realization:
    """One sampled deployment: point coordinates in meters, disk window."""

    points: np.ndarray          # shape (n, 2)
    window_radius: float
    density: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must have shape (n, 2)")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]


@dataclass(frozen=True)
class OrderedDistances:
    """Ascending origin distances of selected points."""

    distances: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.distances, dtype=float)
        if d.ndim != 1:
            raise ValueError("distances must be 1-D")
        if len(d) and (np.any(d <= 0) or np.any(np.diff(d) < 0)):
            raise ValueError("distances must be positive and non-decreasing")
        object.__setattr__(self, "distances", d)

    def __len__(self):
        return len(self.distances)

    def __getitem__(self, i):
        return self.distances[i]


def _rng_from(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(key=seed))


def sample_hppp(lam, window_radius, seed):
    """Sample a homogeneous PPP of intensity lam (points/m^2) in a disk.

    The point count is Poisson(lam * pi * R^2) and positions are uniform in
    the disk.  `seed` may be an integer or a numpy Generator; an integer
    gives a deterministic Philox-backed draw.
    """
    if lam <= 0 or window_radius <= 0:
        raise ValueError("lam and window_radius must be positive")
    rng = _rng_from(seed)
    mean = lam * math.pi * window_radius ** 2
    n = rng.poisson(mean)
    radius = window_radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    angle = rng.uniform(0.0, 2.0 * math.pi, n)
    pts = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])
    return Realization(points=pts, window_radius=float(window_radius),
                       density=float(lam))


def nearest_k(realization, k):
    """The k smallest origin distances of a realization, ascending."""
    if k < 1:
        raise ValueError("k must be >= 1")
    pts = realization.points
    if len(pts) < k:
        raise InsufficientPointsError(
            f"realization has {len(pts)} points, need {k}; enlarge the window")
    d = np.hypot(pts[:, 0], pts[:, 1])
    sel = np.partition(d, k - 1)[:k]
    sel.sort()
    return OrderedDistances(distances=sel)


def pdf_kth_distance(r, k, lam):
    """PDF of the distance from the origin to the k-th nearest point.

    f(r) = 2 (lam pi r^2)^k exp(-lam pi r^2) / (Gamma(k) r); for k = 1 this
    is the familiar 2 pi lam r exp(-pi lam r^2).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if lam <= 0:
        raise ValueError("lam must be positive")
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("r must be positive")
    u = lam * math.pi * r ** 2
    out = 2.0 * np.exp(k * np.log(u) - u - gammaln(k)) / r
    return float(out) if out.ndim == 0 else out


def pdf_eta(eta, n_cluster):
    """PDF of the nearest-to-farthest distance ratio within an n-point cluster.

    f(eta) = 2 (n-1) eta (1 - eta^2)^(n-2) on [0, 1]; undefined for a
    single-point cluster (the ratio degenerates to 1).
    """
    if n_cluster == 1:
        raise ValueError("distance ratio is degenerate for a 1-point cluster")
    if n_cluster < 2:
        raise ValueError("cluster size must be >= 2")
    eta = np.asarray(eta, dtype=float)
    if np.any(eta < 0) or np.any(eta > 1):
        raise ValueError("eta must lie in [0, 1]")
    out = 2.0 * (n_cluster - 1) * eta * (1.0 - eta ** 2) ** (n_cluster - 2)
    return float(out) if out.ndim == 0 else out


def _poisson_cdf(k_max, mean):
    """P[Poisson(mean) <= k_max]."""
    if k_max < 0:
        return 0.0
    return 1.0 - gamma_reg_lower(k_max + 1.0, mean)


def required_radius(lam, min_points, tail_prob, *, beta=4.0,
                    interference_ratio=1e-4, mean_count_floor=500.0,
                    count_margin=10.0):
    """Smallest window radius satisfying the truncation policy.

    Three constraints, the max wins:
      * P[Poisson(lam pi R^2) < min_points] <= tail_prob,
      * mean count lam pi R^2 >= max(mean_count_floor,
        count_margin * min_points),
      * expected interference from beyond R (integral of 2 pi lam r^(1-beta),
        closed form for beta > 2) below `interference_ratio` times the
        expected in-window interference seen from the cluster edge.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    if min_points < 0:
        raise ValueError("min_points must be >= 0")
    if not 0 < tail_prob < 1:
        raise ValueError("tail_prob must be in (0, 1)")
    if beta <= 2:
        raise ValueError("beta must exceed 2 for a finite interference tail")

    mean_floor = max(mean_count_floor, count_margin * min_points)

    mean_tail = 0.0
    if min_points > 0:
        # invert the Poisson tail by bisection on the mean
        lo_m, hi_m = float(min_points), float(min_points)
        while _poisson_cdf(min_points - 1, hi_m) > tail_prob:
            hi_m *= 2.0
        for _ in range(200):
            mid = 0.5 * (lo_m + hi_m)
            if _poisson_cdf(min_points - 1, mid) > tail_prob:
                lo_m = mid
            else:
                hi_m = mid
            if hi_m - lo_m <= 1e-9 * hi_m:
                break
        mean_tail = hi_m

    # interference floor: tail/in-window ratio rho gives R = rbar * ((1+rho)/rho)^(1/(beta-2))
    rbar = math.sqrt(max(min_points, 1) / (math.pi * lam))
    r_interf = rbar * ((1.0 + interference_ratio) / interference_ratio) ** (1.0 / (beta - 2.0))

    mean_needed = max(mean_floor, mean_tail)
    r_count = math.sqrt(mean_needed / (math.pi * lam))
    return max(r_count, r_interf)

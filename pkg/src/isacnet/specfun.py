"""Special functions and adaptive quadrature underlying the analytic expressions.

Everything here is pure and deterministic: incomplete Beta / Gamma kernels
evaluated by continued fractions (vectorized over numpy arrays), plus a
Gauss-Kronrod adaptive integrator and a log-substitution engine for
semi-infinite integrals.  Integrands passed to the integrators must accept
1-D numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = [
    "QuadratureSpec",
    "ConvergenceError",
    "DEFAULT_QUAD",
    "PHYSICAL_QUAD",
    "beta_complete",
    "beta_incomplete",
    "gamma_reg_lower",
    "integrate_finite",
    "integrate_semi_infinite",
]

_EPS = 3e-14
_TINY = 1e-300


class ConvergenceError(ArithmeticError):
    """Raised when an adaptive integral exhausts its subdivision budget.

    Carries the best estimate and the achieved error bound so callers can
    decide whether the partial answer is still usable.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance/budget contract for the adaptive integrators."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 10_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be > 0")
        if self.abs_tol < 0:
            raise ValueError("abs_tol must be >= 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


# Default for special-function identities; looser one for composed physical
# integrals where the acceptance tolerances are percent-level anyway.
DEFAULT_QUAD = QuadratureSpec()
PHYSICAL_QUAD = QuadratureSpec(rel_tol=1e-6, abs_tol=1e-12, max_subdivisions=4000)


def _prepare(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def beta_complete(a, b):
    """Complete Beta function B(a, b) for positive a, b (vectorized)."""
    a, a_scalar = _prepare(a)
    b, b_scalar = _prepare(b)
    if np.any(a <= 0) or np.any(b <= 0):
        raise ValueError("beta_complete requires a > 0 and b > 0")
    out = np.exp(gammaln(a) + gammaln(b) - gammaln(a + b))
    return float(out) if (a_scalar and b_scalar) else out


def _betacf(a, b, x, max_iter=500):
    """Continued fraction for the regularized incomplete Beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    np.copyto(d, _TINY, where=np.abs(d) < _TINY)
    d = 1.0 / d
    h = d.copy()
    done = np.zeros(x.shape, dtype=bool)
    for m in range(1, max_iter + 1):
        m2 = 2.0 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        np.copyto(d, _TINY, where=np.abs(d) < _TINY)
        c = 1.0 + aa / c
        np.copyto(c, _TINY, where=np.abs(c) < _TINY)
        d = 1.0 / d
        h = h * d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        np.copyto(d, _TINY, where=np.abs(d) < _TINY)
        c = 1.0 + aa / c
        np.copyto(c, _TINY, where=np.abs(c) < _TINY)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        done |= np.abs(delta - 1.0) < _EPS
        if done.all():
            break
    return h


def beta_incomplete(x, a, b):
    """Non-regularized incomplete Beta, int_0^x t^(a-1) (1-t)^(b-1) dt.

    Uses the continued fraction directly for x below the split point
    (a+1)/(a+b+2) and the symmetry relation B(x,a,b) = B(a,b) - B(1-x,b,a)
    above it, which keeps the relative accuracy uniform near both endpoints.
    Integrable endpoint singularities (a < 1 or b < 1) are fine.
    """
    x, xs = _prepare(x)
    a, as_ = _prepare(a)
    b, bs = _prepare(b)
    scalar = xs and as_ and bs
    x, a, b = np.broadcast_arrays(x, a, b)
    x = np.array(x, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(a <= 0) or np.any(b <= 0):
        raise ValueError("beta_incomplete requires a > 0 and b > 0")
    if np.any(x < 0) or np.any(x > 1):
        raise ValueError("beta_incomplete requires 0 <= x <= 1")

    complete = beta_complete(a, b)
    complete = np.asarray(complete, dtype=float)
    reg = np.empty_like(x)

    interior = (x > 0) & (x < 1)
    direct = interior & (x < (a + 1.0) / (a + b + 2.0))
    swapped = interior & ~direct

    if direct.any():
        xa, aa, ba = x[direct], a[direct], b[direct]
        lbt = (gammaln(aa + ba) - gammaln(aa) - gammaln(ba)
               + aa * np.log(xa) + ba * np.log1p(-xa))
        reg[direct] = np.exp(lbt) * _betacf(aa, ba, xa) / aa
    if swapped.any():
        xa, aa, ba = x[swapped], a[swapped], b[swapped]
        lbt = (gammaln(aa + ba) - gammaln(aa) - gammaln(ba)
               + aa * np.log(xa) + ba * np.log1p(-xa))
        reg[swapped] = 1.0 - np.exp(lbt) * _betacf(ba, aa, 1.0 - xa) / ba

    reg[x == 0] = 0.0
    reg[x == 1] = 1.0
    out = reg * complete
    return float(out) if scalar else out


def gamma_reg_lower(s, x):
    """Regularized lower incomplete Gamma P(s, x), the CDF of Gamma(s, 1).

    Series expansion for x < s + 1, continued fraction for the upper tail
    otherwise (both vectorized).
    """
    s, ss = _prepare(s)
    x, xs = _prepare(x)
    scalar = ss and xs
    s, x = np.broadcast_arrays(s, x)
    s = np.asarray(s, dtype=float)
    x = np.array(x, dtype=float)
    if np.any(s <= 0):
        raise ValueError("gamma_reg_lower requires s > 0")
    if np.any(x < 0):
        raise ValueError("gamma_reg_lower requires x >= 0")

    out = np.zeros_like(x)
    use_series = (x > 0) & (x < s + 1.0)
    use_cf = x >= s + 1.0

    if use_series.any():
        sa, xa = s[use_series], x[use_series]
        ap = sa.copy()
        total = np.full_like(sa, 1.0) / sa
        term = total.copy()
        for _ in range(500):
            ap = ap + 1.0
            term = term * xa / ap
            total = total + term
            if np.all(np.abs(term) < np.abs(total) * _EPS):
                break
        out[use_series] = total * np.exp(-xa + sa * np.log(xa) - gammaln(sa))

    if use_cf.any():
        sa, xa = s[use_cf], x[use_cf]
        # Lentz continued fraction for Q(s, x); P = 1 - Q
        b = xa + 1.0 - sa
        c = np.full_like(xa, 1.0 / _TINY)
        d = 1.0 / np.where(np.abs(b) < _TINY, _TINY, b)
        h = d.copy()
        for i in range(1, 500):
            an = -i * (i - sa)
            b = b + 2.0
            d = an * d + b
            np.copyto(d, _TINY, where=np.abs(d) < _TINY)
            c = b + an / c
            np.copyto(c, _TINY, where=np.abs(c) < _TINY)
            d = 1.0 / d
            delta = d * c
            h = h * delta
            if np.all(np.abs(delta - 1.0) < _EPS):
                break
        q = np.exp(-xa + sa * np.log(xa) - gammaln(sa)) * h
        out[use_cf] = 1.0 - q

    return float(out) if scalar else out


# Gauss-Kronrod 7-15 pair: Kronrod abscissae/weights on [-1, 1] (symmetric,
# positive half listed) and the embedded 7-point Gauss weights.
_XK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])          # 15 ascending nodes
_WEIGHTS_K = np.concatenate([_WK[:-1], _WK[::-1]])
_GAUSS_IDX = np.array([1, 3, 5, 7, 9, 11, 13])           # positions of G7 nodes
_WEIGHTS_G = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk_panels(f, a, b):
    """Evaluate the GK15 rule on each [a_i, b_i]; returns (values, errors)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    pts = mid[:, None] + half[:, None] * _NODES[None, :]
    y = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
    vk = (y * _WEIGHTS_K[None, :]).sum(axis=1) * half
    vg = (y[:, _GAUSS_IDX] * _WEIGHTS_G[None, :]).sum(axis=1) * half
    resabs = (np.abs(y) * _WEIGHTS_K[None, :]).sum(axis=1) * np.abs(half)
    err = np.abs(vk - vg)
    err = np.maximum(err, 50.0 * np.finfo(float).eps * resabs)
    return vk, err


def integrate_finite(f, lo, hi, spec=None, full_output=False):
    """Adaptive Gauss-Kronrod integral of f over (lo, hi).

    f must accept a 1-D ndarray of abscissae.  Endpoint singularities of
    order > -1 are handled by bisection toward the endpoint (the rule never
    evaluates f at lo or hi).  Raises ConvergenceError when the subdivision
    budget runs out before err <= max(abs_tol, rel_tol*|result|).
    """
    spec = spec or DEFAULT_QUAD
    lo = float(lo)
    hi = float(hi)
    if not lo < hi:
        raise ValueError("integrate_finite requires lo < hi")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("integrate_finite requires finite bounds")

    a = np.array([lo])
    b = np.array([hi])
    vals, errs = _gk_panels(f, a, b)
    used = 0
    while True:
        total = vals.sum()
        toterr = errs.sum()
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if toterr <= tol:
            break
        # refine every panel whose error exceeds its prorated share
        split = errs > tol / (2.0 * len(errs))
        if not split.any():
            split = errs == errs.max()
        n_split = int(split.sum())
        if used + n_split > spec.max_subdivisions:
            raise ConvergenceError(
                f"subdivision budget {spec.max_subdivisions} exhausted "
                f"(estimate {total:.6g}, error bound {toterr:.3g})",
                estimate=total, error_bound=toterr)
        used += n_split
        sa, sb = a[split], b[split]
        sm = 0.5 * (sa + sb)
        new_a = np.concatenate([a[~split], sa, sm])
        new_b = np.concatenate([b[~split], sm, sb])
        new_vals, new_errs = _gk_panels(f, np.concatenate([sa, sm]),
                                        np.concatenate([sm, sb]))
        vals = np.concatenate([vals[~split], new_vals])
        errs = np.concatenate([errs[~split], new_errs])
        a, b = new_a, new_b

    if full_output:
        return total, toterr, used
    return total


def integrate_semi_infinite(f, lo, spec=None, scale=None, full_output=False):
    """Integral of f over (lo, inf) via the substitution z = lo + e^u.

    The integrand is first probed on a wide logarithmic grid to locate its
    support (overridable with `scale`, a characteristic z - lo where the
    mass lives), then integrated over an expanding window: the upper and
    lower limits are extended until the estimated tail contribution drops
    below the tolerance.  Raises ConvergenceError for non-convergent tails.
    """
    spec = spec or DEFAULT_QUAD
    lo = float(lo)
    if lo < 0:
        raise ValueError("integrate_semi_infinite requires lo >= 0")

    def g(u):
        z = np.exp(u)
        return f(lo + z) * z

    if scale is not None:
        u0 = math.log(scale)
    else:
        probe_u = np.linspace(-42.0, 42.0, 169)
        with np.errstate(all="ignore"):
            probe = np.abs(np.asarray(g(probe_u), dtype=float))
        probe = np.nan_to_num(probe, nan=0.0, posinf=0.0, neginf=0.0)
        u0 = float(probe_u[int(np.argmax(probe))]) if probe.max() > 0 else 0.0

    width = 6.0
    step = 4.0
    window_spec = QuadratureSpec(rel_tol=spec.rel_tol,
                                 abs_tol=spec.abs_tol / 8.0,
                                 max_subdivisions=spec.max_subdivisions)
    used = 0

    def window(ua, ub):
        nonlocal used
        v, e, n = integrate_finite(g, ua, ub, window_spec, full_output=True)
        used += n
        if used > spec.max_subdivisions:
            raise ConvergenceError(
                "subdivision budget exhausted across windows",
                estimate=acc, error_bound=acc_err)
        return v, e

    acc, acc_err = 0.0, 0.0
    v, e = window(u0 - width, u0 + width)
    acc += v
    acc_err += e

    for direction in (+1, -1):
        edge = u0 + direction * width
        quiet = 0
        last = 0.0
        for k in range(80):
            ua = edge if direction > 0 else edge - step
            ub = edge + step if direction > 0 else edge
            v, e = window(ua, ub)
            acc += v
            acc_err += e
            last = v
            edge += direction * step
            if abs(v) <= max(spec.abs_tol, spec.rel_tol * abs(acc)) / 8.0:
                quiet += 1
                if quiet >= 2:
                    break
            else:
                quiet = 0
        else:
            raise ConvergenceError(
                "tail of semi-infinite integral did not converge",
                estimate=acc, error_bound=acc_err)
        acc_err += abs(last)  # proxy for the truncated tail beyond the window

    if full_output:
        return acc, acc_err, used
    return acc

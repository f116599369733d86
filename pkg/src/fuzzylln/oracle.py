"""Slow brute-force reference computations for tests.

Nothing here reuses the closed-form paths it is meant to check: the
Hausdorff metric is computed as a max of directed sup-inf distances over
discretized sets, the uniform metric as a max over a dense alpha grid,
Aumann integrals by enumerating discretized selections, and covariances
as ``E[xy] - E[x] E[y]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fuzzylln.fuzzy import FuzzyNumber
from fuzzylln.intervals import Interval


@dataclass(frozen=True)
class Resolution:
    spatial_step: float = 1e-3
    alpha_step: float = 1e-3
    draws: int = 1000

    def __post_init__(self):
        if self.spatial_step <= 0 or self.alpha_step <= 0:
            raise ValueError("resolution steps must be positive")


def _discretize(a: Interval, step: float) -> np.ndarray:
    n = max(1, int(math.ceil((a.hi - a.lo) / step)))
    return np.linspace(a.lo, a.hi, n + 1)


def _directed(xs: np.ndarray, ys: np.ndarray) -> float:
    """``sup_{x in xs} inf_{y in ys} |x - y|`` with ``ys`` sorted."""
    j = np.clip(np.searchsorted(ys, xs), 1, len(ys) - 1) if len(ys) > 1 else np.zeros(len(xs), int)
    near = np.abs(xs - ys[j])
    if len(ys) > 1:
        near = np.minimum(near, np.abs(xs - ys[j - 1]))
    return float(near.max())


def hausdorff_bruteforce(a: Interval, b: Interval, res: Resolution = Resolution()) -> float:
    xa = _discretize(a, res.spatial_step)
    xb = _discretize(b, res.spatial_step)
    return max(_directed(xa, xb), _directed(xb, xa))


def _levels(v: FuzzyNumber, grid: np.ndarray):
    if v.mode == "pwl":
        return np.interp(grid, v.alphas, v.lo), np.interp(grid, v.alphas, v.hi)
    j = np.array([min(i for i, a in enumerate(v.alphas) if a >= q) for q in grid])
    return v.lo[j], v.hi[j]


def d_h_infty_bruteforce(u: FuzzyNumber, v: FuzzyNumber, res: Resolution = Resolution()) -> float:
    """Max of the level-wise Hausdorff distance over a dense grid of (0, 1]."""
    n = int(math.ceil(1.0 / res.alpha_step))
    grid = np.linspace(1.0 / n, 1.0, n)
    ulo, uhi = _levels(u, grid)
    vlo, vhi = _levels(v, grid)
    return float(np.max(np.maximum(np.abs(ulo - vlo), np.abs(uhi - vhi))))


def aumann_bruteforce(interval_samples, selection_step: float = 1e-2) -> Interval:
    """Hull of all averages ``(1/N) sum_i f(omega_i)`` over discretized selections.

    The sample space is the listed points with equal weight; each selection
    picks one grid point of every interval.  The set of achievable sums is
    built one sample at a time and snapped to a lattice of pitch
    ``selection_step`` so it grows additively, which moves the average by at
    most ``selection_step / 2``.
    """
    samples = list(interval_samples)
    if not samples:
        raise ValueError("need at least one interval sample")
    sums = np.array([0], dtype=np.int64)
    for a in samples:
        grid = np.round(_discretize(a, selection_step) / selection_step).astype(np.int64)
        sums = np.unique(np.add.outer(sums, grid).ravel())
    avg = sums * selection_step / len(samples)
    return Interval(avg.min(), avg.max())


def cov_bruteforce(xs, ys) -> float:
    """Unbiased covariance ``n/(n-1) (E[xy] - E[x] E[y])``."""
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    if len(xs) != len(ys):
        raise ValueError("length mismatch")
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two observations")
    # shift by the first observation; covariance is translation invariant
    x0, y0 = xs[0], ys[0]
    xs = [x - x0 for x in xs]
    ys = [y - y0 for y in ys]
    exy = math.fsum(x * y for x, y in zip(xs, ys)) / n
    ex = math.fsum(xs) / n
    ey = math.fsum(ys) / n
    return n / (n - 1) * (exy - ex * ey)

"""Sequences of fuzzy random variables ``X^1, X^2, ...`` on a common sample space.

A sample point is an integer ``omega`` (a 64-bit seed).  Everything drawn
for a given ``omega`` comes from one generator seeded by it, and draws for
index ``k`` are the ``k``-th element of a prefix-stable stream, so
``sample(model, k, omega)`` does not depend on how many other indices are
requested alongside it.

All four families are triangular at every index:

``iid-triangular``
    ``tri(c + s Z_k, l, r)``, ``Z_k`` i.i.d. standard normal.
``cosine-center``
    ``tri(c + s cos(kU), l, r)`` with one phase ``U ~ Uniform(0, 2 pi)``
    shared by every index.  Pairwise uncorrelated but dependent.
``cosine-center-spread``
    symmetric, center ``c + s cos(kU)``, spread ``w0 (1 + b0 sin(kU))``.
``shared-shift-correlated``
    ``tri(c + s Z, l, r)`` with one ``Z`` for all indices; the negative control.

``s`` is the ``noise`` amplitude (default 1).  Zero spreads and zero noise
give a crisp deterministic model.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from fuzzylln.fuzzy import FuzzyNumber, eval_levels, uniform_grid
from fuzzylln.intervals import Direction, support

IID = "iid-triangular"
COSINE = "cosine-center"
COSINE_SPREAD = "cosine-center-spread"
SHARED = "shared-shift-correlated"
KINDS = (IID, COSINE, COSINE_SPREAD, SHARED)
UNCORRELATED_KINDS = (IID, COSINE, COSINE_SPREAD)


@dataclass(frozen=True)
class ModelSpec:
    kind: str
    center: float = 0.0
    left: float = 1.0
    right: float = 1.0
    w0: float = 1.0
    beta0: float = 0.5
    noise: float = 1.0
    grid_size: int = 101

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}; expected one of {KINDS}")
        if self.left < 0 or self.right < 0 or self.w0 < 0:
            raise ValueError("spreads must be nonnegative")
        if not 0 <= self.beta0 < 1:
            raise ValueError("modulation depth beta0 must lie in [0, 1)")
        if self.noise < 0:
            raise ValueError("noise amplitude must be nonnegative")
        if self.grid_size < 2:
            raise ValueError("grid_size must be at least 2")

    @property
    def alphas(self) -> np.ndarray:
        return uniform_grid(self.grid_size)


def derive_omega(master_seed: int, index: int) -> int:
    """Sample point for replication/draw ``index`` under ``master_seed``.

    Derived rather than sequential, so any subset of indices can be
    produced in any order.
    """
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(int(index),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def draw_omegas(seed: int, n_draws: int) -> list:
    return [derive_omega(seed, i) for i in range(n_draws)]


def phase(omega: int) -> float:
    """The shared ``U ~ Uniform(0, 2 pi)`` of the cosine families."""
    return float(np.random.default_rng(omega).uniform(0.0, 2.0 * math.pi))


def shocks(omega: int, n: int) -> np.ndarray:
    """``Z_1, ..., Z_n`` for the i.i.d. family (prefix-stable in ``n``)."""
    return np.random.default_rng(omega).standard_normal(n)


def triangular_params(model: ModelSpec, n: int, omega: int):
    """Center, left and right spread of ``X^1(omega), ..., X^n(omega)``."""
    k = np.arange(1, n + 1, dtype=float)
    if model.kind == IID:
        centers = model.center + model.noise * shocks(omega, n)
        return centers, np.full(n, model.left), np.full(n, model.right)
    if model.kind == SHARED:
        z = shocks(omega, 1)[0]
        centers = np.full(n, model.center + model.noise * z)
        return centers, np.full(n, model.left), np.full(n, model.right)
    u = phase(omega)
    centers = model.center + model.noise * np.cos(k * u)
    if model.kind == COSINE:
        return centers, np.full(n, model.left), np.full(n, model.right)
    spread = model.w0 * (1.0 + model.beta0 * np.sin(k * u))
    return centers, spread, spread


def _levels_from_params(alphas, centers, left, right):
    w = 1.0 - alphas
    lo = centers[..., None] - w * left[..., None]
    hi = centers[..., None] + w * right[..., None]
    return lo, hi


def sample_levels(model: ModelSpec, n: int, omega: int):
    """Knot endpoints of ``X^1..X^n`` at ``omega``, each of shape ``(n, knots)``."""
    return _levels_from_params(model.alphas, *triangular_params(model, n, omega))


def sample(model: ModelSpec, k: int, omega: int) -> FuzzyNumber:
    if k < 1:
        raise ValueError("sequence index k starts at 1")
    lo, hi = sample_levels(model, k, omega)
    return FuzzyNumber(model.alphas, lo[-1], hi[-1], "pwl")


def expectation_levels(model: ModelSpec, ks) -> tuple:
    """Knot endpoints of ``E[X^k]`` for each ``k`` in ``ks``.

    Levelwise Aumann expectation of an interval-valued variable is the
    interval of endpoint expectations; ``E cos(kU) = E sin(kU) = 0`` for
    integer ``k >= 1`` and ``E Z = 0``.
    """
    ks = np.atleast_1d(np.asarray(ks))
    n = len(ks)
    centers = np.full(n, float(model.center))
    if model.kind == COSINE_SPREAD:
        spread = np.full(n, float(model.w0))
        return _levels_from_params(model.alphas, centers, spread, spread)
    return _levels_from_params(
        model.alphas, centers, np.full(n, float(model.left)), np.full(n, float(model.right))
    )


def analytic_expectation(model: ModelSpec, k: int) -> FuzzyNumber:
    lo, hi = expectation_levels(model, [k])
    return FuzzyNumber(model.alphas, lo[0], hi[0], "pwl")


def mc_expectation(model: ModelSpec, k: int, n_draws: int, seed: int) -> FuzzyNumber:
    """Levelwise average of ``X^k`` over ``n_draws`` independent sample points."""
    if n_draws < 2:
        raise ValueError("n_draws must be at least 2")
    sum_lo = np.zeros(model.grid_size)
    sum_hi = np.zeros(model.grid_size)
    for omega in draw_omegas(seed, n_draws):
        lo, hi = sample_levels(model, k, omega)
        sum_lo += lo[-1]
        sum_hi += hi[-1]
    return FuzzyNumber(model.alphas, sum_lo / n_draws, sum_hi / n_draws, "pwl")


def support_sample(model: ModelSpec, k: int, alpha: float, direction: int, omega: int) -> float:
    """``s(x*, X^k_alpha(omega))``."""
    return support(direction, sample(model, k, omega).level_set(alpha))


def variance_of_support(model: ModelSpec, k, alpha: float, direction: int) -> float:
    """Closed-form ``Var s(x*, X^k_alpha)``; the same for both directions.

    None of the families has an index-dependent variance, so ``k`` may be
    an array and the scalar result broadcasts against it.
    """
    Direction(direction)
    s2 = model.noise ** 2
    if model.kind in (IID, SHARED):
        return s2
    if model.kind == COSINE:
        return s2 / 2.0
    b = (1.0 - alpha) * model.w0 * model.beta0
    # cos(kU) and sin(kU) are orthogonal with second moments 1/2
    return s2 / 2.0 + b * b / 2.0


def variance_condition(model: ModelSpec, n: int, alpha: float, direction: int) -> float:
    """``(1/n^2) sum_{k<=n} Var s(x*, X^k_alpha)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    ks = np.arange(1, n + 1)
    terms = np.broadcast_to(variance_of_support(model, ks, alpha, direction), ks.shape)
    return math.fsum(terms.tolist()) / (n * n)


# --- covariance estimation ---------------------------------------------------


@dataclass(frozen=True)
class CovReport:
    k: int
    m: int
    alpha: float
    dir: int
    cov_hat: float
    std_err: float
    n_samples: int
    flagged: bool = False
    level: str = "alpha"

    def __post_init__(self):
        if self.std_err < 0:
            raise ValueError("std_err must be nonnegative")


def sample_cov(xs, ys):
    """Unbiased sample covariance and its plug-in standard error.

    Data are shifted by their first element before centering, so constant
    streams give exactly zero.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("xs and ys must be one-dimensional of equal length")
    n = len(x)
    if n < 2:
        raise ValueError("need at least two observations")
    x = x - x[0]
    y = y - y[0]
    dx = x - x.mean()
    dy = y - y.mean()
    prod = dx * dy
    cov = prod.sum() / (n - 1)
    se = math.sqrt(prod.var(ddof=1) / n)
    return float(cov), float(se)


def _param_draws(model: ModelSpec, max_k: int, n_draws: int, seed: int):
    params = [triangular_params(model, max_k, om) for om in draw_omegas(seed, n_draws)]
    return tuple(np.stack([p[i] for p in params]) for i in range(3))


def _support_matrix(model, params, alpha, direction, right_limit, chunk=8192):
    """Support values of every drawn ``X^k`` at one level, shape ``(draws, max_k)``.

    Levels go through the fuzzy-number evaluation so that ``v_alpha`` and
    ``v_{alpha+}`` are both computed from the knot representation.
    """
    centers, left, right = params
    out = np.empty(centers.shape)
    alphas = model.alphas
    for start in range(0, centers.shape[0], chunk):
        sl = slice(start, start + chunk)
        lo, hi = _levels_from_params(alphas, centers[sl], left[sl], right[sl])
        llo, lhi = eval_levels(alphas, lo, hi, "pwl", alpha, right_limit=right_limit)
        out[sl] = lhi if Direction(direction) is Direction.PLUS else -llo
    return out


def support_streams(model: ModelSpec, ks, alpha: float, direction: int, n_draws: int,
                    seed: int, level: str = "alpha") -> np.ndarray:
    """Support values ``s(x*, X^k_alpha)`` for ``k`` in ``ks`` over shared draws."""
    ks = list(ks)
    params = _param_draws(model, max(ks), n_draws, seed)
    mat = _support_matrix(model, params, alpha, direction, level == "alpha+")
    return mat[:, [k - 1 for k in ks]]


def estimate_cov(model: ModelSpec, k: int, m: int, alpha: float, direction: int,
                 n_draws: int, seed: int, level: str = "alpha", z: float = 4.0) -> CovReport:
    if k == m:
        raise ValueError("k == m is a variance, not a covariance")
    if n_draws < 30:
        raise ValueError("n_draws must be at least 30")
    streams = support_streams(model, [k, m], alpha, direction, n_draws, seed, level)
    cov, se = sample_cov(streams[:, 0], streams[:, 1])
    return CovReport(k, m, float(alpha), int(direction), cov, se, n_draws, abs(cov) > z * se, level)


def uncorrelatedness_report(model: ModelSpec, max_k: int, alpha_grid, n_draws: int,
                            seed: int, z: float = 4.0) -> list:
    """Pairwise support covariances for all ``k < m <= max_k``.

    Each alpha of the grid is used at ``v_alpha`` when it lies in (0, 1]
    and at ``v_{alpha+}`` when it lies in [0, 1).  Only same-direction
    pairs are reported.
    """
    if max_k < 2:
        raise ValueError("max_k must be at least 2")
    params = _param_draws(model, max_k, n_draws, seed)
    reports = []
    for alpha in alpha_grid:
        alpha = float(alpha)
        levels = [lv for lv, ok in (("alpha", alpha > 0), ("alpha+", alpha < 1)) if ok]
        for level in levels:
            for d in Direction.both():
                mat = _support_matrix(model, params, alpha, d, level == "alpha+")
                for k in range(1, max_k + 1):
                    for m in range(k + 1, max_k + 1):
                        cov, se = sample_cov(mat[:, k - 1], mat[:, m - 1])
                        reports.append(CovReport(k, m, alpha, int(d), cov, se, n_draws,
                                                 abs(cov) > z * se, level))
    return reports


COV_COLUMNS = ("k", "m", "alpha", "dir", "cov_hat", "std_err", "n_samples", "flagged", "level")


def write_cov_csv(reports, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COV_COLUMNS)
        for r in reports:
            w.writerow([r.k, r.m, repr(r.alpha), r.dir, repr(r.cov_hat), repr(r.std_err),
                        r.n_samples, int(r.flagged), r.level])


def read_cov_csv(path) -> list:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [
        CovReport(int(r["k"]), int(r["m"]), float(r["alpha"]), int(r["dir"]),
                  float(r["cov_hat"]), float(r["std_err"]), int(r["n_samples"]),
                  bool(int(r["flagged"])), r["level"])
        for r in rows
    ]

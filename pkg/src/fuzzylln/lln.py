"""Weak-law experiments for sequences of fuzzy random variables.

For a model and a sample size ``n`` the quantity of interest is

    D_n = d_H^inf( (1/n) sum_k X^k, (1/n) sum_k E[X^k] )

and the weak law asserts ``P(D_n > eps) -> 0``.  Replication ``r`` of a
study uses the sample point ``derive_omega(master_seed, r)`` for every ``n``
in the schedule, so a whole schedule is read off one running average.
"""
from __future__ import annotations

import csv
import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq
from scipy.stats import binomtest

from fuzzylln.fuzzy import (
    FuzzyNumber,
    d_h_infty,
    epsilon_partition,
    eval_levels,
)
from fuzzylln.intervals import Direction
from fuzzylln.models import (
    COSINE,
    ModelSpec,
    derive_omega,
    expectation_levels,
    sample_levels,
    variance_condition,
)


@dataclass(frozen=True)
class TrialResult:
    n: int
    omega: int
    distance: float

    def __post_init__(self):
        if self.distance < 0:
            raise ValueError("distance must be nonnegative")


def _running_means(model: ModelSpec, schedule, omega: int):
    """Sample-mean and expectation-mean knot endpoints at each ``n`` in ``schedule``.

    Minkowski sums on the shared knot grid are endpoint sums, so the
    running sum is a cumulative sum over the index axis.
    """
    lo, hi = sample_levels(model, max(schedule), omega)
    elo, ehi = _expectation_means(model, tuple(schedule))
    return _prefix_means((lo, hi), schedule) + (elo, ehi)


def _prefix_means(arrays, schedule):
    idx = np.asarray(schedule) - 1
    scale = 1.0 / np.asarray(schedule, dtype=float)[:, None]
    return tuple(np.cumsum(a, axis=0)[idx] * scale for a in arrays)


@functools.lru_cache(maxsize=32)
def _expectation_means(model: ModelSpec, schedule: tuple):
    elo, ehi = expectation_levels(model, np.arange(1, max(schedule) + 1))
    out = _prefix_means((elo, ehi), schedule)
    for a in out:
        a.setflags(write=False)
    return out


def sample_mean_pair(model: ModelSpec, n: int, omega: int):
    """``((1/n) sum X^k, (1/n) sum E[X^k])`` as fuzzy numbers."""
    slo, shi, elo, ehi = _running_means(model, [n], omega)
    a = model.alphas
    return FuzzyNumber(a, slo[0], shi[0]), FuzzyNumber(a, elo[0], ehi[0])


def _trial_distances(model: ModelSpec, schedule, omega: int) -> np.ndarray:
    slo, shi, elo, ehi = _running_means(model, schedule, omega)
    a = model.alphas
    return np.array([
        d_h_infty(FuzzyNumber(a, slo[i], shi[i]), FuzzyNumber(a, elo[i], ehi[i]))
        for i in range(len(schedule))
    ])


def run_trial(model: ModelSpec, n: int, omega: int) -> TrialResult:
    if n < 1:
        raise ValueError("n must be at least 1")
    return TrialResult(n, omega, float(_trial_distances(model, [n], omega)[0]))


def wilson_interval(successes: int, trials: int, level: float = 0.95):
    ci = binomtest(int(successes), int(trials)).proportion_ci(confidence_level=level, method="wilson")
    return float(ci.low), float(ci.high)


def _replicate(fn, replications, master_seed, workers):
    omegas = [derive_omega(master_seed, r) for r in range(replications)]
    if workers <= 1:
        return [fn(om) for om in omegas]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, omegas))


def _distance_table(model, schedule, replications, master_seed, workers):
    rows = _replicate(lambda om: _trial_distances(model, schedule, om),
                      replications, master_seed, workers)
    return np.vstack(rows)


def tail_probability(model: ModelSpec, n: int, eps: float, replications: int,
                     master_seed: int, workers: int = 1):
    """Estimate ``P(D_n > eps)`` with a 95% Wilson interval."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if replications < 1:
        raise ValueError("replications must be at least 1")
    d = _distance_table(model, [n], replications, master_seed, workers)[:, 0]
    hits = int(np.count_nonzero(d > eps))
    return hits / replications, wilson_interval(hits, replications)


def chebyshev_bound(model: ModelSpec, n: int, eps: float) -> float:
    """Worst case over knots and directions of ``variance_condition / eps^2``.

    Not capped at 1, so a vacuous bound is visible as such.
    """
    return max(
        variance_condition(model, n, float(a), d) / eps ** 2
        for a in model.alphas for d in Direction.both()
    )


def exact_tail_cosine(n: int, eps: float, quadrature_points: int = 200_000) -> float:
    """``P(|(1/n) sum_{k<=n} cos(kU)| > eps)`` for ``U ~ Uniform(0, 2 pi)``.

    The Dirichlet-kernel closed form is scanned on a fine grid of
    ``(0, pi]`` (the law is symmetric about ``pi``), every sign change of
    ``|f| - eps`` is refined with Brent's method, and the measure of the
    exceedance set is summed cell by cell.
    """
    if n < 1:
        raise ValueError("n must be at least 1")

    def f(u):
        u = np.asarray(u, dtype=float)
        return (np.sin((n + 0.5) * u) / (2.0 * np.sin(0.5 * u)) - 0.5) / n

    def g(u):
        return abs(float(f(u))) - eps

    m = max(int(quadrature_points), 64 * n)
    grid = np.linspace(0.0, math.pi, m + 1)[1:]
    vals = np.abs(f(grid)) - eps
    # f -> 1 as u -> 0
    pts = [0.0]
    u_prev, v_prev = 0.0, 1.0 - eps
    for u, v in zip(grid, vals):
        if (v_prev > 0) != (v > 0):
            a = u_prev if u_prev > 0 else 1e-9 * u
            pts.append(brentq(g, a, u, xtol=1e-15) if g(a) * g(u) < 0 else u)
        u_prev, v_prev = u, v
    pts.append(math.pi)
    measure = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        if b > a and g(0.5 * (a + b)) > 0:
            measure += b - a
    return min(1.0, max(0.0, measure / math.pi))


@dataclass(frozen=True)
class StudyRow:
    n: int
    eps: float
    replications: int
    p_hat: float
    ci_lo: float
    ci_hi: float
    mean_distance: float
    chebyshev_bound: float
    oracle_tail: Optional[float] = None

    def __post_init__(self):
        if not (0.0 <= self.ci_lo <= self.p_hat <= self.ci_hi <= 1.0):
            raise ValueError("need 0 <= ci_lo <= p_hat <= ci_hi <= 1")

    @property
    def half_width(self) -> float:
        return max(self.p_hat - self.ci_lo, self.ci_hi - self.p_hat)


STUDY_COLUMNS = ("n", "eps", "replications", "p_hat", "ci_lo", "ci_hi",
                 "mean_distance", "chebyshev_bound", "oracle_tail")


@dataclass(frozen=True)
class StudyResult:
    rows: tuple

    @property
    def schedule(self):
        return [r.n for r in self.rows]

    @property
    def p_hat(self):
        return np.array([r.p_hat for r in self.rows])

    def converged(self, target: float = 0.02, factor: float = 5.0) -> bool:
        """Tail at the largest ``n`` below ``target``, below the tail at the
        smallest ``n`` divided by ``factor``, with disjoint Wilson intervals.
        """
        first, last = self.rows[0], self.rows[-1]
        return (
            last.p_hat < target
            and last.p_hat < first.p_hat / factor
            and last.ci_hi < first.ci_lo
        )

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(STUDY_COLUMNS)
            for r in self.rows:
                w.writerow([
                    r.n, repr(r.eps), r.replications, repr(r.p_hat), repr(r.ci_lo),
                    repr(r.ci_hi), repr(r.mean_distance), repr(r.chebyshev_bound),
                    "" if r.oracle_tail is None else repr(r.oracle_tail),
                ])

    @classmethod
    def from_csv(cls, path) -> "StudyResult":
        with open(path, newline="") as fh:
            rows = [
                StudyRow(
                    int(r["n"]), float(r["eps"]), int(r["replications"]), float(r["p_hat"]),
                    float(r["ci_lo"]), float(r["ci_hi"]), float(r["mean_distance"]),
                    float(r["chebyshev_bound"]),
                    None if r["oracle_tail"] == "" else float(r["oracle_tail"]),
                )
                for r in csv.DictReader(fh)
            ]
        return cls(tuple(rows))

    def write_plot_data(self, path) -> None:
        """Whitespace-separated ``n p_hat chebyshev_bound`` triples."""
        with open(path, "w") as fh:
            for r in self.rows:
                fh.write(f"{r.n} {r.p_hat!r} {r.chebyshev_bound!r}\n")

    def write_distance_data(self, path) -> None:
        """Whitespace-separated ``n mean_distance`` pairs."""
        with open(path, "w") as fh:
            for r in self.rows:
                fh.write(f"{r.n} {r.mean_distance!r}\n")


def _oracle_for(model: ModelSpec, n: int, eps: float) -> Optional[float]:
    # for fixed spreads the distance is |noise * mean cos(kU)|
    if model.kind != COSINE:
        return None
    if model.noise == 0:
        return 0.0
    return exact_tail_cosine(n, eps / model.noise)


def convergence_study(model: ModelSpec, schedule, eps: float, replications: int,
                      master_seed: int, workers: int = 1) -> StudyResult:
    schedule = [int(n) for n in schedule]
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] < 1:
        raise ValueError("schedule must be a nonempty strictly increasing list of n >= 1")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if replications < 1:
        raise ValueError("replications must be at least 1")
    table = _distance_table(model, schedule, replications, master_seed, workers)
    rows = []
    for i, n in enumerate(schedule):
        d = table[:, i]
        hits = int(np.count_nonzero(d > eps))
        lo, hi = wilson_interval(hits, replications)
        rows.append(StudyRow(
            n, float(eps), replications, hits / replications, lo, hi,
            float(np.mean(d)), chebyshev_bound(model, n, eps), _oracle_for(model, n, eps),
        ))
    return StudyResult(tuple(rows))


@dataclass(frozen=True)
class ScalarTails:
    """Tails of scalar support means ``(1/n) sum_k [s(x*, X^k_a) - E s(x*, X^k_a)]``.

    Arrays are indexed ``[knot, direction]`` with direction order ``(+1, -1)``.
    """

    n: int
    eps: float
    alphas: np.ndarray
    p_hat: np.ndarray
    half_width: np.ndarray
    bound: np.ndarray

    def dominated(self) -> bool:
        return bool(np.all(self.p_hat - self.half_width <= self.bound))


def scalar_support_tails(model: ModelSpec, n: int, eps: float, replications: int,
                         master_seed: int, workers: int = 1) -> ScalarTails:
    def one(om):
        slo, shi, elo, ehi = _running_means(model, [n], om)
        # support deviations: +1 -> hi gap, -1 -> -(lo gap)
        return np.stack([shi[0] - ehi[0], -(slo[0] - elo[0])], axis=-1)

    devs = np.stack(_replicate(one, replications, master_seed, workers))
    hits = np.count_nonzero(np.abs(devs) > eps, axis=0)
    p = hits / replications
    hw = np.empty_like(p)
    for idx in np.ndindex(hits.shape):
        lo, hi = wilson_interval(int(hits[idx]), replications)
        hw[idx] = max(p[idx] - lo, hi - p[idx])
    alphas = model.alphas
    bound = np.array([
        [variance_condition(model, n, float(a), d) / eps ** 2 for d in Direction.both()]
        for a in alphas
    ])
    return ScalarTails(n, eps, alphas, p, hw, bound)


@dataclass(frozen=True)
class DecompositionReport:
    """Terms of the bound ``D <= T1 + T2 + 2 T3`` over an eps-partition.

    ``level_term`` is the largest gap at the cuts ``a_k`` (k >= 1),
    ``right_limit_term`` the largest gap at the right limits ``a_{k-1}+``,
    ``partition_term`` twice the largest within-cell drift of the
    expectation mean.
    """

    distance: float
    level_term: float
    right_limit_term: float
    partition_term: float
    cuts: tuple = field(default=())

    @property
    def bound(self) -> float:
        return self.level_term + self.right_limit_term + self.partition_term

    @property
    def holds(self) -> bool:
        return self.distance <= self.bound

    @property
    def dominant(self) -> str:
        terms = {"level": self.level_term, "right_limit": self.right_limit_term,
                 "partition": self.partition_term}
        return max(terms, key=terms.get)


def decompose(u: FuzzyNumber, w: FuzzyNumber, eps: float) -> DecompositionReport:
    """Evaluate the partition bound for ``d_H^inf(u, w)`` using cuts built on ``w``."""
    part = epsilon_partition(w, eps)
    cuts = np.array(part.cuts)
    hi_cuts, lo_cuts = cuts[1:], cuts[:-1]

    def gap(x, y, q, plus):
        xl, xh = eval_levels(x.alphas, x.lo, x.hi, x.mode, q, right_limit=plus)
        yl, yh = eval_levels(y.alphas, y.lo, y.hi, y.mode, q, right_limit=plus)
        return np.maximum(np.abs(xl - yl), np.abs(xh - yh))

    t1 = float(np.max(gap(u, w, hi_cuts, False)))
    t2 = float(np.max(gap(u, w, lo_cuts, True)))
    wl, wh = eval_levels(w.alphas, w.lo, w.hi, w.mode, hi_cuts)
    pl, ph = eval_levels(w.alphas, w.lo, w.hi, w.mode, lo_cuts, right_limit=True)
    t3 = 2.0 * float(np.max(np.maximum(np.abs(wl - pl), np.abs(wh - ph))))
    return DecompositionReport(d_h_infty(u, w), t1, t2, t3, part.cuts)


def decomposition_diagnostic(model: ModelSpec, n: int, omega: int, eps: float) -> DecompositionReport:
    if eps <= 0:
        raise ValueError("eps must be positive")
    u, w = sample_mean_pair(model, n, omega)
    return decompose(u, w, eps)

"""Fuzzy numbers stored as finite families of nested alpha-level intervals.

A fuzzy number is kept as knot arrays ``alphas`` (``0 = a_0 < ... < a_m = 1``),
``lo`` and ``hi``.  Between knots the level map is either linearly
interpolated (``"pwl"``) or held constant on each half-open cell
``(a_{j-1}, a_j]`` (``"step"``), which makes ``alpha -> v_alpha``
left-continuous with genuine jumps in the right limits ``v_{alpha+}``.

In step mode the knot at alpha = 0 is never reached by a query in (0, 1];
it only records the stored support and is carried through arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from fuzzylln.intervals import Interval, hausdorff, norm_K

MODES = ("pwl", "step")
DEFAULT_KNOTS = 101


def uniform_grid(n_knots: int = DEFAULT_KNOTS) -> np.ndarray:
    if n_knots < 2:
        raise ValueError("an alpha grid needs at least the knots 0 and 1")
    return np.linspace(0.0, 1.0, n_knots)


def eval_levels(alphas, lo, hi, mode, query, right_limit=False):
    """Evaluate level endpoints of one or many fuzzy numbers.

    ``lo`` and ``hi`` may carry leading batch axes; the knot axis is last.
    ``query`` is a scalar or 1-d array of alphas in [0, 1].  With
    ``right_limit`` the right limit ``v_{q+}`` is returned instead of
    ``v_q`` (requires ``q < 1``).
    """
    alphas = np.asarray(alphas, dtype=float)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    q = np.asarray(query, dtype=float)
    if mode == "pwl":
        j = np.clip(np.searchsorted(alphas, q, side="right"), 1, len(alphas) - 1)
        left = j - 1
        t = (q - alphas[left]) / (alphas[j] - alphas[left])
        # convex-combination form reproduces knot values exactly at t = 0 and t = 1
        out_lo = (1.0 - t) * lo[..., left] + t * lo[..., j]
        out_hi = (1.0 - t) * hi[..., left] + t * hi[..., j]
        return out_lo, out_hi
    if mode == "step":
        side = "right" if right_limit else "left"
        j = np.searchsorted(alphas, q, side=side)
        if np.any(j >= len(alphas)):
            raise ValueError("right limit requested at alpha = 1")
        return lo[..., j], hi[..., j]
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class AlphaKnot:
    alpha: float
    level: Interval

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"knot alpha {self.alpha} outside [0, 1]")


@dataclass(frozen=True)
class AlphaPartition:
    cuts: tuple

    def __post_init__(self):
        cuts = tuple(float(c) for c in self.cuts)
        if len(cuts) < 2 or cuts[0] != 0.0 or cuts[-1] != 1.0:
            raise ValueError("partition must start at 0 and end at 1")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ValueError("partition cuts must be strictly increasing")
        object.__setattr__(self, "cuts", cuts)

    def __len__(self):
        return len(self.cuts)

    def cells(self):
        return list(zip(self.cuts[:-1], self.cuts[1:]))


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    reason: Optional[str] = None
    index: Optional[int] = None

    def __bool__(self):
        return self.valid


class FuzzyNumber:
    """Immutable knot representation of a fuzzy number on R.

    The constructor only checks shapes and finiteness so that malformed
    families can still be built and then diagnosed with :func:`check_valid`.
    """

    __slots__ = ("alphas", "lo", "hi", "mode")

    def __init__(self, alphas, lo, hi, mode: str = "pwl"):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        arrays = []
        for name, arr in (("alphas", alphas), ("lo", lo), ("hi", hi)):
            arr = np.array(arr, dtype=float)
            if arr.ndim != 1:
                raise ValueError(f"{name} must be one-dimensional")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite values")
            arr.setflags(write=False)
            arrays.append(arr)
        a, l, h = arrays
        if not (len(a) == len(l) == len(h)) or len(a) == 0:
            raise ValueError("alphas, lo and hi must be nonempty and of equal length")
        object.__setattr__(self, "alphas", a)
        object.__setattr__(self, "lo", l)
        object.__setattr__(self, "hi", h)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("FuzzyNumber is immutable")

    @classmethod
    def from_knots(cls, knots: Sequence[AlphaKnot], mode: str = "pwl") -> "FuzzyNumber":
        return cls(
            [k.alpha for k in knots],
            [k.level.lo for k in knots],
            [k.level.hi for k in knots],
            mode,
        )

    @property
    def knots(self) -> list:
        return [
            AlphaKnot(float(a), Interval(float(l), float(h)))
            for a, l, h in zip(self.alphas, self.lo, self.hi)
        ]

    @property
    def core(self) -> Interval:
        return Interval(self.lo[-1], self.hi[-1])

    def level_set(self, alpha: float) -> Interval:
        return level_set(self, alpha)

    def level_plus(self, alpha: float) -> Interval:
        return level_plus(self, alpha)

    def __eq__(self, other):
        if not isinstance(other, FuzzyNumber):
            return NotImplemented
        return (
            self.mode == other.mode
            and np.array_equal(self.alphas, other.alphas)
            and np.array_equal(self.lo, other.lo)
            and np.array_equal(self.hi, other.hi)
        )

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, FuzzyNumber):
            return NotImplemented
        return add(self, other)

    def __rmul__(self, lam):
        return scale_fuzzy(lam, self)

    def __repr__(self):
        return f"FuzzyNumber(mode={self.mode!r}, knots={len(self.alphas)}, core={self.core})"


def make_triangular(center: float, left_spread: float, right_spread: float,
                    grid=None) -> FuzzyNumber:
    """Triangular number with level ``[c - (1-a) l, c + (1-a) r]``."""
    if left_spread < 0 or right_spread < 0:
        raise ValueError("spreads must be nonnegative")
    alphas = uniform_grid() if grid is None else np.asarray(grid, dtype=float)
    w = 1.0 - alphas
    return FuzzyNumber(alphas, center - w * left_spread, center + w * right_spread, "pwl")


def crisp(x: float, grid=None, mode: str = "pwl") -> FuzzyNumber:
    """Indicator function of the singleton ``{x}``."""
    alphas = np.array([0.0, 1.0]) if grid is None else np.asarray(grid, dtype=float)
    pts = np.full(len(alphas), float(x))
    return FuzzyNumber(alphas, pts, pts, mode)


def level_set(v: FuzzyNumber, alpha: float) -> Interval:
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"level_set needs alpha in (0, 1], got {alpha}")
    lo, hi = eval_levels(v.alphas, v.lo, v.hi, v.mode, alpha)
    return Interval(lo, hi)


def level_plus(v: FuzzyNumber, alpha: float) -> Interval:
    """Closure of the union of the levels strictly above ``alpha``."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"level_plus needs alpha in [0, 1), got {alpha}")
    lo, hi = eval_levels(v.alphas, v.lo, v.hi, v.mode, alpha, right_limit=True)
    return Interval(lo, hi)


def _cell_gaps(u: FuzzyNumber, v: FuzzyNumber) -> np.ndarray:
    """Largest endpoint gap on each cell of the merged knot grid.

    On a merged cell both endpoint maps are affine (pwl) or constant
    (step), so the gap is maximal at the closed right end or at the right
    limit of the open left end.
    """
    grid = np.union1d(u.alphas, v.alphas)
    right, left = grid[1:], grid[:-1]
    ulo, uhi = eval_levels(u.alphas, u.lo, u.hi, u.mode, right)
    vlo, vhi = eval_levels(v.alphas, v.lo, v.hi, v.mode, right)
    at_right = np.maximum(np.abs(ulo - vlo), np.abs(uhi - vhi))
    ulo, uhi = eval_levels(u.alphas, u.lo, u.hi, u.mode, left, right_limit=True)
    vlo, vhi = eval_levels(v.alphas, v.lo, v.hi, v.mode, left, right_limit=True)
    at_left = np.maximum(np.abs(ulo - vlo), np.abs(uhi - vhi))
    return np.maximum(at_right, at_left)


def d_h_infty(u: FuzzyNumber, v: FuzzyNumber) -> float:
    """Uniform Hausdorff metric ``sup_{alpha in (0,1]} d_H(u_alpha, v_alpha)``."""
    return float(np.max(_cell_gaps(u, v)))


def norm_F(v: FuzzyNumber) -> float:
    return d_h_infty(v, crisp(0.0, mode=v.mode))


def _merged(u: FuzzyNumber, v: FuzzyNumber):
    if u.mode != v.mode:
        raise ValueError(f"mode mismatch: {u.mode!r} vs {v.mode!r}")
    grid = np.union1d(u.alphas, v.alphas)
    if np.array_equal(grid, u.alphas) and np.array_equal(grid, v.alphas):
        return grid, (u.lo, u.hi), (v.lo, v.hi)
    # step evaluation at alpha = 0 lands on the stored support knot
    return (
        grid,
        eval_levels(u.alphas, u.lo, u.hi, u.mode, grid),
        eval_levels(v.alphas, v.lo, v.hi, v.mode, grid),
    )


def add(u: FuzzyNumber, v: FuzzyNumber) -> FuzzyNumber:
    """Levelwise Minkowski sum on the merged knot grid."""
    grid, (ulo, uhi), (vlo, vhi) = _merged(u, v)
    return FuzzyNumber(grid, ulo + vlo, uhi + vhi, u.mode)


def scale_fuzzy(lam: float, v: FuzzyNumber) -> FuzzyNumber:
    if lam >= 0:
        return FuzzyNumber(v.alphas, lam * v.lo, lam * v.hi, v.mode)
    return FuzzyNumber(v.alphas, lam * v.hi, lam * v.lo, v.mode)


def minkowski_mean(numbers: Iterable[FuzzyNumber]) -> FuzzyNumber:
    """``(1/n) (X^1 + ... + X^n)`` by folding :func:`add`."""
    it = iter(numbers)
    total = next(it)
    n = 1
    for x in it:
        total = add(total, x)
        n += 1
    return scale_fuzzy(1.0 / n, total)


def epsilon_partition(v: FuzzyNumber, eps: float, shrink: float = 1.0 - 1e-6) -> AlphaPartition:
    """Cuts ``0 = a_0 < ... < a_m = 1`` with
    ``d_H(v_{a_k}, v_{a_{k-1}+}) < eps`` for every k.

    Greedy upward scan: from each cut, jump to the largest knot that keeps
    the strict bound.  ``alpha -> d_H(v_alpha, v_{a+})`` is nondecreasing,
    so the first failing knot ends the admissible run.  In pwl mode a
    single knot cell may drift by more than ``eps``; the cut is then placed
    inside the cell, ``shrink`` times the way to the crossing point.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    cuts = [0.0]
    a = 0.0
    while a < 1.0:
        base_lo, base_hi = eval_levels(v.alphas, v.lo, v.hi, v.mode, a, right_limit=True)
        cand = v.alphas[v.alphas > a]
        clo, chi = eval_levels(v.alphas, v.lo, v.hi, v.mode, cand)
        drift = np.maximum(np.abs(clo - base_lo), np.abs(chi - base_hi))
        bad = np.nonzero(~(drift < eps))[0]
        n_ok = len(cand) if len(bad) == 0 else bad[0]
        if n_ok > 0:
            a = float(cand[n_ok - 1])
        else:
            # only reachable in pwl mode: drift is affine in alpha on (a, cand[0]]
            frac = eps / drift[0]
            while True:
                nxt = a + (cand[0] - a) * frac * shrink
                nlo, nhi = eval_levels(v.alphas, v.lo, v.hi, v.mode, nxt)
                if nxt > a and max(abs(nlo - base_lo), abs(nhi - base_hi)) < eps:
                    break
                shrink *= 0.5
            a = float(nxt)
        cuts.append(a)
    return AlphaPartition(tuple(cuts))


def check_valid(v: FuzzyNumber) -> ValidityReport:
    """Report the first violation of the fuzzy-number conditions, if any."""
    a, lo, hi = v.alphas, v.lo, v.hi
    if len(a) < 2:
        return ValidityReport(False, "need knots at both alpha = 0 and alpha = 1", 0)
    if a[0] != 0.0:
        return ValidityReport(False, "missing knot at alpha = 0", 0)
    if a[-1] != 1.0:
        return ValidityReport(False, "missing knot at alpha = 1", len(a) - 1)
    for j in range(1, len(a)):
        if not a[j] > a[j - 1]:
            return ValidityReport(False, "knot alphas not strictly increasing", j)
    for j in range(len(a)):
        if lo[j] > hi[j]:
            reason = "empty 1-level" if j == len(a) - 1 else "empty level (lo > hi)"
            return ValidityReport(False, reason, j)
    for j in range(1, len(a)):
        if lo[j] < lo[j - 1] or hi[j] > hi[j - 1]:
            return ValidityReport(False, "levels not nested", j)
    return ValidityReport(True)


def format_fuzzy(v: FuzzyNumber) -> str:
    """Plain-text literal: ``mode: <mode>`` then one ``alpha lo hi`` per line."""
    lines = [f"mode: {v.mode}"]
    lines += [f"{a!r} {l!r} {h!r}" for a, l, h in zip(v.alphas.tolist(), v.lo.tolist(), v.hi.tolist())]
    return "\n".join(lines) + "\n"


def parse_fuzzy(text: str) -> FuzzyNumber:
    mode = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if mode is None:
            key, sep, value = line.partition(":")
            if not sep or key.strip() != "mode":
                raise ValueError(f"line {lineno}: expected header 'mode: pwl|step'")
            mode = value.strip()
            if mode not in MODES:
                raise ValueError(f"line {lineno}: unknown mode {mode!r}")
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'alpha lo hi', got {raw!r}")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise ValueError(f"line {lineno}: non-numeric field in {raw!r}") from None
    if mode is None or not rows:
        raise ValueError("empty fuzzy-number literal")
    arr = np.array(rows)
    if np.any(np.diff(arr[:, 0]) <= 0):
        raise ValueError("alphas must be strictly ascending")
    return FuzzyNumber(arr[:, 0], arr[:, 1], arr[:, 2], mode)

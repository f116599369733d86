"""Closed bounded intervals of the real line.

Every set manipulated by the package is a nonempty compact convex subset
of R, i.e. an interval ``[lo, hi]``.  Minkowski operations, the Hausdorff
metric and support functions all reduce to endpoint arithmetic here.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Direction(enum.IntEnum):
    """Unit vector of the dual of R: the sphere is just {-1, +1}."""

    MINUS = -1
    PLUS = 1

    @classmethod
    def both(cls) -> tuple["Direction", "Direction"]:
        return (cls.PLUS, cls.MINUS)


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]``; degenerate intervals are allowed."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval endpoints must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"empty interval: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def issubset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def __add__(self, other: "Interval") -> "Interval":
        if not isinstance(other, Interval):
            return NotImplemented
        return minkowski_add(self, other)

    def __rmul__(self, lam: float) -> "Interval":
        return scale(lam, self)

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"


def minkowski_add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def scale(lam: float, a: Interval) -> Interval:
    """Image of ``a`` under ``x -> lam * x``."""
    if lam >= 0:
        return Interval(lam * a.lo, lam * a.hi)
    return Interval(lam * a.hi, lam * a.lo)


def hausdorff(a: Interval, b: Interval) -> float:
    """Hausdorff distance; for intervals this is the larger endpoint gap."""
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))


def dist_point(x: float, a: Interval) -> float:
    """Distance from the point ``x`` to the interval ``a``."""
    if x < a.lo:
        return a.lo - x
    if x > a.hi:
        return x - a.hi
    return 0.0


def norm_K(a: Interval) -> float:
    """Hausdorff distance from ``{0}``, i.e. the largest absolute element."""
    return max(abs(a.lo), abs(a.hi))


def support(direction: int, a: Interval) -> float:
    """Support function ``sup_{x in a} direction * x``."""
    d = Direction(direction)
    return a.hi if d is Direction.PLUS else -a.lo

"""
Levels, sums and the uniform Hausdorff distance
===============================================

A fuzzy number here is a nested stack of intervals indexed by alpha.
This walk-through builds two triangular numbers, adds them, and measures
how far apart they are.
"""
import numpy as np

from fuzzylln import (Direction, Interval, d_h_infty, format_fuzzy, hausdorff,
                      level_plus, level_set, make_triangular, support)

# Intervals first: the Hausdorff distance is the larger endpoint gap.
a = Interval(-1.0, 2.0)
b = Interval(0.5, 2.5)
print("d_H(a, b) =", hausdorff(a, b))
print("support in +1 and -1:", support(Direction.PLUS, a), support(Direction.MINUS, a))

# A triangle with center 0, left spread 1 and right spread 2.
u = make_triangular(0.0, 1.0, 2.0)
v = make_triangular(0.5, 1.0, 1.0)

for alpha in (0.0, 0.5, 1.0):
    if alpha > 0:
        print(f"level {alpha}: {level_set(u, alpha)}")
    if alpha < 1:
        print(f"level {alpha}+: {level_plus(u, alpha)}")

# Addition works level by level, so spreads add up.
s = u + v
print("core of u + v:", s.core)
print("support of u + v:", level_plus(s, 0.0))

# Distances between whole fuzzy numbers take the worst level.
print("d_H^inf(u, v) =", d_h_infty(u, v))

# The same thing on a coarse step representation.
coarse = make_triangular(0.0, 1.0, 2.0, grid=np.linspace(0, 1, 5))
print(format_fuzzy(coarse))

"""
Uncorrelated is not independent
===============================

In the cosine model every variable depends on one shared uniform phase U,
with centers cos(2 pi k U).  Distinct k give zero covariance even though
the whole sequence is a function of a single number.  A shared normal
shift, by contrast, is correlated across every pair.
"""
from fuzzylln import ModelSpec, estimate_cov, variance_condition
from fuzzylln.intervals import Direction
from fuzzylln.models import COSINE, SHARED

DRAWS = 20_000

for kind in (COSINE, SHARED):
    model = ModelSpec(kind)
    print(f"\n{kind}")
    for k, m in [(1, 2), (1, 3), (2, 5)]:
        rep = estimate_cov(model, k, m, 0.5, Direction.PLUS, DRAWS, seed=7)
        mark = "flagged" if rep.flagged else "ok"
        print(f"  cov(s_{k}, s_{m}) = {rep.cov_hat:+.4f}  se {rep.std_err:.4f}  {mark}")

# For the cosine model each support value has variance 1/2, so the
# variance of the running mean shrinks like 1/(2n).
model = ModelSpec(COSINE)
for n in (10, 100, 1000):
    print(n, variance_condition(model, n, 0.5, Direction.PLUS))

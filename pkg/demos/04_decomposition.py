"""
Where the distance comes from
=============================

The uniform distance between a sample mean and its expectation splits
into a worst level gap, a worst right-limit gap and a term from cutting
[0, 1] into pieces on which both numbers move by less than eps.
"""
from fuzzylln import ModelSpec, decomposition_diagnostic
from fuzzylln.models import COSINE_SPREAD, derive_omega

model = ModelSpec(COSINE_SPREAD, w0=1.0, beta0=0.5)

for n in (10, 100, 1000):
    rep = decomposition_diagnostic(model, n, derive_omega(3, n), eps=0.05)
    print(f"n={n:>5}  distance {rep.distance:.4f}  <=  "
          f"{rep.level_term:.4f} + {rep.right_limit_term:.4f} + 2*{rep.partition_term:.4f}"
          f"  ({len(rep.cuts)} cuts, dominant: {rep.dominant})")

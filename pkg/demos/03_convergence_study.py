"""
Tail probabilities of the sample mean
=====================================

Runs the convergence study for the cosine model next to the shared-shift
control.  The first tail drops towards zero as n grows.  The second stays
near 2 Phi(-0.1), since the shared shift never averages out.

Takes around half a minute.
"""
from fuzzylln import ModelSpec, convergence_study
from fuzzylln.models import COSINE, SHARED

schedule = [10, 100, 1000, 10000]

for kind in (COSINE, SHARED):
    result = convergence_study(ModelSpec(kind), schedule, eps=0.1,
                               replications=300, master_seed=1)
    print(kind)
    for row in result.rows:
        extra = "" if row.oracle_tail is None else f"   exact {row.oracle_tail:.4f}"
        print(f"  n={row.n:>6}  p_hat={row.p_hat:.3f}  "
              f"[{row.ci_lo:.3f}, {row.ci_hi:.3f}]  chebyshev {row.chebyshev_bound:.3g}{extra}")
    print("  converged:", result.converged())

"""Slice homology of wedge with sum x_i^n dx_i.

Everything below the top degree should vanish; the top slice should count the
monomials with every exponent below n.
"""

from twistk import exactness_report
from twistk.koszul import top_cokernel_rank_oracle

for N, n, d_max in [(2, 1, 6), (2, 3, 8), (3, 2, 6)]:
    rep = exactness_report(N, n, d_max)
    lower = [r for r in rep.records if r.p < N]
    print(f"N={N} n={n}: {len(lower)} lower slices, all zero: {all(r.homology_rank == 0 and not r.torsion for r in lower)}")
    print("  top ranks :", rep.top_ranks())
    print("  monomials :", [top_cokernel_rank_oracle(N, n, d) for d in range(d_max + 1)])

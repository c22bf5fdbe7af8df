"""Buchberger on the r-frame twist coefficients, then the Schur-basis fusion table."""

from twistk import build_fusion_ring


def show(N, k):
    ring = build_fusion_ring(N, k)
    print(f"SU({N}) level {k}: rank {ring.rank}")
    print("  Groebner basis:", ring.groebner.render())
    W = ring.weights
    for i, lam in enumerate(W[1:], start=1):
        for mu in W[i:]:
            out = ring.table[(lam, mu)]
            rhs = " + ".join(f"{c if c > 1 else ''}{nu or '()'}" for nu, c in out.items())
            print(f"  {lam} x {mu} = {rhs}")
    print()


show(2, 2)
show(3, 1)
show(3, 2)

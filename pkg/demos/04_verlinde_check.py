"""Cross-check the quotient ring against evaluation at Verlinde points.

The oracle never touches the Groebner code: it evaluates Schur polynomials at
roots of unity and solves one linear system per product.
"""

from twistk.cli import compare

grid = [(2, k) for k in range(1, 5)] + [(3, 1), (3, 2), (3, 3), (4, 1)]
for N, k in grid:
    rep = compare(N, k, tolerance=1e-6, condition_bound=1e8)
    print(
        f"SU({N})_{k}: rank {rep['rank']:>2}  identical={rep['tables_identical']}"
        f"  residual={rep['max_residual']:.1e}  cond={rep['condition_estimate']:.1f}"
        f"  ideal max |a|={rep['ideal_max_modulus']:.1e}"
    )

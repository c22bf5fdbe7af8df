"""The level-k twist written in three coordinate frames.

Start from sum x_i^(N+k-1) dx_i on the maximal torus, rewrite it through the
elementary symmetric functions, then set e_N = 1.  The last frame is where the
fusion ideal lives.
"""

from twistk.diffforms import basic_gerbe, render_form, twist_form
from twistk.poly_core import render

for N, k in [(2, 1), (2, 2), (3, 1), (3, 2)]:
    tf = twist_form(N, k)
    print(f"SU({N}) level {k}  (m = {tf.m})")
    print("  x-frame:", render_form(tf.x_form))
    print("  e-frame:", render_form(tf.e_form()))
    print("  r-frame:", [render(a) for a in tf.r_coeffs])
    print()

# the basic gerbe is the m = 1 case, and it is exact: sum dx_i = d e_1
g = basic_gerbe(3)
print("basic gerbe, N=3:", render_form(g.x_form), "=", render_form(g.e_form()))

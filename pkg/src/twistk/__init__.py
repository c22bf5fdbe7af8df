"""Twisted equivariant K-theory of SU(N) by exact computer algebra.

The level-k twist is a 1-form of Grothendieck differentials on the
representation ring; wedging with it gives a Koszul-type complex whose top
homology is the SU(N) level-k fusion ring.
"""

from .poly_core import MultiPoly, RatPoly, Ring, parse, render
from .symfunc import (
    SymFrame,
    complete_homogeneous_in_e,
    elementary,
    level_weights,
    power_sum_in_e,
    schur_in_e,
    specialize_su,
    to_e_basis,
)
from .diffforms import DiffForm, TwistForm, exterior_derivative, twist_form, wedge
from .koszul import exactness_report, homology_slice, smith_normal_form
from .fusion import FusionRing, build_fusion_ring, buchberger, normal_form
from .verlinde_oracle import oracle_fusion, verlinde_points

__version__ = "0.1.0"

import json
from math import comb

import pytest

from twistk.fusion import (
    FusionRing,
    GroebnerBasis,
    _lcm,
    _reduce,
    _shift,
    buchberger,
    build_fusion_ring,
    fusion_ideal_generators,
    ideal_matches_complete_homogeneous,
    normal_form,
    rho_frame_exactness,
)
from twistk.poly_core import parse
from twistk.symfunc import r_ring

R2 = r_ring(2)
R3 = r_ring(3)


def Q(text, ring=R3):
    return parse(text, ring, rational=True)


def assert_reduced_groebner(gb: GroebnerBasis):
    G = list(gb.polys)
    leads = gb.leading_monomials()
    for g in G:
        assert g.leading_term()[1] == 1
    for i, g in enumerate(G):
        for j, lm in enumerate(leads):
            if i != j:
                assert not any(all(a <= b for a, b in zip(lm, e)) for e in g.terms), "not reduced"
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            lcm = _lcm(leads[i], leads[j])
            s = _shift(G[i], tuple(a - b for a, b in zip(lcm, leads[i])), 1) - _shift(
                G[j], tuple(a - b for a, b in zip(lcm, leads[j])), 1
            )
            assert _reduce(s, G).is_zero()


# ---- Buchberger ----

def test_single_generator():
    gb = buchberger([Q("r1^2 - 1", R2)])
    assert gb.polys == (Q("r1^2 - 1", R2),)


def test_linear_generator():
    assert buchberger([Q("r1", R2)]).polys == (Q("r1", R2),)


def test_su3_level1_basis():
    gb = buchberger([Q("r1^2 - r2"), Q("r1^3 - 2*r1*r2 + 1")])
    assert gb.polys == (Q("r1^2 - r2"), Q("r1*r2 - 1"), Q("r2^2 - r1"))
    assert gb.standard_monomials() == [(0, 0), (0, 1), (1, 0)]
    assert_reduced_groebner(gb)


def test_zero_ideal_and_unit_ideal():
    assert buchberger([R3.zero()]).polys == ()
    gb = buchberger([Q("r1 - 1"), Q("r1")])
    assert gb.polys == (Q("1"),)
    assert gb.standard_monomials() == []


def test_buchberger_is_order_independent_after_reduction():
    a, b = Q("r1^3 - 2*r1*r2 + 1"), Q("-(r1^2 - r2)")
    assert buchberger([a, b]) == buchberger([b, a])


@pytest.mark.parametrize("N,k", [(3, 2), (3, 3), (4, 1), (4, 2), (5, 1)])
def test_fusion_ideal_bases_are_reduced_groebner(N, k):
    gb = buchberger(fusion_ideal_generators(N, k))
    assert_reduced_groebner(gb)
    assert len(gb.standard_monomials()) == comb(N + k - 1, N - 1)


def test_infinite_quotient_detected():
    with pytest.raises(ValueError, match="infinite"):
        buchberger([Q("r1^2")]).standard_monomials()


# ---- normal form ----

def test_normal_form_examples():
    gb2_1 = buchberger([Q("r1^2 - 1", R2)])
    assert normal_form(Q("r1^3", R2), gb2_1) == Q("r1", R2)
    for g in gb2_1:
        assert normal_form(g, gb2_1).is_zero()
    gb2_2 = buchberger([Q("r1^3 - 2*r1", R2)])
    assert normal_form(Q("r1^3", R2), gb2_2) == Q("2*r1", R2)


def test_normal_form_ring_mismatch():
    gb = buchberger([Q("r1^2 - 1", R2)])
    with pytest.raises(ValueError):
        normal_form(Q("r1"), gb)


def test_normal_form_remainder_is_standard():
    gb = buchberger(fusion_ideal_generators(3, 2))
    leads = gb.leading_monomials()
    nf = normal_form(Q("r1^7*r2^3 - 5*r2^6 + r1"), gb)
    for e in nf.terms:
        assert not any(all(a <= b for a, b in zip(lm, e)) for lm in leads)


# ---- fusion rings ----

def W(*parts):
    return tuple(parts)


def test_su2_level1():
    ring = build_fusion_ring(2, 1)
    assert ring.groebner.polys == (Q("r1^2 - 1", R2),)
    assert ring.rank == 2
    assert ring.table[(W(1), W(1))] == {W(): 1}


def test_su2_level2():
    ring = build_fusion_ring(2, 2)
    assert ring.groebner.polys == (Q("r1^3 - 2*r1", R2),)
    assert ring.rank == 3
    assert ring.schur_forms[2] == Q("r1^2 - 1", R2)
    assert ring.table[(W(1), W(1))] == {W(): 1, W(2): 1}
    assert ring.table[(W(1), W(2))] == {W(1): 1}
    assert ring.table[(W(2), W(2))] == {W(): 1}


def test_su3_level1_is_z3():
    ring = build_fusion_ring(3, 1)
    assert ring.rank == 3
    assert ring.table[(W(1), W(1))] == {W(1, 1): 1}
    assert ring.table[(W(1), W(1, 1))] == {W(): 1}


def test_level_zero():
    ring = build_fusion_ring(2, 0)
    assert ring.groebner.polys == (Q("r1", R2),)
    assert ring.rank == 1
    assert ring.table == {((), ()): {(): 1}}


@pytest.mark.parametrize("N,k", [(2, 5), (3, 2), (3, 3), (4, 2)])
def test_ring_axioms(N, k):
    ring = build_fusion_ring(N, k)
    W_ = ring.weights
    c = ring.coefficient
    for lam in W_:
        for mu in W_:
            assert ring.table[(lam, mu)] == ring.table[(mu, lam)]
            assert c((), mu, lam) == (lam == mu)
            assert all(v > 0 for v in ring.table[(lam, mu)].values())
    for lam in W_:
        for mu in W_:
            for nu in W_:
                for tau in W_:
                    left = sum(c(lam, mu, s) * c(s, nu, tau) for s in W_)
                    right = sum(c(mu, nu, s) * c(lam, s, tau) for s in W_)
                    assert left == right


def test_monomial_table_su3_level1():
    mt = build_fusion_ring(3, 1).monomial_table()
    assert mt[((1, 0), (1, 0))] == {(0, 1): 1}
    assert mt[((1, 0), (0, 1))] == {(0, 0): 1}


@pytest.mark.parametrize("N,k", [(2, 3), (3, 1), (3, 4), (4, 2), (5, 2)])
def test_ideal_is_complete_homogeneous(N, k):
    assert ideal_matches_complete_homogeneous(N, k)


# ---- serialization ----

def test_serialization_schema_and_round_trip():
    ring = build_fusion_ring(3, 2)
    data = ring.to_dict()
    assert list(data) == ["N", "k", "rank", "groebner_basis", "weights", "table"]
    assert list(data["table"][0]) == ["lhs", "rhs", "result"]
    back = FusionRing.from_dict(json.loads(json.dumps(data)))
    assert back == ring


def test_monomial_serialization():
    data = build_fusion_ring(2, 2).to_dict("monomial")
    assert data["basis"] == "monomial"
    assert data["monomials"] == ["1", "r1", "r1^2"]
    with pytest.raises(ValueError):
        build_fusion_ring(2, 2).to_dict("dynkin")


# ---- rho-frame exactness ----

def test_rho_exactness_su2_level1():
    rep = rho_frame_exactness(2, 1, 8)
    assert rep.passed
    assert all(r["homology_dim"] == 0 for r in rep.records if r["p"] == 0)


def test_rho_exactness_su3_level1():
    rep = rho_frame_exactness(3, 1, 6)
    assert rep.passed
    assert all(r["homology_dim"] == 0 for r in rep.records if r["p"] < 2)


def test_rho_exactness_level0_quotient_rank():
    rep = rho_frame_exactness(2, 0, 6)
    assert rep.passed
    assert rep.quotient_rank_in_window == 1


@pytest.mark.parametrize("N,k", [(2, 3), (3, 2), (4, 1)])
def test_rho_top_dimension_stabilizes_at_rank(N, k):
    m = N + k
    # top socle weight of the graded quotient plus the weight of dr_1 ... dr_(N-1)
    w = sum(m - 2 * j for j in range(1, N)) + N * (N - 1) // 2
    rep = rho_frame_exactness(N, k, w + 1)
    assert rep.passed
    assert rep.top_dims()[-2:] == [comb(N + k - 1, N - 1)] * 2

"""The fusion ring R(SU(N)) / (a_1, ..., a_(N-1)) at level k.

The ideal is generated by the R-frame coefficients of the level-k twist.
Computation is over Q with a reduced Groebner basis in grevlex order
(r1 > r2 > ...); structure constants are then read in the Schur basis and
checked to be nonnegative integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .diffforms import twist_form
from .koszul import integer_rank, wedge_matrix
from .poly_core import RatPoly, Ring, grevlex_key, parse, render
from .symfunc import complete_homogeneous_in_e, level_weights, r_ring, schur_in_e, specialize_su

Exps = tuple[int, ...]


class FusionError(ArithmeticError):
    pass


class RankMismatch(FusionError):
    pass


class NonIntegralStructureConstant(FusionError):
    pass


class NegativeStructureConstant(FusionError):
    pass


# ---------------------------------------------------------------- Groebner bases

def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))


def _shift(p: RatPoly, exps: Exps, c: Fraction) -> RatPoly:
    return RatPoly._raw(p.ring, {tuple(x + y for x, y in zip(e, exps)): v * c for e, v in p.items()})


def _reduce(p: RatPoly, basis: Sequence[RatPoly]) -> RatPoly:
    """Full reduction of p; basis elements must be monic."""
    leads = [g.leading_term()[0] for g in basis]
    rest = dict(p.items())
    remainder = {}
    key = lambda e: grevlex_key(e)  # noqa: E731
    while rest:
        e = max(rest, key=key)
        c = rest[e]
        for g, lm in zip(basis, leads):
            if _divides(lm, e):
                q = tuple(x - y for x, y in zip(e, lm))
                for ge, gc in g.items():
                    te = tuple(x + y for x, y in zip(ge, q))
                    v = rest.get(te, 0) - c * gc
                    if v:
                        rest[te] = v
                    else:
                        rest.pop(te, None)
                break
        else:
            remainder[e] = c
            del rest[e]
    return RatPoly._raw(p.ring, remainder)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis (monic, sorted by descending leading monomial)."""

    ring: Ring
    polys: tuple[RatPoly, ...]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def leading_monomials(self) -> list[Exps]:
        return [g.leading_term()[0] for g in self.polys]

    def normal_form(self, p) -> RatPoly:
        return normal_form(p, self)

    def contains(self, p) -> bool:
        return not normal_form(p, self)

    def standard_monomials(self) -> list[Exps]:
        """Monomials outside the leading-term ideal, ascending grevlex; requires a finite quotient."""
        leads = self.leading_monomials()
        n = self.ring.nvars
        if any(not any(lm) for lm in leads):
            return []
        bounds = []
        for i in range(n):
            powers = [lm[i] for lm in leads if lm[i] and sum(lm) == lm[i]]
            if not powers:
                raise ValueError("quotient ring is infinite dimensional")
            bounds.append(min(powers))
        out = []

        def rec(prefix):
            i = len(prefix)
            if i == n:
                if not any(_divides(lm, prefix) for lm in leads):
                    out.append(prefix)
                return
            for a in range(bounds[i]):
                rec(prefix + (a,))

        rec(())
        out.sort(key=grevlex_key)
        return out

    def render(self) -> list[str]:
        return [render(g) for g in self.polys]


def buchberger(gens: Iterable) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm degree, ties
    broken by queue order); pairs with coprime leading monomials are skipped.
    """
    gens = [g.to_rational() if not isinstance(g, RatPoly) else g for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise ValueError("generators live in different rings")
    G: list[RatPoly] = []
    for g in gens:
        if g:
            G.append(g.monic())
    if not G:
        return GroebnerBasis(ring, ())
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    while pairs:
        best = min(
            range(len(pairs)),
            key=lambda t: (sum(_lcm(G[pairs[t][0]].leading_term()[0], G[pairs[t][1]].leading_term()[0])), t),
        )
        i, j = pairs.pop(best)
        li, lj = G[i].leading_term()[0], G[j].leading_term()[0]
        if all(min(a, b) == 0 for a, b in zip(li, lj)):
            continue
        lcm = _lcm(li, lj)
        s = _shift(G[i], tuple(x - y for x, y in zip(lcm, li)), Fraction(1)) - _shift(
            G[j], tuple(x - y for x, y in zip(lcm, lj)), Fraction(1)
        )
        h = _reduce(s, G)
        if h:
            G.append(h.monic())
            new = len(G) - 1
            pairs.extend((t, new) for t in range(new))
    return GroebnerBasis(ring, tuple(_interreduce(G)))


def _interreduce(G: list[RatPoly]) -> list[RatPoly]:
    leads = [g.leading_term()[0] for g in G]
    keep = []
    for i, g in enumerate(G):
        if any(
            _divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i)
            for j in range(len(G))
            if j != i
        ):
            continue
        keep.append(g)
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lt_e, lt_c = g.leading_term()
        tail = _reduce(g - RatPoly._raw(g.ring, {lt_e: lt_c}), others)
        reduced.append((RatPoly._raw(g.ring, {lt_e: lt_c}) + tail).monic())
    reduced.sort(key=lambda g: grevlex_key(g.leading_term()[0]), reverse=True)
    return reduced


def normal_form(p, gb: GroebnerBasis) -> RatPoly:
    if p.ring != gb.ring:
        raise ValueError(f"ring mismatch: {p.ring.names} vs {gb.ring.names}")
    p = p if isinstance(p, RatPoly) else p.to_rational()
    return _reduce(p, gb.polys)


# ---------------------------------------------------------------- exact linear algebra

def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    A = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise FusionError("Schur normal forms are linearly dependent; not a basis")
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [v / pv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


# ---------------------------------------------------------------- fusion ring

Weight = tuple[int, ...]


@dataclass(frozen=True)
class FusionRing:
    N: int
    k: int
    groebner: GroebnerBasis
    standard_monomials: tuple[Exps, ...]
    weights: tuple[Weight, ...]
    schur_forms: tuple[RatPoly, ...]
    change_of_basis: tuple[tuple[Fraction, ...], ...]
    table: dict  # (lam, mu) -> {nu: coeff}, nonzero coefficients only

    @property
    def rank(self) -> int:
        return len(self.standard_monomials)

    def coefficient(self, lam, mu, nu) -> int:
        return self.table[(tuple(lam), tuple(mu))].get(tuple(nu), 0)

    def coords(self, p: RatPoly) -> list[Fraction]:
        """Coordinates of a reduced polynomial in the standard-monomial basis."""
        return [Fraction(p.coefficient(e)) for e in self.standard_monomials]

    def monomial_table(self) -> dict:
        """Structure constants of the standard-monomial basis (rational in general)."""
        ring = self.groebner.ring
        out = {}
        for a in self.standard_monomials:
            for b in self.standard_monomials:
                prod = normal_form(ring.monomial(tuple(x + y for x, y in zip(a, b))), self.groebner)
                out[(a, b)] = {e: prod.coefficient(e) for e in self.standard_monomials if prod.coefficient(e)}
        return out

    def to_dict(self, basis: str = "schur") -> dict:
        head = {
            "N": self.N,
            "k": self.k,
            "rank": self.rank,
            "groebner_basis": self.groebner.render(),
        }
        if basis == "schur":
            head["weights"] = [list(w) for w in self.weights]
            head["table"] = [
                {
                    "lhs": list(lam),
                    "rhs": list(mu),
                    "result": [
                        {"weight": list(nu), "coeff": c}
                        for nu, c in sorted(self.table[(lam, mu)].items(), key=lambda t: self.weights.index(t[0]))
                    ],
                }
                for lam in self.weights
                for mu in self.weights
            ]
        elif basis == "monomial":
            ring = self.groebner.ring
            names = [render(ring.monomial(e)) for e in self.standard_monomials]
            mt = self.monomial_table()
            head["basis"] = "monomial"
            head["monomials"] = names
            head["table"] = [
                {
                    "lhs": names[i],
                    "rhs": names[j],
                    "result": [
                        {"monomial": render(ring.monomial(e)), "coeff": _json_number(c)}
                        for e, c in sorted(mt[(a, b)].items(), key=lambda t: grevlex_key(t[0]))
                    ],
                }
                for i, a in enumerate(self.standard_monomials)
                for j, b in enumerate(self.standard_monomials)
            ]
        else:
            raise ValueError(f"unknown basis {basis!r}")
        return head

    @classmethod
    def from_dict(cls, data: dict) -> FusionRing:
        """Rebuild from :meth:`to_dict` output (Schur form) without rerunning Buchberger."""
        N, k = int(data["N"]), int(data["k"])
        ring = r_ring(N)
        gb = GroebnerBasis(ring, tuple(parse(s, ring, rational=True) for s in data["groebner_basis"]))
        weights = tuple(tuple(w) for w in data["weights"])
        table = {}
        for entry in data["table"]:
            table[(tuple(entry["lhs"]), tuple(entry["rhs"]))] = {
                tuple(r["weight"]): int(r["coeff"]) for r in entry["result"]
            }
        std, forms, C = _schur_data(N, gb, weights)
        ring_obj = cls(N, k, gb, tuple(std), weights, forms, C, table)
        if ring_obj.rank != int(data["rank"]):
            raise RankMismatch("cached rank disagrees with the cached Groebner basis")
        return ring_obj


def _json_number(c: Fraction):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else str(c)


def _schur_data(N: int, gb: GroebnerBasis, weights):
    std = gb.standard_monomials()
    forms = tuple(normal_form(specialize_su(schur_in_e(w, N)).to_rational(), gb) for w in weights)
    C = tuple(tuple(Fraction(f.coefficient(e)) for e in std) for f in forms)
    return std, forms, C


def fusion_ideal_generators(N: int, k: int) -> list[RatPoly]:
    return [a.to_rational() for a in twist_form(N, k).r_coeffs]


def build_fusion_ring(N: int, k: int) -> FusionRing:
    """Quotient of R(SU(N)) by the level-k twist coefficients, with its fusion table."""
    if N < 2 or k < 0:
        raise ValueError("need N >= 2 and k >= 0")
    gb = buchberger(fusion_ideal_generators(N, k))
    weights = tuple(level_weights(N, k))
    expected = comb(N + k - 1, N - 1)
    std, forms, C = _schur_data(N, gb, weights)
    if len(std) != expected:
        raise RankMismatch(f"quotient has rank {len(std)}, expected {expected}")
    Cinv = _invert([list(row) for row in C])
    table = {}
    for i, lam in enumerate(weights):
        for j, mu in enumerate(weights):
            prod = normal_form(forms[i] * forms[j], gb)
            v = [Fraction(prod.coefficient(e)) for e in std]
            coeffs = [sum(v[t] * Cinv[t][s] for t in range(len(std))) for s in range(len(std))]
            row = {}
            for nu, c in zip(weights, coeffs):
                if c.denominator != 1:
                    raise NonIntegralStructureConstant(f"N_{lam},{mu}^{nu} = {c}")
                if c < 0:
                    raise NegativeStructureConstant(f"N_{lam},{mu}^{nu} = {c}")
                if c:
                    row[nu] = int(c)
            table[(lam, mu)] = row
    return FusionRing(N, k, gb, tuple(std), weights, forms, C, table)


def ideal_matches_complete_homogeneous(N: int, k: int) -> bool:
    """(a_1..a_(N-1)) equals (h_(k+1), ..., h_(k+N-1)) at e_N = 1, tested by mutual reduction."""
    twist = fusion_ideal_generators(N, k)
    hs = [specialize_su(complete_homogeneous_in_e(k + j, N)).to_rational() for j in range(1, N)]
    gb_t, gb_h = buchberger(twist), buchberger(hs)
    return all(gb_h.contains(g) for g in twist) and all(gb_t.contains(h) for h in hs)


# ---------------------------------------------------------------- rho-frame complex

def _weighted_elements(N: int, p: int, w: int):
    """Basis of F_w Omega^p in the R-frame: r_j and dr_j both carry weight j."""
    n = N - 1
    if p < 0 or p > n or w < 0:
        return []
    weights = list(range(1, n + 1))
    out = []
    for idx in combinations(range(n), p):
        budget = w - sum(weights[i] for i in idx)
        if budget < 0:
            continue
        monos = []

        def rec(prefix, left):
            i = len(prefix)
            if i == n:
                monos.append(prefix)
                return
            for a in range(left // weights[i] + 1):
                rec(prefix + (a,), left - a * weights[i])

        rec((), budget)
        monos.sort(key=grevlex_key, reverse=True)
        out.extend((idx, a) for a in monos)
    return out


@dataclass
class RhoExactnessReport:
    N: int
    k: int
    d_max: int
    records: list

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.records)

    def top_dims(self) -> list[int]:
        return [r["homology_dim"] for r in self.records if r["p"] == self.N - 1]

    @property
    def quotient_rank_in_window(self) -> int:
        dims = self.top_dims()
        return dims[-1] if dims else 0

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "max_degree": self.d_max,
            "pass": self.passed,
            "top_dims": self.top_dims(),
            "slices": self.records,
        }


def rho_frame_exactness(N: int, k: int, d_max: int) -> RhoExactnessReport:
    """Truncated homology of wedge-by-(sum a_j dr_j) over Q in the R-frame.

    alpha is inhomogeneous, so slices are filtration windows F_w: weight of
    r_j and dr_j is j, under which every term of alpha has weight at most
    m = N + k.  The homology at (p, w) is dim ker(F_w Omega^p) minus the rank
    of the image of F_(w-m) Omega^(p-1).  Positions below N - 1 must vanish;
    at the top position the dimension counts the quotient up to weight w.
    """
    if N < 2 or k < 0 or d_max < 0:
        raise ValueError("need N >= 2, k >= 0, d_max >= 0")
    tf = twist_form(N, k)
    alpha = tf.r_form()
    m = tf.m
    records = []
    for p in range(N):
        for w in range(d_max + 1):
            src = _weighted_elements(N, p, w)
            tgt = _weighted_elements(N, p + 1, w + m)
            prev = _weighted_elements(N, p - 1, w - m)
            out_rank = integer_rank(wedge_matrix(alpha, src, tgt)) if src and tgt else 0
            in_rank = integer_rank(wedge_matrix(alpha, prev, src)) if prev and src else 0
            h = len(src) - out_rank - in_rank
            records.append(
                {
                    "p": p,
                    "d": w,
                    "source_dim": len(src),
                    "kernel_dim": len(src) - out_rank,
                    "image_rank": in_rank,
                    "homology_dim": h,
                    "pass": h == 0 if p < N - 1 else h >= 0,
                }
            )
    return RhoExactnessReport(N, k, d_max, records)

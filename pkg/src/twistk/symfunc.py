"""Symmetric functions in N variables and the passage to R(SU(N)).

Three frames share one N:

* ``X``: the torus variables ``x1..xN``;
* ``E``: the elementary symmetric functions ``e1..eN`` as free variables;
* ``R``: ``r1..r(N-1)``, i.e. the E-frame with ``eN = 1`` (determinant one).

Weights are partitions (Young diagrams) rather than Dynkin labels; the
Dynkin label of a partition ``lam`` is ``(lam[0]-lam[1], lam[1]-lam[2], ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Sequence

from .poly_core import MultiPoly, Ring, lex_key, substitute

MODES = ("X", "E", "R")


class NonSymmetricInput(ValueError):
    pass


@lru_cache(maxsize=None)
def x_ring(N: int) -> Ring:
    return Ring(tuple(f"x{i}" for i in range(1, N + 1)))


@lru_cache(maxsize=None)
def e_ring(N: int) -> Ring:
    return Ring(tuple(f"e{i}" for i in range(1, N + 1)))


@lru_cache(maxsize=None)
def r_ring(N: int) -> Ring:
    return Ring(tuple(f"r{i}" for i in range(1, N)))


@dataclass(frozen=True)
class SymFrame:
    N: int
    mode: str = "X"

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"N must be at least 2, got {self.N}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")

    @property
    def ring(self) -> Ring:
        return {"X": x_ring, "E": e_ring, "R": r_ring}[self.mode](self.N)


def _check_N(N: int):
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")


def canonical_weight(parts: Sequence[int]) -> tuple[int, ...]:
    """Validate a partition and strip trailing zeros."""
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"{parts} is not a partition")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


@lru_cache(maxsize=None)
def elementary(j: int, N: int) -> MultiPoly:
    """e_j(x1, ..., xN) in the X-frame."""
    _check_N(N)
    if not 0 <= j <= N:
        raise ValueError(f"elementary index {j} out of range 0..{N}")
    ring = x_ring(N)
    terms = {}
    for subset in combinations(range(N), j):
        exps = [0] * N
        for i in subset:
            exps[i] = 1
        terms[tuple(exps)] = 1
    return MultiPoly(ring, terms)


def _e(j: int, N: int) -> MultiPoly:
    """e_j as an E-frame variable, with e_0 = 1 and e_j = 0 beyond N."""
    ring = e_ring(N)
    if j == 0:
        return ring.one()
    if j > N or j < 0:
        return ring.zero()
    return ring.gen(j - 1)


@lru_cache(maxsize=None)
def power_sum_in_e(m: int, N: int) -> MultiPoly:
    """p_m written in e_1..e_N via Newton's recursion."""
    _check_N(N)
    if m < 1:
        raise ValueError("power sums are indexed from 1")
    result = (-1) ** (m - 1) * m * _e(m, N)
    for i in range(1, min(m, N + 1)):
        result = result + (-1) ** (i - 1) * _e(i, N) * power_sum_in_e(m - i, N)
    return result


@lru_cache(maxsize=None)
def complete_homogeneous_in_e(r: int, N: int) -> MultiPoly:
    """h_r written in e_1..e_N; h_0 = 1."""
    _check_N(N)
    if r < 0:
        raise ValueError("complete homogeneous index must be nonnegative")
    if r == 0:
        return e_ring(N).one()
    result = e_ring(N).zero()
    for i in range(1, min(r, N) + 1):
        result = result + (-1) ** (i - 1) * _e(i, N) * complete_homogeneous_in_e(r - i, N)
    return result


def h_or_zero(r: int, N: int) -> MultiPoly:
    return complete_homogeneous_in_e(r, N) if r >= 0 else e_ring(N).zero()


def expand_in_x(q: MultiPoly, N: int) -> MultiPoly:
    """Substitute e_j -> e_j(x); q must live in the E-frame of N."""
    if q.ring != e_ring(N):
        raise ValueError("expected an E-frame polynomial")
    return substitute(q, [elementary(j, N) for j in range(1, N + 1)], x_ring(N))


def is_symmetric(p: MultiPoly) -> bool:
    n = p.ring.nvars
    for i in range(n - 1):
        swapped = {}
        for e, c in p.items():
            e = list(e)
            e[i], e[i + 1] = e[i + 1], e[i]
            swapped[tuple(e)] = c
        if swapped != p.terms:
            return False
    return True


@lru_cache(maxsize=None)
def _e_monomial_in_x(exps: tuple[int, ...], N: int) -> MultiPoly:
    result = x_ring(N).one()
    for j, k in enumerate(exps, start=1):
        if k:
            result = result * elementary(j, N) ** k
    return result


def to_e_basis(p: MultiPoly) -> MultiPoly:
    """Rewrite a symmetric X-frame polynomial in the elementary basis.

    Repeatedly strips the lex-leading monomial x^a (a is then a partition)
    with the e-monomial e1^(a1-a2) ... eN^aN, whose lex-leading term is x^a.
    """
    N = p.ring.nvars
    if p.ring != x_ring(N):
        raise ValueError("expected an X-frame polynomial")
    if not is_symmetric(p):
        raise NonSymmetricInput("polynomial is not invariant under adjacent transpositions")
    out = {}
    rest = p
    while rest:
        a, c = rest.leading_term(key=lex_key)
        e_exps = tuple(a[j] - (a[j + 1] if j + 1 < N else 0) for j in range(N))
        out[e_exps] = out.get(e_exps, 0) + c
        rest = rest - c * _e_monomial_in_x(e_exps, N)
    return type(p)(e_ring(N), out)


@lru_cache(maxsize=None)
def _schur_cached(lam: tuple[int, ...], N: int) -> MultiPoly:
    n = len(lam)
    if n == 0:
        return e_ring(N).one()
    matrix = [[h_or_zero(lam[i] - i + j, N) for j in range(n)] for i in range(n)]
    return _det(matrix, e_ring(N))


def _det(matrix, ring: Ring) -> MultiPoly:
    # Laplace expansion along the first row; sizes here stay below 6
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = ring.zero()
    for j in range(n):
        entry = matrix[0][j]
        if not entry:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * _det(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def schur_in_e(lam: Sequence[int], N: int, *, allow_full: bool = False) -> MultiPoly:
    """Schur polynomial s_lam in the E-frame via Jacobi-Trudi, det(h_{lam_i - i + j}).

    A weight has at most N-1 parts; ``allow_full`` admits N parts, which are
    needed when decomposing products of characters before specializing.
    """
    _check_N(N)
    lam = canonical_weight(lam)
    limit = N if allow_full else N - 1
    if len(lam) > limit:
        raise ValueError(f"partition {lam} has more than {limit} parts")
    return _schur_cached(lam, N)


def schur_expand(p: MultiPoly) -> dict[tuple[int, ...], int]:
    """Coefficients of a symmetric X-frame polynomial in the Schur basis.

    The lex-leading monomial of s_lam is x^lam with coefficient one, so
    stripping leading terms terminates.  Weights are returned with trailing
    zeros removed.
    """
    N = p.ring.nvars
    if not is_symmetric(p):
        raise NonSymmetricInput("polynomial is not invariant under adjacent transpositions")
    out: dict[tuple[int, ...], int] = {}
    rest = p
    while rest:
        a, c = rest.leading_term(key=lex_key)
        lam = canonical_weight(a)
        out[lam] = out.get(lam, 0) + c
        rest = rest - c * expand_in_x(schur_in_e(lam, N, allow_full=True), N)
    return out


def specialize_su(p: MultiPoly) -> MultiPoly:
    """E-frame -> R-frame: set e_N = 1 and rename e_j -> r_j."""
    N = p.ring.nvars
    if p.ring != e_ring(N):
        raise ValueError("expected an E-frame polynomial")
    out = {}
    for e, c in p.items():
        key = e[:-1]
        out[key] = out.get(key, 0) + c
    return type(p)(r_ring(N), out)


def level_weights(N: int, k: int) -> list[tuple[int, ...]]:
    """Partitions with at most N-1 parts, each at most k.

    Ordered by size, then reverse-lexicographically within a size, so the
    empty weight comes first.
    """
    _check_N(N)
    if k < 0:
        raise ValueError("level must be nonnegative")
    weights = {
        canonical_weight(sorted(parts, reverse=True))
        for parts in combinations_with_replacement(range(k + 1), N - 1)
    }
    ordered = sorted(weights, key=lambda w: (sum(w), tuple(-x for x in w)))
    assert len(ordered) == comb(N + k - 1, N - 1)
    return ordered


def dynkin_label(lam: Sequence[int], N: int) -> tuple[int, ...]:
    lam = list(canonical_weight(lam)) + [0] * N
    return tuple(lam[i] - lam[i + 1] for i in range(N - 1))

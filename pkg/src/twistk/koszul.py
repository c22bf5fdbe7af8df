"""Homology of the wedge-by-alpha complex on graded slices, over Z.

With ``x_i`` in degree one and ``dx_i`` in degree zero, wedging with a 1-form
whose coefficients are homogeneous of degree ``n`` maps the slice
``Omega^p_d`` to ``Omega^(p+1)_(d+n)``.  Each strand is finite, so its integer
homology is read off Smith normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Sequence

import numpy as np

from .diffforms import DiffForm, _merge_sign, power_form
from .poly_core import Ring, monomials_of_degree


# ---------------------------------------------------------------- bases

@dataclass(frozen=True)
class SliceBasis:
    """Ordered basis of one slice: pairs (index tuple, exponent vector)."""

    ring: Ring
    p: int
    d: int
    elements: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def __len__(self):
        return len(self.elements)

    def position(self) -> dict:
        return {el: i for i, el in enumerate(self.elements)}


def slice_basis(ring: Ring, p: int, d: int) -> SliceBasis:
    n = ring.nvars
    if p > n or d < 0 or p < 0:
        return SliceBasis(ring, p, d, ())
    monos = list(monomials_of_degree(n, d))
    elements = tuple((idx, a) for idx in combinations(range(n), p) for a in monos)
    return SliceBasis(ring, p, d, elements)


def coefficient_degree(alpha: DiffForm) -> int:
    """Common degree n of all coefficients of a homogeneous 1-form."""
    if alpha.degree != 1:
        raise ValueError("alpha must be a 1-form")
    degrees = set()
    for c in alpha.components.values():
        if not c.is_homogeneous():
            raise ValueError("alpha has an inhomogeneous coefficient")
        degrees.add(c.degree())
    if len(degrees) != 1:
        raise ValueError(f"alpha coefficients have mixed degrees {sorted(degrees)}")
    return degrees.pop()


def wedge_matrix(alpha: DiffForm, source: Sequence, target: Sequence) -> np.ndarray:
    """Integer matrix of omega -> alpha ^ omega between explicit bases.

    Basis elements are (index tuple, exponent vector) pairs standing for
    x^a dx_I.  Raises if an image leaves the target basis.
    """
    pos = {el: i for i, el in enumerate(target)}
    M = np.zeros((len(target), len(source)), dtype=object)
    pieces = [(i, list(c.items())) for (i,), c in alpha.components.items()]
    for col, (idx, a) in enumerate(source):
        for i, terms in pieces:
            sign, new_idx = _merge_sign((i,), idx)
            if not sign:
                continue
            for b, c in terms:
                key = (new_idx, tuple(x + y for x, y in zip(a, b)))
                try:
                    row = pos[key]
                except KeyError:
                    raise ValueError(f"image term {key} lies outside the target basis") from None
                M[row, col] += sign * c
    return M


def slice_matrix(alpha: DiffForm, p: int, d: int) -> tuple[SliceBasis, SliceBasis, np.ndarray]:
    """Matrix of alpha ^ - : Omega^p_d -> Omega^(p+1)_(d+n)."""
    n = coefficient_degree(alpha)
    ring = alpha.ring
    if p > ring.nvars:
        raise ValueError(f"form degree {p} exceeds the number of variables")
    src = slice_basis(ring, p, d)
    tgt = slice_basis(ring, p + 1, d + n)
    return src, tgt, wedge_matrix(alpha, src.elements, tgt.elements)


# ---------------------------------------------------------------- Smith normal form

def _as_rows(M) -> list[list[int]]:
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return [[int(x) for x in row] for row in arr.tolist()]


@dataclass
class SmithDecomposition:
    """U @ M @ V == D with U, V unimodular; Vinv is the inverse of V."""

    D: list[list[int]]
    U: list[list[int]]
    V: list[list[int]]
    Vinv: list[list[int]]
    factors: list[int]

    @property
    def rank(self) -> int:
        return len(self.factors)


def smith_decomposition(M, *, transforms: bool = True) -> SmithDecomposition:
    """Smith normal form by integer row/column operations.

    Pivot is the entry of smallest nonzero absolute value in the remaining
    block.  With ``transforms=False`` the unimodular matrices are not
    tracked (they come back empty), which is much cheaper.
    """
    A = _as_rows(M)
    m = len(A)
    n = len(A[0]) if m else 0
    if m and any(len(r) != n for r in A):
        raise ValueError("ragged matrix")
    eye = lambda k: [[int(i == j) for j in range(k)] for i in range(k)]  # noqa: E731
    U = eye(m) if transforms else []
    V = eye(n) if transforms else []
    Vi = eye(n) if transforms else []

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if transforms:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if transforms:
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rs, rd = A[src], A[dst]
        for t in range(n):
            if rs[t]:
                rd[t] += q * rs[t]
        if transforms:
            us, ud = U[src], U[dst]
            for t in range(m):
                if us[t]:
                    ud[t] += q * us[t]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if transforms:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            # inverse operation acts on rows of Vinv: row_src -= q * row_dst
            vd, vs = Vi[dst], Vi[src]
            for t in range(n):
                if vd[t]:
                    vs[t] -= q * vd[t]

    factors = []
    for s in range(min(m, n)):
        while True:
            best = None
            for i in range(s, m):
                row = A[i]
                for j in range(s, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != s:
                swap_rows(i, s)
            if j != s:
                swap_cols(j, s)
            piv = A[s][s]
            clean = True
            for i in range(s + 1, m):
                if A[i][s]:
                    q = A[i][s] // piv
                    if q:
                        add_row(i, s, -q)
                    if A[i][s]:
                        clean = False
            for j in range(s + 1, n):
                if A[s][j]:
                    q = A[s][j] // piv
                    if q:
                        add_col(j, s, -q)
                    if A[s][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(s + 1, m):
                if any(v % piv for v in A[i][s + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            add_row(s, bad, 1)
        if best is None:
            break
        if A[s][s] < 0:
            A[s] = [-v for v in A[s]]
            if transforms:
                U[s] = [-v for v in U[s]]
        factors.append(A[s][s])
    return SmithDecomposition(A, U, V, Vi, factors)


def smith_normal_form(M) -> tuple[list[int], int]:
    """Nonzero invariant factors d1 | d2 | ... and the rank."""
    dec = smith_decomposition(M, transforms=False)
    return dec.factors, dec.rank


def integer_rank(M) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    A = _as_rows(M)
    m = len(A)
    n = len(A[0]) if m else 0
    rank = 0
    prev = 1
    col = 0
    for col in range(n):
        pivot = next((i for i in range(rank, m) if A[i][col]), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        pr = A[rank]
        pv = pr[col]
        for i in range(rank + 1, m):
            ri = A[i]
            f = ri[col]
            if f:
                for t in range(col, n):
                    ri[t] = (pv * ri[t] - f * pr[t]) // prev
            else:
                for t in range(col, n):
                    ri[t] = (pv * ri[t]) // prev
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank


# ---------------------------------------------------------------- homology

@dataclass(frozen=True)
class HomologySlice:
    p: int
    d: int
    free_rank: int
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion


@dataclass(frozen=True)
class SliceRecord:
    p: int
    d: int
    source_dim: int
    target_dim: int
    rank: int
    homology_rank: int
    torsion: tuple[int, ...]
    passed: bool
    expected_rank: int | None = None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "rank": self.rank,
            "homology_rank": self.homology_rank,
            "torsion": list(self.torsion),
            "pass": self.passed,
        }


def homology_from_matrices(outgoing, incoming, dim: int) -> tuple[int, tuple[int, ...], int]:
    """Integer homology at a node of dimension ``dim``.

    ``outgoing`` maps out of the node, ``incoming`` maps into it.  Returns
    (free rank, torsion factors > 1, rank of outgoing).
    """
    if dim == 0:
        return 0, (), 0
    out = np.asarray(outgoing, dtype=object)
    inc = np.asarray(incoming, dtype=object)
    if out.shape[1] != dim or inc.shape[0] != dim:
        raise ValueError("matrix shapes do not match the node dimension")
    if out.shape[0] == 0:
        r = 0
        kernel_coords = inc
    else:
        dec = smith_decomposition(out)
        r = dec.rank
        # columns r.. of V span the kernel over Z; Vinv turns image vectors into kernel coordinates
        Vi = np.array(dec.Vinv, dtype=object).reshape(dim, dim)
        coords = Vi.dot(inc) if inc.shape[1] else np.zeros((dim, 0), dtype=object)
        if coords.shape[1] and any(coords[:r].ravel()):
            raise ArithmeticError("incoming image is not contained in the kernel")
        kernel_coords = coords[r:]
    kdim = dim - r
    if kdim == 0 or kernel_coords.shape[1] == 0:
        return kdim, (), r
    factors, rank_in = smith_normal_form(kernel_coords)
    torsion = tuple(f for f in factors if f > 1)
    return kdim - rank_in, torsion, r


def _slice_record(alpha: DiffForm, n: int, p: int, d: int) -> tuple[SliceRecord, HomologySlice]:
    ring = alpha.ring
    src = slice_basis(ring, p, d)
    tgt = slice_basis(ring, p + 1, d + n)
    prev = slice_basis(ring, p - 1, d - n)
    out = wedge_matrix(alpha, src.elements, tgt.elements)
    inc = wedge_matrix(alpha, prev.elements, src.elements)
    free, torsion, r = homology_from_matrices(out, inc, len(src))
    rec = SliceRecord(p, d, len(src), len(tgt), r, free, torsion, free == 0 and not torsion)
    return rec, HomologySlice(p, d, free, torsion)


def homology_slice(alpha: DiffForm, p: int, d: int) -> HomologySlice:
    """H = ker(Omega^p_d -> Omega^(p+1)_(d+n)) / im(Omega^(p-1)_(d-n) -> Omega^p_d)."""
    n = coefficient_degree(alpha)
    if p > alpha.ring.nvars:
        raise ValueError(f"form degree {p} exceeds the number of variables")
    return _slice_record(alpha, n, p, d)[1]


def top_cokernel_rank_oracle(N: int, n: int, d: int) -> int:
    """Number of degree-d monomials in N variables with every exponent below n."""
    if d < 0 or n <= 0:
        return 0
    count = 0

    def rec(vars_left, remaining):
        nonlocal count
        if vars_left == 0:
            count += remaining == 0
            return
        for a in range(min(n - 1, remaining) + 1):
            rec(vars_left - 1, remaining - a)

    rec(N, d)
    return count


@dataclass
class ExactnessReport:
    N: int
    n: int
    d_max: int
    records: list[SliceRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def top_ranks(self) -> list[int]:
        return [r.homology_rank for r in self.records if r.p == self.N]

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "n": self.n,
            "max_degree": self.d_max,
            "pass": self.passed,
            "top_ranks": self.top_ranks(),
            "slices": [r.to_dict() for r in self.records],
        }


def exactness_report(N: int, n: int, d_max: int) -> ExactnessReport:
    """Check the complex of sum_i x_i^n dx_i on every slice with d <= d_max.

    Positions p < N must have zero homology (no free part, no torsion); the
    top position must match :func:`top_cokernel_rank_oracle`.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    if n < 1:
        raise ValueError("n must be at least 1")
    if d_max < 0:
        raise ValueError("max degree must be nonnegative")
    alpha = power_form(N, n)
    report = ExactnessReport(N, n, d_max)
    for p in range(N + 1):
        for d in range(d_max + 1):
            rec, _ = _slice_record(alpha, n, p, d)
            if p == N:
                expected = top_cokernel_rank_oracle(N, n, d)
                ok = rec.homology_rank == expected and not rec.torsion
                rec = SliceRecord(
                    rec.p, rec.d, rec.source_dim, rec.target_dim, rec.rank,
                    rec.homology_rank, rec.torsion, ok, expected,
                )
            report.records.append(rec)
    return report


def minor_gcd(M, r: int) -> int:
    """gcd of all r x r minors; brute force, for checking small matrices only."""
    A = np.asarray(M, dtype=object)
    m, n = A.shape
    g = 0
    for rows in combinations(range(m), r):
        for cols in combinations(range(n), r):
            g = gcd(g, _det_int(A[np.ix_(rows, cols)].tolist()))
    return g


def _det_int(rows) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return int(rows[0][0])
    return sum(
        (-1) ** j * int(rows[0][j]) * _det_int([r[:j] + r[j + 1:] for r in rows[1:]])
        for j in range(n)
        if rows[0][j]
    )

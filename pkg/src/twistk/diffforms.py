"""Grothendieck differential forms over a polynomial ring and the level-k twist.

For a polynomial ring ``B = Z[v1..vn]`` the module of p-forms is free on
``dv_I = dv_{i1} ^ ... ^ dv_{ip}`` with ``i1 < ... < ip``.  A :class:`DiffForm`
stores the coefficient of each such basis element.

The twist at level k is the polynomial 1-form
``sum_i x_i^(m-1) dx_i = d(p_m)/m`` with ``m = N + k``.  Rewritten in the
elementary frame it is ``sum_j a_j de_j`` with ``a_j = (-1)^(j-1) h_(m-j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .poly_core import MultiPoly, RatPoly, Ring, render, substitute
from .symfunc import (
    complete_homogeneous_in_e,
    e_ring,
    elementary,
    expand_in_x,
    h_or_zero,
    power_sum_in_e,
    specialize_su,
    x_ring,
)

Index = tuple[int, ...]


class FrameMismatchError(ValueError):
    pass


class TwistConsistencyError(AssertionError):
    """The twist form failed one of its defining identities (an implementation bug)."""


def _merge_sign(a: Index, b: Index) -> tuple[int, Index | None]:
    """Sign of the shuffle sorting a+b, or (0, None) on a repeated index."""
    if set(a) & set(b):
        return 0, None
    # count inversions between the two increasing tuples
    inversions = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inversions += j
    return (-1) ** inversions, tuple(sorted(a + b))


class DiffForm:
    """A homogeneous p-form with polynomial coefficients, immutable."""

    __slots__ = ("ring", "degree", "_comps")

    def __init__(self, ring: Ring, degree: int, components: Mapping[Index, MultiPoly] | None = None):
        if degree < 0:
            raise ValueError("form degree must be nonnegative")
        self.ring = ring
        self.degree = degree
        comps = {}
        n = ring.nvars
        for idx, coeff in (components or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not have length {degree}")
            if any(a >= b for a, b in zip(idx, idx[1:])) or any(not 0 <= i < n for i in idx):
                raise ValueError(f"index {idx} is not strictly increasing within range")
            if not isinstance(coeff, MultiPoly):
                coeff = ring.const(coeff)
            if coeff.ring != ring:
                raise FrameMismatchError("coefficient lives in a different ring")
            if coeff:
                comps[idx] = coeff
        self._comps = dict(sorted(comps.items()))

    # ---- constructors ----
    @classmethod
    def zero(cls, ring: Ring, degree: int) -> DiffForm:
        return cls(ring, degree, {})

    @classmethod
    def function(cls, f: MultiPoly) -> DiffForm:
        return cls(f.ring, 0, {(): f})

    @classmethod
    def d_var(cls, ring: Ring, i: int) -> DiffForm:
        return cls(ring, 1, {(i,): ring.one()})

    # ---- protocol ----
    @property
    def components(self) -> dict[Index, MultiPoly]:
        return dict(self._comps)

    def coefficient(self, idx: Sequence[int]) -> MultiPoly:
        return self._comps.get(tuple(idx), self.ring.zero())

    def __bool__(self):
        return bool(self._comps)

    def is_zero(self) -> bool:
        return not self._comps

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        if self.ring != other.ring:
            return False
        if not self._comps and not other._comps:
            return True
        return self.degree == other.degree and self._comps == other._comps

    def __hash__(self):
        return hash((self.ring, self.degree, frozenset(self._comps.items())))

    def __repr__(self):
        return f"DiffForm({render_form(self)!r}, degree={self.degree})"

    def __str__(self):
        return render_form(self)

    def _check(self, other: DiffForm):
        if not isinstance(other, DiffForm):
            raise TypeError("expected a DiffForm")
        if other.ring != self.ring:
            raise FrameMismatchError(f"frame mismatch: {self.ring.names} vs {other.ring.names}")

    def __add__(self, other: DiffForm) -> DiffForm:
        self._check(other)
        if not other._comps:
            return self
        if not self._comps:
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        out = dict(self._comps)
        for idx, c in other._comps.items():
            out[idx] = out[idx] + c if idx in out else c
        return DiffForm(self.ring, self.degree, out)

    def __neg__(self):
        return DiffForm(self.ring, self.degree, {i: -c for i, c in self._comps.items()})

    def __sub__(self, other: DiffForm) -> DiffForm:
        return self + (-other)

    def scale(self, f) -> DiffForm:
        """Multiply every coefficient by a polynomial or number."""
        return DiffForm(self.ring, self.degree, {i: c * f for i, c in self._comps.items()})

    def __xor__(self, other: DiffForm) -> DiffForm:
        return wedge(self, other)

    def permute_variables(self, perm: Sequence[int]) -> DiffForm:
        """Apply the variable permutation v_i -> v_perm[i] to coefficients and basis symbols."""
        n = self.ring.nvars
        images = [self.ring.gen(perm[i]) for i in range(n)]
        out = DiffForm.zero(self.ring, self.degree)
        for idx, c in self._comps.items():
            new_idx = [perm[i] for i in idx]
            order = sorted(range(len(new_idx)), key=lambda t: new_idx[t])
            sign = _permutation_sign(order)
            piece = DiffForm(self.ring, self.degree, {tuple(sorted(new_idx)): substitute(c, images, self.ring) * sign})
            out = out + piece
        return out


def _permutation_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def wedge(f: DiffForm, g: DiffForm) -> DiffForm:
    f._check(g)
    out: dict[Index, MultiPoly] = {}
    for a, ca in f._comps.items():
        for b, cb in g._comps.items():
            sign, idx = _merge_sign(a, b)
            if not sign:
                continue
            term = ca * cb if sign > 0 else -(ca * cb)
            out[idx] = out[idx] + term if idx in out else term
    return DiffForm(f.ring, f.degree + g.degree, out)


def exterior_derivative(f: DiffForm) -> DiffForm:
    """d(sum c_I dv_I) = sum_I sum_i (dc_I/dv_i) dv_i ^ dv_I."""
    ring = f.ring
    out = DiffForm.zero(ring, f.degree + 1)
    for idx, c in f._comps.items():
        for i in range(ring.nvars):
            if i in idx:
                continue
            dc = c.diff(i)
            if dc:
                sign, new_idx = _merge_sign((i,), idx)
                out = out + DiffForm(ring, f.degree + 1, {new_idx: dc * sign})
    return out


def d(p: MultiPoly) -> DiffForm:
    return exterior_derivative(DiffForm.function(p))


def one_form(coeffs: Sequence[MultiPoly]) -> DiffForm:
    """sum_i coeffs[i] dv_i."""
    ring = coeffs[0].ring
    return DiffForm(ring, 1, {(i,): c for i, c in enumerate(coeffs)})


def frame_convert_d(F: MultiPoly) -> DiffForm:
    """X-frame 1-form of d(F(e_1(x), ..., e_N(x))), expanded through de_j.

    Each de_j is written as sum_i (de_j/dx_i) dx_i and the coefficients
    dF/de_j are pulled back along e_j -> e_j(x).
    """
    N = F.ring.nvars
    if F.ring != e_ring(N):
        raise FrameMismatchError("expected an E-frame polynomial")
    xr = x_ring(N)
    out = DiffForm.zero(xr, 1)
    for j in range(N):
        dF = F.diff(j)
        if not dF:
            continue
        coeff = expand_in_x(dF, N)
        de_j = d(elementary(j + 1, N))
        out = out + de_j.scale(coeff)
    return out


def pullback_one_form(coeffs_e: Sequence[MultiPoly], N: int) -> DiffForm:
    """X-frame expansion of sum_j coeffs_e[j] de_j."""
    xr = x_ring(N)
    out = DiffForm.zero(xr, 1)
    for j, a in enumerate(coeffs_e):
        if a:
            out = out + d(elementary(j + 1, N)).scale(expand_in_x(a, N))
    return out


def power_form(N: int, n: int) -> DiffForm:
    """sum_i x_i^n dx_i in the X-frame, generator of the Koszul-type complex."""
    xr = x_ring(N)
    return one_form([xr.gen(i) ** n for i in range(N)])


# ---------------------------------------------------------------- twist

@dataclass(frozen=True)
class TwistForm:
    """The twist ``m * delta`` in the three frames, with ``m = N + k``.

    ``e_coeffs[j]`` is the coefficient of ``de_(j+1)``; ``r_coeffs`` are the
    same with ``e_N = 1``, the generators of the fusion ideal.
    """

    N: int
    m: int
    x_form: DiffForm
    e_coeffs: tuple[MultiPoly, ...]
    r_coeffs: tuple[MultiPoly, ...]

    @property
    def k(self) -> int:
        return self.m - self.N

    def e_form(self) -> DiffForm:
        return one_form(self.e_coeffs)

    def r_form(self) -> DiffForm:
        return one_form(self.r_coeffs)


def twist_form_index(N: int, m: int) -> TwistForm:
    """Twist form with representative sum_i x_i^(m-1) dx_i, for any m >= 1.

    m = 1 is the basic gerbe itself, sum_i dx_i = de_1.
    """
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    if m < 1:
        raise ValueError("twist index must be positive")
    p_m = power_sum_in_e(m, N).to_rational()
    e_coeffs = []
    for j in range(N):
        a = p_m.diff(j) * Fraction(1, m)
        if not a.is_integral():
            raise TwistConsistencyError(f"a_{j + 1} = {a} is not integral")
        a = a.to_integer()
        expected = (-1) ** j * h_or_zero(m - j - 1, N)
        if a != expected:
            raise TwistConsistencyError(f"a_{j + 1} = {a} differs from (-1)^{j} h_{m - j - 1}")
        e_coeffs.append(MultiPoly(a.ring, a.terms))
    xr = x_ring(N)
    x_form = one_form([xr.gen(i) ** (m - 1) for i in range(N)])
    if pullback_one_form(e_coeffs, N) != x_form:
        raise TwistConsistencyError("back-expansion of sum a_j de_j does not reproduce the x-frame form")
    r_coeffs = tuple(specialize_su(a) for a in e_coeffs[:-1])
    return TwistForm(N, m, x_form, tuple(e_coeffs), r_coeffs)


def twist_form(N: int, k: int) -> TwistForm:
    """The level-k twist (N + k) * delta."""
    if k < 0:
        raise ValueError("level must be nonnegative")
    return twist_form_index(N, N + k)


def basic_gerbe(N: int) -> TwistForm:
    return twist_form_index(N, 1)


# ---------------------------------------------------------------- rendering

def _basis_symbol(ring: Ring, idx: Index) -> str:
    return "^".join(f"d{ring.names[i]}" for i in idx)


def render_form(f: DiffForm) -> str:
    """Text form, e.g. ``x2*dx1 + x1*dx2`` or ``(x1 - x2)*dx1^dx2``."""
    if not f._comps:
        return "0"
    pieces = []
    for idx, c in f._comps.items():
        sym = _basis_symbol(f.ring, idx)
        if not idx:
            text, neg = render(c), False
            if len(c) == 1 and text.startswith("-"):
                text, neg = text[1:], True
        elif len(c) == 1:
            ((e, coeff),) = c.items()
            neg = coeff < 0
            body = render(-c if neg else c)
            text = sym if body == "1" else f"{body}*{sym}"
        else:
            text, neg = f"({render(c)})*{sym}", False
        if not pieces:
            pieces.append(("-" if neg else "") + text)
        else:
            pieces.append((" - " if neg else " + ") + text)
    return "".join(pieces)

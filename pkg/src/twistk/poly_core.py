"""Exact multivariate (Laurent) polynomials over Z and Q.

A polynomial lives in a :class:`Ring`, which fixes the variable names and
whether negative exponents are allowed.  Terms are kept as a dict from
exponent tuples to coefficients, stored in descending graded
reverse-lexicographic order, so two polynomials are equal exactly when their
term dicts are equal.

:class:`MultiPoly` carries Python ``int`` coefficients; :class:`RatPoly`
carries :class:`fractions.Fraction` coefficients.  Mixing the two promotes
to :class:`RatPoly`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Complex, Rational
from typing import Iterable, Mapping, Sequence

Exps = tuple[int, ...]


class RingMismatchError(ValueError):
    pass


class PoleError(ZeroDivisionError):
    """Evaluation of a negative power at a zero coordinate."""


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Ring:
    """Variable names plus the Laurent flag. Arity is fixed at construction."""

    names: tuple[str, ...]
    laurent: bool = False

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return MultiPoly(self, {(0,) * self.nvars: 1})

    def const(self, c) -> MultiPoly:
        cls = RatPoly if isinstance(c, Fraction) and c.denominator != 1 else MultiPoly
        return cls(self, {(0,) * self.nvars: c})

    def gen(self, i: int) -> MultiPoly:
        exps = [0] * self.nvars
        exps[i] = 1
        return MultiPoly(self, {tuple(exps): 1})

    def gens(self) -> list[MultiPoly]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> MultiPoly:
        return MultiPoly(self, {tuple(exps): coeff})


def grevlex_key(exps: Exps):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def lex_key(exps: Exps):
    return exps


def _normalize_rational(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class MultiPoly:
    """Immutable polynomial with integer coefficients.

    Construct through a :class:`Ring` or :func:`parse`; the raw constructor
    accepts any mapping of exponent tuples to coefficients and drops zeros.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exps, object] | None = None):
        self.ring = ring
        cleaned = {}
        n = ring.nvars
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise RingMismatchError(f"exponent vector {exps} has wrong arity for {ring.names}")
            if not ring.laurent and any(e < 0 for e in exps):
                raise ValueError(f"negative exponent {exps} in a non-Laurent ring")
            c = self._coerce(c)
            if c:
                cleaned[exps] = c
        self._terms = dict(sorted(cleaned.items(), key=lambda t: grevlex_key(t[0]), reverse=True))
        self._hash = None

    @staticmethod
    def _coerce(c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise TypeError(f"non-integral coefficient {c} in MultiPoly; use RatPoly")
            return int(c)
        if isinstance(c, bool) or not isinstance(c, int):
            raise TypeError(f"coefficient {c!r} is not an integer")
        return c

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> MultiPoly:
        # caller guarantees: correct arity, coefficients already of the right kind
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = dict(
            sorted(((e, c) for e, c in terms.items() if c), key=lambda t: grevlex_key(t[0]), reverse=True)
        )
        obj._hash = None
        return obj

    # ---- basic protocol ----
    @property
    def terms(self) -> dict[Exps, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * self.ring.nvars: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({render(self)!r}, {self.ring.names})"

    def __str__(self):
        return render(self)

    # ---- arithmetic ----
    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            cls = RatPoly if isinstance(other, Fraction) else MultiPoly
            return cls._raw(self.ring, {(0,) * self.ring.nvars: other})
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    @staticmethod
    def _result_cls(a: MultiPoly, b: MultiPoly):
        return RatPoly if isinstance(a, RatPoly) or isinstance(b, RatPoly) else MultiPoly

    def _wrap(self, cls, terms):
        if cls is RatPoly:
            terms = {e: _normalize_rational(c) for e, c in terms.items()}
        return cls._raw(self.ring, terms)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return self._wrap(self._result_cls(self, other), out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out: dict[Exps, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._wrap(self._result_cls(self, other), out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers are only defined for monomials")
            (e, c), = self._terms.items()
            if not self.ring.laurent:
                raise ValueError("negative exponent in a non-Laurent ring")
            if c not in (1, -1):
                raise ValueError("negative power of a non-unit monomial")
            return type(self)._raw(self.ring, {tuple(n * x for x in e): c ** (-n)})
        result = self.ring.one()
        if isinstance(self, RatPoly):
            result = result.to_rational()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ---- structure ----
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max((sum(w * x for w, x in zip(weights, e)) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading_term(self, key=grevlex_key) -> tuple[Exps, object]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        if key is grevlex_key:
            return next(iter(self._terms.items()))
        return max(self._terms.items(), key=lambda t: key(t[0]))

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), 0)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def to_rational(self) -> RatPoly:
        return RatPoly._raw(self.ring, {e: Fraction(c) for e, c in self._terms.items()})

    def to_integer(self) -> MultiPoly:
        out = {}
        for e, c in self._terms.items():
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"coefficient {c} is not integral")
                c = c.numerator
            out[e] = c
        return MultiPoly._raw(self.ring, out)

    def is_integral(self) -> bool:
        return all(not isinstance(c, Fraction) or c.denominator == 1 for c in self._terms.values())

    def change_ring(self, ring: Ring) -> MultiPoly:
        """Reinterpret the same exponent vectors in a ring of equal arity."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatchError("arity differs")
        return type(self)(ring, self._terms)

    # ---- calculus / evaluation ----
    def diff(self, var_index: int, *, allow_laurent: bool = False) -> MultiPoly:
        return partial_derivative(self, var_index, allow_laurent=allow_laurent)

    def evaluate(self, point: Sequence):
        return evaluate(self, point)

    def substitute(self, images: Sequence[MultiPoly], target: Ring | None = None) -> MultiPoly:
        return substitute(self, images, target)


class RatPoly(MultiPoly):
    """Polynomial with exact rational coefficients (lowest terms, positive denominator)."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
            raise TypeError(f"coefficient {c!r} is not rational")
        return Fraction(c)

    def monic(self) -> RatPoly:
        _, lc = self.leading_term()
        return RatPoly._raw(self.ring, {e: c / lc for e, c in self._terms.items()})


def arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring.names} vs {b.ring.names}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(p: MultiPoly, var_index: int, *, allow_laurent: bool = False) -> MultiPoly:
    if not 0 <= var_index < p.ring.nvars:
        raise IndexError(f"variable index {var_index} out of range for {p.ring.names}")
    if p.ring.laurent and not allow_laurent and any(x < 0 for e in p._terms for x in e):
        raise ValueError("derivative of a Laurent polynomial requires allow_laurent=True")
    out = {}
    for e, c in p._terms.items():
        k = e[var_index]
        if k:
            ne = list(e)
            ne[var_index] = k - 1
            out[tuple(ne)] = c * k
    return type(p)._raw(p.ring, out)


def evaluate(p: MultiPoly, point: Sequence):
    """Evaluate at a point.

    Integer and rational points give exact results; any complex or float
    coordinate switches to floating arithmetic.
    """
    if len(point) != p.ring.nvars:
        raise ValueError(f"point has {len(point)} coordinates, ring has {p.ring.nvars} variables")
    exact = all(isinstance(v, Rational) for v in point)
    if not exact and not all(isinstance(v, Complex) for v in point):
        raise TypeError("point coordinates must be rational or complex numbers")
    vals = [Fraction(v) if exact else complex(v) for v in point]
    total = Fraction(0) if exact else 0j
    for e, c in p._terms.items():
        t = c
        for v, k in zip(vals, e):
            if k < 0 and v == 0:
                raise PoleError("negative power of a zero coordinate")
            if k:
                t = t * v**k
        total += t
    if exact and total.denominator == 1:
        return total.numerator
    return total


def linear_combination(pairs: Iterable[tuple[object, MultiPoly]], ring: Ring) -> MultiPoly:
    """sum of c * p over (c, p) pairs, accumulated in one pass."""
    out: dict[Exps, object] = {}
    rational = False
    for c, p in pairs:
        if p.ring != ring:
            raise RingMismatchError("summand lives in a different ring")
        rational = rational or isinstance(p, RatPoly) or isinstance(c, Fraction)
        for e, v in p._terms.items():
            out[e] = out.get(e, 0) + c * v
    if rational:
        return RatPoly._raw(ring, {e: _normalize_rational(v) for e, v in out.items()})
    return MultiPoly._raw(ring, out)


def substitute(p: MultiPoly, images: Sequence[MultiPoly], target: Ring | None = None) -> MultiPoly:
    """Ring map sending variable i to images[i]."""
    if len(images) != p.ring.nvars:
        raise ValueError("one image per variable required")
    if target is None:
        if not images:
            raise ValueError("target ring needed for a zero-variable source")
        target = images[0].ring
    for im in images:
        if im.ring != target:
            raise RingMismatchError("images live in different rings")
    if any(x < 0 for e in p._terms for x in e):
        raise ValueError("substitution of negative powers is not supported")
    # monomial images built incrementally: x^e = x^(e - unit_i) * x_i
    cache: dict[Exps, MultiPoly] = {(0,) * p.ring.nvars: target.one()}

    def image(e: Exps) -> MultiPoly:
        if e not in cache:
            i = max(t for t, x in enumerate(e) if x)
            prev = e[:i] + (e[i] - 1,) + e[i + 1:]
            cache[e] = image(prev) * images[i]
        return cache[e]

    return linear_combination(((c, image(e)) for e, c in p._terms.items()), target)


# ---------------------------------------------------------------- rendering

def _render_monomial(names, exps) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render(p: MultiPoly) -> str:
    """Canonical text: explicit ``*`` and ``^``, terms in descending grevlex order."""
    if not p._terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(p._terms.items()):
        neg = c < 0
        a = -c if neg else c
        mono = _render_monomial(p.ring.names, e)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^()/])")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), pos))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), pos))
        else:
            tokens.append((m.group(3), m.group(3), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring, rational: bool):
        self.ring = ring
        self.rational = rational
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, what: str):
        kind, value, pos = self.peek()
        found = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"expected {what}, found {found}", pos)

    def parse(self) -> MultiPoly:
        result = self.expr()
        if self.peek()[0] != "end":
            self.fail("operator or end of input")
        return result

    def expr(self):
        result = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            if op == "*":
                result = result * self.unary()
            else:
                kind, value, pos = self.peek()
                if kind != "int":
                    self.fail("integer denominator")
                if not self.rational:
                    raise ParseError("division requires a rational parse", pos)
                self.take()
                if int(value) == 0:
                    raise ParseError("division by zero", pos)
                result = result.to_rational() * Fraction(1, int(value))
        return result

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                _, _, pos = self.take()
                sign = -1
            kind, value, pos = self.peek()
            if kind != "int":
                self.fail("integer exponent")
            self.take()
            n = sign * int(value)
            if n < 0:
                if not self.ring.laurent:
                    raise ParseError("negative exponent in a non-Laurent ring", pos)
                try:
                    return base ** n
                except ValueError as exc:
                    raise ParseError(str(exc), pos) from None
            return base ** n
        return base

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return self.ring.const(int(value))
        if kind == "name":
            self.take()
            if value not in self.ring.names:
                raise ParseError(f"unknown variable {value!r}", pos)
            return self.ring.gen(self.ring.index(value))
        if kind == "(":
            self.take()
            inner = self.expr()
            if self.peek()[0] != ")":
                self.fail("')'")
            self.take()
            return inner
        self.fail("number, variable or '('")


def parse(text: str, ring: Ring, *, rational: bool = False) -> MultiPoly:
    """Parse ``text`` into a canonical polynomial of ``ring``.

    Grammar: integer literals, the ring's variable names, ``+ - * ^`` and
    parentheses.  With ``rational=True`` a ``/`` followed by an integer
    literal is also accepted and the result is a :class:`RatPoly`.
    """
    result = _Parser(text, ring, rational).parse()
    if rational and not isinstance(result, RatPoly):
        result = result.to_rational()
    return result


def validate(p: MultiPoly) -> None:
    """Raise AssertionError if ``p`` violates its storage invariants."""
    keys = list(p._terms)
    assert all(c != 0 for c in p._terms.values()), "zero coefficient stored"
    assert keys == sorted(keys, key=grevlex_key, reverse=True), "terms out of order"
    for e in keys:
        assert len(e) == p.ring.nvars
        assert p.ring.laurent or min(e, default=0) >= 0
    if isinstance(p, RatPoly):
        assert all(isinstance(c, Fraction) for c in p._terms.values())
    else:
        assert all(type(c) is int for c in p._terms.values())


def monomials_of_degree(nvars: int, d: int) -> Iterable[Exps]:
    """All exponent vectors of total degree ``d``, in descending grevlex order."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    out = []

    def rec(prefix, left, remaining):
        if remaining == 1:
            out.append(prefix + (left,))
            return
        for a in range(left, -1, -1):
            rec(prefix + (a,), left - a, remaining - 1)

    rec((), d, nvars)
    out.sort(key=grevlex_key, reverse=True)
    yield from out

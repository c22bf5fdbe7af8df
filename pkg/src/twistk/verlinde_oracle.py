"""Independent fusion coefficients from characters at Verlinde points.

Each level-k weight mu gives a regular element of the maximal torus of SU(N)
whose eigenvalues are roots of unity of order dividing N*(N+k).  Schur
characters evaluated on these points diagonalise the fusion ring, so the
structure constants solve a linear system.  Nothing here touches the
Groebner machinery.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .diffforms import twist_form
from .poly_core import evaluate
from .symfunc import canonical_weight, elementary, level_weights, schur_in_e

DEFAULT_TOLERANCE = 1e-6
DEFAULT_CONDITION_BOUND = 1e8


class OracleError(ArithmeticError):
    pass


class IllConditioned(OracleError):
    pass


class ResidualTooLarge(OracleError):
    pass


class NegativeCoefficient(OracleError):
    pass


@dataclass(frozen=True)
class VerlindePoint:
    label: tuple[int, ...]
    coordinates: tuple[complex, ...]

    def elementary_values(self) -> list[complex]:
        N = len(self.coordinates)
        return [complex(evaluate(elementary(j, N), self.coordinates)) for j in range(1, N + 1)]


def verlinde_points(N: int, k: int) -> list[VerlindePoint]:
    """One determinant-one torus point per level-k weight.

    The shifted weight mu_a + (N - a) sets angles 2*pi*shift/(N + k); all
    coordinates are then divided by the N-th root of their product.
    """
    if N < 2 or k < 0:
        raise ValueError("need N >= 2 and k >= 0")
    points = []
    for mu in level_weights(N, k):
        parts = list(mu) + [0] * (N - len(mu))
        theta = [2 * cmath.pi * (parts[a] + N - 1 - a) / (N + k) for a in range(N)]
        shift = cmath.exp(-1j * sum(theta) / N)
        coords = tuple(cmath.exp(1j * t) * shift for t in theta)
        prod = np.prod(coords)
        if abs(prod - 1) >= 1e-9:
            raise OracleError(f"point for {mu} has determinant {prod}")
        if min(abs(a - b) for i, a in enumerate(coords) for b in coords[i + 1:]) < 1e-9:
            raise OracleError(f"point for {mu} is not regular")
        points.append(VerlindePoint(mu, coords))
    return points


def evaluation_matrix(N: int, k: int, points=None) -> np.ndarray:
    """V[sigma, nu] = s_nu(t_sigma)."""
    weights = level_weights(N, k)
    points = points if points is not None else verlinde_points(N, k)
    V = np.empty((len(points), len(weights)), dtype=complex)
    for s, pt in enumerate(points):
        evals = pt.elementary_values()
        for j, nu in enumerate(weights):
            V[s, j] = complex(evaluate(schur_in_e(nu, N), evals))
    return V


@dataclass
class OracleTable:
    N: int
    k: int
    weights: tuple
    table: dict  # (lam, mu) -> {nu: coeff}
    max_residual: float
    condition_estimate: float

    def coefficient(self, lam, mu, nu) -> int:
        return self.table[(tuple(lam), tuple(mu))].get(tuple(nu), 0)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "rank": len(self.weights),
            "weights": [list(w) for w in self.weights],
            "table": table_to_records(self.table, self.weights),
            "max_residual": self.max_residual,
            "condition_estimate": self.condition_estimate,
        }


def table_to_records(table: dict, weights) -> list[dict]:
    order = {w: i for i, w in enumerate(weights)}
    return [
        {
            "lhs": list(lam),
            "rhs": list(mu),
            "result": [
                {"weight": list(nu), "coeff": c}
                for nu, c in sorted(table[(lam, mu)].items(), key=lambda t: order[t[0]])
            ],
        }
        for lam in weights
        for mu in weights
    ]


def oracle_fusion(
    N: int,
    k: int,
    tolerance: float = DEFAULT_TOLERANCE,
    condition_bound: float = DEFAULT_CONDITION_BOUND,
) -> OracleTable:
    """Fusion table from s_lam * s_mu = sum_nu c_nu s_nu evaluated at every Verlinde point."""
    weights = tuple(level_weights(N, k))
    V = evaluation_matrix(N, k)
    cond = float(np.linalg.cond(V))
    if not np.isfinite(cond) or cond > condition_bound:
        raise IllConditioned(f"evaluation matrix condition estimate {cond:.3g} exceeds {condition_bound:.3g}")
    Vinv = np.linalg.inv(V)
    table = {}
    max_residual = 0.0
    for i, lam in enumerate(weights):
        for j, mu in enumerate(weights):
            c = Vinv @ (V[:, i] * V[:, j])
            rounded = np.rint(c.real)
            max_residual = max(max_residual, float(np.max(np.abs(c - rounded))))
            if rounded.min() < 0:
                raise NegativeCoefficient(f"negative fusion coefficient for {lam} x {mu}")
            table[(lam, mu)] = {nu: int(v) for nu, v in zip(weights, rounded) if v}
    if max_residual >= tolerance:
        raise ResidualTooLarge(f"rounding residual {max_residual:.3g} is not below {tolerance:.3g}")
    return OracleTable(N, k, weights, table, max_residual, cond)


def ideal_vanishing_check(N: int, k: int, tolerance: float = DEFAULT_TOLERANCE) -> dict:
    """Evaluate every fusion-ideal generator at every Verlinde point."""
    gens = twist_form(N, k).r_coeffs
    worst = 0.0
    per_point = []
    for pt in verlinde_points(N, k):
        evals = pt.elementary_values()[:-1]
        mods = [abs(complex(evaluate(g, evals))) for g in gens]
        worst = max([worst] + mods)
        per_point.append({"weight": list(pt.label), "max_modulus": max(mods, default=0.0)})
    return {"N": N, "k": k, "max_modulus": worst, "pass": worst < tolerance, "points": per_point}


def su2_fusion_rule(k: int) -> dict:
    """Closed-form su(2)_k fusion, with the weight (j,) standing for spin j/2.

    c appears in a x b iff |a - b| <= c <= min(a + b, 2k - a - b) and
    a + b + c is even.
    """
    if k < 0:
        raise ValueError("level must be nonnegative")
    w = lambda j: canonical_weight((j,))  # noqa: E731
    table = {}
    for a in range(k + 1):
        for b in range(k + 1):
            table[(w(a), w(b))] = {
                w(c): 1
                for c in range(k + 1)
                if abs(a - b) <= c <= min(a + b, 2 * k - a - b) and (a + b + c) % 2 == 0
            }
    return table

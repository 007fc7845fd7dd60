"""Polytropes ``Q_M = {u in R^d / R1 : u_i - u_j <= m_ij}``.

Points of ``R^d / R1`` are represented by the chart ``u_d = 0``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyhedra import HCone, polytope_vertices
from .trop import (
    INF,
    EmptyWitness,
    Semiring,
    TropMatrix,
    as_matrix,
    kleene_star,
)

LatticeClass = tuple  # tuple[int, ...] with last coordinate 0


class EmptyPolytropeError(ValueError):
    def __init__(self, witness: EmptyWitness):
        super().__init__(f"polytrope is empty: negative cycle {witness.cycle} of weight {witness.weight}")
        self.witness = witness


class DegeneratePolytropeWarning(UserWarning):
    """The polytrope is not full-dimensional; tropical vertex lists may repeat or collapse."""


def normalize(u: Sequence) -> tuple:
    """Representative of ``u`` modulo ``R1`` with last coordinate 0."""
    last = u[-1]
    return tuple(x - last for x in u)


@dataclass(frozen=True)
class Polytrope:
    defining: TropMatrix
    canonical: TropMatrix | None
    witness: EmptyWitness | None = None

    @property
    def d(self) -> int:
        return self.defining.d

    @property
    def empty(self) -> bool:
        return self.canonical is None

    def require_nonempty(self) -> TropMatrix:
        if self.canonical is None:
            raise EmptyPolytropeError(self.witness)
        return self.canonical


def make_polytrope(M) -> Polytrope:
    M = as_matrix(M)
    if not M.is_finite():
        raise ValueError("polytropes need a finite defining matrix")
    C = kleene_star(M)
    if isinstance(C, EmptyWitness):
        return Polytrope(M, None, C)
    return Polytrope(M, C)


def is_standard_form(M) -> bool:
    M = as_matrix(M)
    d = M.d
    if any(x < 0 for row in M for x in row):
        return False
    return all(M[i][j] + M[j][i] > 0 for i in range(d) for j in range(d) if i != j)


def is_full_dimensional(C: TropMatrix) -> bool:
    d = C.d
    return all(C[i][j] + C[j][i] > 0 for i in range(d) for j in range(i + 1, d))


def _dedupe(points) -> list[tuple]:
    seen = []
    for p in points:
        if p not in seen:
            seen.append(p)
    return seen


def tropical_vertices(P: Polytrope, sr: Semiring) -> list[LatticeClass]:
    """Min-plus vertices are the columns of the canonical matrix ``C``; max-plus ones
    are the columns of ``-C^t``.  Returned in column order, duplicates removed."""
    C = P.require_nonempty()
    if not is_full_dimensional(C):
        warnings.warn("polytrope is not full-dimensional", DegeneratePolytropeWarning, stacklevel=2)
    d = C.d
    if sr is Semiring.MIN_PLUS:
        cols = [tuple(C[i][j] for i in range(d)) for j in range(d)]
    else:
        cols = [tuple(-C[j][i] for i in range(d)) for j in range(d)]
    return _dedupe(normalize(c) for c in cols)


def coordinate_bounds(C: TropMatrix) -> list[tuple[int, int]]:
    """Tight range of each coordinate once ``u_d = 0``: ``-c_{d,i} <= u_i <= c_{i,d}``."""
    d = C.d
    return [(-C[d - 1][i], C[i][d - 1]) for i in range(d)]


def integer_points(P: Polytrope) -> list[LatticeClass]:
    """All integer classes in ``Q_M``, lexicographically sorted.

    Depth-first search over coordinates; each new coordinate's range comes from
    the already fixed ones through the canonical matrix, so no branch dead-ends.
    """
    C = P.require_nonempty()
    d = C.d
    if d == 1:
        return [(0,)]
    out: list[tuple] = []
    u = [0] * d

    def rec(i: int):
        if i == d - 1:
            out.append(tuple(u))
            return
        lo = -C[d - 1][i]
        hi = C[i][d - 1]
        for j in range(i):
            lo = max(lo, u[j] - C[j][i])
            hi = min(hi, u[j] + C[i][j])
        for x in range(lo, hi + 1):
            u[i] = x
            rec(i + 1)

    rec(0)
    return out


def contains(P: Polytrope, u: Sequence) -> bool:
    M = P.defining
    if len(u) != M.d:
        raise ValueError(f"dimension mismatch: {len(u)} vs {M.d}")
    d = M.d
    return all(u[i] - u[j] <= M[i][j] for i in range(d) for j in range(d))


def chart_hcone(C: TropMatrix) -> HCone:
    """Inequalities of ``Q_C`` in the chart ``u_d = 0`` over coordinates ``u_1..u_{d-1}``."""
    d = C.d
    n = d - 1
    rows, rhs = [], []
    for i in range(d):
        for j in range(d):
            if i == j or C[i][j] == INF:
                continue
            a = [0] * n
            if i < n:
                a[i] += 1
            if j < n:
                a[j] -= 1
            rows.append(a)
            rhs.append(C[i][j])
    return HCone.from_rows(n, rows, rhs)


def classical_vertices(P: Polytrope) -> list[tuple[Fraction, ...]]:
    """Vertices of ``Q_M`` as an ordinary polytope, exact, in the ``u_d = 0`` chart."""
    C = P.require_nonempty()
    if C.d == 1:
        return [(Fraction(0),)]
    V = polytope_vertices(chart_hcone(C))
    return [tuple(v) + (Fraction(0),) for v in V.rays_or_vertices]

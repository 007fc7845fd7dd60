"""Graduated orders, Plesken-Zassenhaus orders and polytrope regions.

Matrices with zero diagonal are vectorised row-major with the diagonal
omitted: ``[m_12, m_13, ..., m_21, m_23, ...]``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import polyhedra as ph
from .polytrope import (
    LatticeClass,
    Semiring,
    is_standard_form,
    make_polytrope,
    normalize,
    tropical_vertices,
)
from .trop import MAX_PLUS, TropMatrix, as_matrix, rank_one, trop_sum


class NotAnOrderError(ValueError):
    def __init__(self, violation: "Violation"):
        super().__init__(str(violation))
        self.violation = violation


class NotStandardFormError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """Why a matrix is not the exponent matrix of an order.

    ``kind`` is ``"diagonal"`` (``indices = (i,)``, ``m_ii != 0``) or
    ``"triangle"`` (``indices = (i, j, k)`` with ``m_ik > m_ij + m_jk``).
    Indices are 0-based.
    """

    kind: str
    indices: tuple[int, ...]

    def __str__(self) -> str:
        if self.kind == "diagonal":
            return f"nonzero diagonal entry at {self.indices[0]}"
        i, j, k = self.indices
        return f"m[{i}][{k}] > m[{i}][{j}] + m[{j}][{k}]"


@dataclass(frozen=True)
class GraduatedOrder:
    M: TropMatrix

    def __post_init__(self):
        M = as_matrix(self.M)
        object.__setattr__(self, "M", M)
        v = _violation(M)
        if v is not None:
            raise NotAnOrderError(v)

    @property
    def d(self) -> int:
        return self.M.d


def _violation(M: TropMatrix) -> Violation | None:
    if not M.is_finite():
        raise ValueError("order exponent matrices must be finite")
    d = M.d
    for i in range(d):
        if M[i][i] != 0:
            return Violation("diagonal", (i,))
    for i in range(d):
        for j in range(d):
            for k in range(d):
                if M[i][k] > M[i][j] + M[j][k]:
                    return Violation("triangle", (i, j, k))
    return None


def check_order(M) -> GraduatedOrder | Violation:
    M = as_matrix(M)
    v = _violation(M)
    return GraduatedOrder(M) if v is None else v


def witness_product(v: Violation, M, p: int):
    """The two generators ``p^{m_ij} E_ij``, ``p^{m_jk} E_jk`` whose product leaves ``Lambda_M``."""
    if v.kind != "triangle":
        raise ValueError("only triangle violations have a product witness")
    M = as_matrix(M)
    i, j, k = v.indices
    d = M.d

    def unit(a, b, e):
        return tuple(tuple(Fraction(p) ** e if (r, c) == (a, b) else Fraction(0) for c in range(d)) for r in range(d))

    return unit(i, j, M[i][j]), unit(j, k, M[j][k])


# -- Plesken-Zassenhaus orders -----------------------------------------------------

def pz_order(points: Sequence[Sequence[int]]) -> GraduatedOrder:
    """Max-plus sum of the rank-one matrices ``M(u)`` over the configuration."""
    pts = list(dict.fromkeys(normalize(tuple(int(x) for x in u)) for u in points))
    if not pts:
        raise ValueError("configuration must be nonempty")
    d = len(pts[0])
    if any(len(u) != d for u in pts):
        raise ValueError("configuration points differ in dimension")
    return GraduatedOrder(trop_sum(MAX_PLUS, (rank_one(u) for u in pts)))


def _standard(O: GraduatedOrder) -> GraduatedOrder:
    if not is_standard_form(O.M):
        raise NotStandardFormError("order is not in standard form")
    return O


def projective_classes(O: GraduatedOrder) -> list[LatticeClass]:
    """Normalised columns of M: the projective lattices ``L_u``."""
    return tropical_vertices(make_polytrope(_standard(O).M), Semiring.MIN_PLUS)


def injective_classes(O: GraduatedOrder) -> list[LatticeClass]:
    """Normalised columns of ``-M^t``: the injective lattices ``L_v``."""
    return tropical_vertices(make_polytrope(_standard(O).M), Semiring.MAX_PLUS)


# -- vectorised matrices ------------------------------------------------------------

def vectorize(M) -> tuple:
    return tuple(M[i][j] for i, j in ph.offdiag_pairs(len(M)))


def devectorize(v: Sequence, d: int):
    """Inverse of :func:`vectorize`; rational entries stay rational."""
    if len(v) != d * (d - 1):
        raise ValueError(f"expected {d * (d - 1)} entries, got {len(v)}")
    it = iter(v)
    rows = [[0 if i == j else next(it) for j in range(d)] for i in range(d)]
    if any(isinstance(x, Fraction) and x.denominator != 1 for row in rows for x in row):
        return tuple(tuple(Fraction(x) for x in row) for row in rows)
    return TropMatrix(tuple(tuple(int(x) for x in row) for row in rows))


def _triangle_rows(d: int) -> list[list[int]]:
    pairs = ph.offdiag_pairs(d)
    index = {p: k for k, p in enumerate(pairs)}
    if d == 2:
        # no distinct triples; keep 0 <= m_12 + m_21, implied by the others once d >= 3
        return [[-1, -1]]
    rows = []
    for i, j, k in itertools.permutations(range(d), 3):
        a = [0] * len(pairs)
        a[index[(i, k)]] += 1
        a[index[(i, j)]] -= 1
        a[index[(j, k)]] -= 1
        rows.append(a)
    return rows


def region_hrep(d: int) -> ph.HCone:
    """The cone of Kleene stars: ``m_ik - m_ij - m_jk <= 0`` over distinct ``i, j, k``."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return ph.HCone.from_rows(d * (d - 1), _triangle_rows(d))


@dataclass(frozen=True)
class RegionCensus:
    d: int
    hrep: ph.HCone
    rays: ph.VRep
    incidence: ph.IncidenceMatrix
    orbits: ph.OrbitReport
    fvector: ph.FVector | None

    @property
    def lineality_dim(self) -> int:
        return len(self.rays.lineality_basis)


def region_census(d: int, fvector: bool | None = None) -> RegionCensus:
    """Extreme rays of the polytrope region modulo lineality, their S_d-orbits,
    and (by default for ``d <= 4``) the f-vector of the projectivised cone.

    Rays are primitive integer vectors in the chart where the first row of the
    matrix is zero.
    """
    H = region_hrep(d)
    V = ph.extreme_rays(H)
    inc = ph.incidence(H, V)
    chart = ph.LinealityChart(V.lineality_basis, H.ambient_dim)
    orbits = ph.sd_orbits(V.rays_or_vertices, d, inc.facet_counts(), canon=chart.ray)
    if fvector is None:
        fvector = d <= 4
    fv = ph.f_vector(inc) if fvector and d >= 3 else None
    return RegionCensus(d, H, V, inc, orbits, fv)


def ray_class(v: Sequence, d: int) -> tuple[int, ...]:
    """Chart representative of a vectorised matrix modulo the rank-one lineality."""
    basis = [vectorize(rank_one([int(i == k) for i in range(d)])) for k in range(d)]
    return ph.LinealityChart(basis, d * (d - 1)).ray(v)


# -- truncated regions -----------------------------------------------------------------

def truncated_hrep(M) -> ph.HCone:
    M = as_matrix(M)
    d = M.d
    rows = _triangle_rows(d)
    rhs = [0] * len(rows)
    for k, (i, j) in enumerate(ph.offdiag_pairs(d)):
        a = [0] * (d * (d - 1))
        a[k] = 1
        rows.append(a)
        rhs.append(M[i][j])
    return ph.HCone.from_rows(d * (d - 1), rows, rhs)


def truncated_integer_points(M) -> list[TropMatrix]:
    """Integer Kleene stars ``N <= M``, by depth-first search over the vectorised entries.

    Each entry gets bounds from the triangle inequalities through entries that
    are already fixed (box bounds ``-m_ji <= n_ij <= m_ij`` stand in for the rest);
    an inequality is enforced exactly once its last entry is fixed.
    """
    M = as_matrix(M)
    d = M.d
    if d == 1:
        return [TropMatrix([[0]])]
    pairs = ph.offdiag_pairs(d)
    N = [[0] * d for _ in range(d)]
    fixed = [[i == j for j in range(d)] for i in range(d)]
    hi_box = [[M[i][j] for j in range(d)] for i in range(d)]
    lo_box = [[-M[j][i] for j in range(d)] for i in range(d)]

    def hi(i, j):
        return N[i][j] if fixed[i][j] else hi_box[i][j]

    def lo(i, j):
        return N[i][j] if fixed[i][j] else lo_box[i][j]

    out: list[TropMatrix] = []

    def rec(t: int):
        if t == len(pairs):
            out.append(TropMatrix._raw(tuple(tuple(r) for r in N)))
            return
        i, j = pairs[t]
        upper = M[i][j]
        lower = max(-M[j][i], -hi(j, i))
        for k in range(d):
            if k == i or k == j:
                continue
            upper = min(upper, hi(i, k) + hi(k, j))
            lower = max(lower, lo(i, k) - hi(j, k), lo(k, j) - hi(k, i))
        fixed[i][j] = True
        for x in range(lower, upper + 1):
            N[i][j] = x
            rec(t + 1)
        fixed[i][j] = False
        N[i][j] = 0

    rec(0)
    return sorted(out, key=vectorize)


@dataclass(frozen=True)
class TruncatedRegion:
    M: TropMatrix
    hrep: ph.HCone
    vertices: ph.VRep
    incidence: ph.IncidenceMatrix
    integer_points: tuple[TropMatrix, ...]
    fvector: ph.FVector | None

    def orbits(self, group: Sequence[Sequence[int]] | None = None) -> ph.OrbitReport:
        """Vertex orbits under the permutations of ``[d]`` that fix ``M``."""
        d = self.M.d
        group = group if group is not None else symmetries(self.M)
        return ph.sd_orbits(self.vertices.rays_or_vertices, d, self.incidence.facet_counts(), group=group)


def symmetries(M) -> list[tuple[int, ...]]:
    """Permutations ``sigma`` with ``m_{sigma i, sigma j} = m_ij``."""
    M = as_matrix(M)
    d = M.d
    return [s for s in itertools.permutations(range(d))
            if all(M[s[i]][s[j]] == M[i][j] for i in range(d) for j in range(d))]


def truncated_region(O: GraduatedOrder, fvector: bool = False, integer_points: bool = True) -> TruncatedRegion:
    """The polytope of Kleene stars dominated by M (orders containing ``Lambda_M``)."""
    M = O.M
    H = truncated_hrep(M)
    V = ph.polytope_vertices(H)
    inc = ph.incidence(H, V)
    pts = tuple(truncated_integer_points(M)) if integer_points else ()
    fv = ph.f_vector(inc) if fvector else None
    return TruncatedRegion(M, H, V, inc, pts, fv)

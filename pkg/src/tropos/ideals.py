"""Fractional ideals ``I_N`` of a graduated order and their class semigroup.

An ideal class is an integer ``d x d`` matrix ``N`` with ``N . M = M . N = N``
(min-plus), taken modulo adding a constant to every entry; the stored
representative has minimum entry 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import polyhedra as ph
from .groups import GroupDescriptor, describe
from .orders import GraduatedOrder, NotStandardFormError
from .polytrope import Polytrope, integer_points, is_standard_form
from .trop import INF, EmptyWitness, TropMatrix, as_matrix, kleene_star, min_plus

IdealClass = TropMatrix


def normalize_class(N) -> IdealClass:
    N = as_matrix(N)
    m = min(min(row) for row in N)
    return TropMatrix._raw(tuple(tuple(x - m for x in row) for row in N))


def _require_standard(O: GraduatedOrder) -> TropMatrix:
    if not is_standard_form(O.M):
        raise NotStandardFormError("ideal class computations need M in standard form")
    return O.M


def is_ideal_class(N, O: GraduatedOrder) -> bool:
    N = as_matrix(N)
    if N.d != O.d:
        raise ValueError(f"dimension mismatch: {N.d} vs {O.d}")
    if not N.is_finite():
        return False
    return min_plus(N, O.M) == N and min_plus(O.M, N) == N


def ideal_constraint_matrix(O: GraduatedOrder) -> TropMatrix:
    """Difference constraints on the ``d^2`` entries of ``N``.

    Entry ``[(i,k), (a,b)]`` bounds ``n_ik - n_ab``; coordinates are flattened
    row-major, ``(i,k) -> i*d + k``.  Unconstrained pairs are ``INF``.
    """
    M = _require_standard(O)
    d = M.d
    n = d * d
    B = [[INF] * n for _ in range(n)]
    for a in range(n):
        B[a][a] = 0
    for i in range(d):
        for j in range(d):
            for k in range(d):
                # n_ik <= n_ij + m_jk  and  n_ik <= m_ij + n_jk
                if j != k:
                    B[i * d + k][i * d + j] = min(B[i * d + k][i * d + j], M[j][k])
                if i != j:
                    B[i * d + k][j * d + k] = min(B[i * d + k][j * d + k], M[i][j])
    return TropMatrix._raw(tuple(tuple(r) for r in B))


def ideal_polytrope(O: GraduatedOrder) -> Polytrope:
    """The ideal class polytrope as a polytrope in ``R^{d^2} / R1``.

    Its defining matrix is the (finite) closure of the constraint matrix.
    """
    B = ideal_constraint_matrix(O)
    C = kleene_star(B)
    if isinstance(C, EmptyWitness) or not C.is_finite():
        raise AssertionError("ideal class polytrope must be nonempty and bounded")
    return Polytrope(C, C)


def _unflatten(v, d: int) -> TropMatrix:
    return TropMatrix._raw(tuple(tuple(v[i * d:(i + 1) * d]) for i in range(d)))


def enumerate_classes(O: GraduatedOrder) -> list[IdealClass]:
    """All ideal classes, normalised, in lexicographic order of their rows."""
    d = O.d
    pts = integer_points(ideal_polytrope(O))
    return sorted(normalize_class(_unflatten(v, d)) for v in pts)


def ideal_product(N, N2, O: GraduatedOrder) -> IdealClass:
    return normalize_class(min_plus(N, N2))


def jacobson_radical(O: GraduatedOrder) -> IdealClass:
    M = O.M
    return normalize_class([[x + (i == j) for j, x in enumerate(row)] for i, row in enumerate(M)])


def pseudo_inverse_raw(N, O: GraduatedOrder) -> TropMatrix:
    """``n'_ij = max_l max(m_lj - n_li, m_il - n_jl)``, without normalisation."""
    N = as_matrix(N)
    M = O.M
    d = M.d
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            row.append(max(max(M[l][j] - N[l][i], M[i][l] - N[j][l]) for l in range(d)))
        out.append(tuple(row))
    return TropMatrix._raw(tuple(out))


def pseudo_inverse(N, O: GraduatedOrder) -> IdealClass:
    return normalize_class(pseudo_inverse_raw(N, O))


def is_unit(N, O: GraduatedOrder) -> bool:
    """``N . N' = N' . N = M`` with ``N'`` the pseudo-inverse."""
    Np = pseudo_inverse_raw(N, O)
    return min_plus(N, Np) == O.M and min_plus(Np, N) == O.M


@dataclass
class ClassSemigroup:
    ambient: GraduatedOrder
    elements: list[IdealClass]
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {N: k for k, N in enumerate(self.elements)}
        M = self.ambient.M
        if M not in self.index:
            raise AssertionError("M is missing from its own ideal classes")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def neutral(self) -> int:
        return self.index[self.ambient.M]

    def product(self, a: int, b: int) -> int:
        return self.index[ideal_product(self.elements[a], self.elements[b], self.ambient)]

    @cached_property
    def product_table(self) -> list[list[int]]:
        n = len(self.elements)
        return [[self.product(a, b) for b in range(n)] for a in range(n)]


def ideal_classes(O: GraduatedOrder) -> ClassSemigroup:
    _require_standard(O)
    S = ClassSemigroup(O, enumerate_classes(O))
    for k, N in enumerate(S.elements):
        if min_plus(N, O.M) != N or min_plus(O.M, N) != N:
            raise AssertionError(f"M is not neutral for class {k}")
    return S


@dataclass(frozen=True)
class ClassGroup:
    elements: tuple[IdealClass, ...]
    table: tuple[tuple[int, ...], ...]
    descriptor: GroupDescriptor


def class_group(O: GraduatedOrder, semigroup: ClassSemigroup | None = None) -> ClassGroup:
    """The maximal subgroup of the class semigroup: classes invertible via their pseudo-inverse."""
    S = semigroup or ideal_classes(O)
    units = [N for N in S.elements if is_unit(N, O)]
    index = {N: k for k, N in enumerate(units)}
    table = []
    for a in units:
        row = []
        for b in units:
            c = ideal_product(a, b, O)
            if c not in index:
                raise AssertionError("unit classes are not closed under the product")
            row.append(index[c])
        table.append(tuple(row))
    return ClassGroup(tuple(units), tuple(table), describe(table))


@dataclass(frozen=True)
class ConjectureReport:
    verdicts: tuple[tuple[IdealClass, bool], ...]
    n_vertices: int | None
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(v for _, v in self.verdicts)


def ideal_hcone(O: GraduatedOrder) -> ph.HCone:
    """Inequalities of the ideal class polytrope in the chart ``n_dd = 0``."""
    B = ideal_constraint_matrix(O)
    n = B.d
    rows, rhs = [], []
    for a in range(n):
        for b in range(n):
            if a == b or B[a][b] == INF:
                continue
            r = [0] * (n - 1)
            if a < n - 1:
                r[a] += 1
            if b < n - 1:
                r[b] -= 1
            rows.append(r)
            rhs.append(B[a][b])
    return ph.HCone.from_rows(n - 1, rows, rhs)


def classical_vertices(O: GraduatedOrder, max_rays: int | None = None) -> list[tuple[Fraction, ...]]:
    """Vertices of the ideal class polytrope, flattened, with ``n_dd = 0``."""
    if O.d == 1:
        return [(Fraction(0),)]
    V = ph.polytope_vertices(ideal_hcone(O), max_rays=max_rays)
    return [tuple(v) + (Fraction(0),) for v in V.rays_or_vertices]


def conjecture_check(O: GraduatedOrder, group: ClassGroup | None = None, max_rays: int | None = 200_000) -> ConjectureReport:
    """Are all elements of the class group classical vertices of the ideal class polytrope?"""
    group = group or class_group(O)
    d = O.d
    try:
        verts = set(classical_vertices(O, max_rays=max_rays))
    except ph.ComputationLimitError as exc:
        return ConjectureReport((), None, str(exc))
    verdicts = []
    for N in group.elements:
        flat = [x for row in N for x in row]
        last = flat[-1]
        verdicts.append((N, tuple(Fraction(x - last) for x in flat) in verts))
    return ConjectureReport(tuple(verdicts), len(verts))

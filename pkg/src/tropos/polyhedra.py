"""Exact rational polyhedral computations.

The double description method below works over the integers: inequality rows
are scaled to primitive integer vectors and every ray is kept primitive, so
no rational arithmetic happens inside the insertion loop.  Zero sets (the
processed rows a ray is tight on) are Python ints used as bitsets and
mirrored into numpy ``uint64`` words for the vectorised adjacency test.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np


class UnboundedError(ValueError):
    pass


class InfeasibleError(ValueError):
    pass


class ComputationLimitError(RuntimeError):
    """The double description exceeded its ray budget."""


# -- small exact linear algebra ---------------------------------------------

def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                break
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def integer_row(row: Sequence) -> tuple[int, ...]:
    """Scale a rational row to a primitive integer row (positive multiple)."""
    fr = [Fraction(x) for x in row]
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return _primitive([int(x * den) for x in fr])


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return [], []
    n = len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def kernel(rows: Sequence[Sequence], n: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : a.x = 0 for every row a}`` in ``Q^n``."""
    R, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, piv):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


class LinealityChart:
    """Canonical representatives modulo a linear subspace.

    A vector is reduced by the RREF basis of the subspace, which zeroes the
    pivot coordinates; the result is unique for each coset.
    """

    def __init__(self, basis: Sequence[Sequence], n: int):
        self.n = n
        self.rows, self.pivots = rref(basis)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Sequence) -> tuple[Fraction, ...]:
        v = [Fraction(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return tuple(v)

    def ray(self, v: Sequence) -> tuple[int, ...]:
        """Primitive integer representative of the ray through ``v`` mod the subspace."""
        return integer_row(self.reduce(v))


# -- data types ---------------------------------------------------------------

@dataclass(frozen=True)
class HCone:
    """Inequalities ``a.x <= b`` (``rhs`` given) or ``a.x <= 0`` (``rhs`` is None).

    Rows are stored as integers: each row (together with its right-hand side)
    is scaled to a primitive integer vector; zero rows and duplicates are dropped.
    """

    ambient_dim: int
    inequalities: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...] | None = None

    @classmethod
    def from_rows(cls, ambient_dim: int, rows: Iterable[Sequence], rhs: Iterable | None = None) -> "HCone":
        rows = [tuple(r) for r in rows]
        if any(len(r) != ambient_dim for r in rows):
            raise ValueError("row length differs from ambient dimension")
        bs = [Fraction(0)] * len(rows) if rhs is None else [Fraction(b) for b in rhs]
        if len(bs) != len(rows):
            raise ValueError("one right-hand side per row required")
        seen = set()
        out_a, out_b = [], []
        for a, b in zip(rows, bs):
            full = integer_row(list(a) + [b])
            a_int, b_int = full[:-1], full[-1]
            if not any(a_int):
                if b_int < 0:
                    raise InfeasibleError("inequality 0 <= negative")
                continue
            if full in seen:
                continue
            seen.add(full)
            out_a.append(a_int)
            out_b.append(b_int)
        return cls(ambient_dim, tuple(out_a), None if rhs is None else tuple(out_b))

    @property
    def is_cone(self) -> bool:
        return self.rhs is None

    def __len__(self) -> int:
        return len(self.inequalities)

    def slack(self, x: Sequence) -> list[Fraction]:
        bs = self.rhs or (0,) * len(self.inequalities)
        return [b - sum(Fraction(ai) * xi for ai, xi in zip(a, x) if ai) for a, b in zip(self.inequalities, bs)]

    def contains(self, x: Sequence) -> bool:
        return all(s >= 0 for s in self.slack(x))


@dataclass(frozen=True)
class VRep:
    lineality_basis: tuple[tuple, ...]
    rays_or_vertices: tuple[tuple, ...]

    def __len__(self) -> int:
        return len(self.rays_or_vertices)


@dataclass(frozen=True)
class IncidenceMatrix:
    """Vertex-facet incidences; row ``v`` is a bitset of the facets containing vertex ``v``."""

    rows: tuple[int, ...]
    n_facets: int

    def incident(self, v: int, f: int) -> bool:
        return bool(self.rows[v] >> f & 1)

    def facet_counts(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def facet_vertex_sets(self) -> list[int]:
        cols = [0] * self.n_facets
        for v, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << v
                r ^= low
        return cols

    def to_lists(self) -> list[list[bool]]:
        return [[self.incident(v, f) for f in range(self.n_facets)] for v in range(len(self.rows))]


@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.counts))

    def satisfies_euler(self) -> bool:
        dim = len(self.counts)
        return self.euler_characteristic() == 1 - (-1) ** dim

    def __iter__(self):
        return iter(self.counts)


@dataclass(frozen=True)
class Orbit:
    size: int
    incident_facets: int
    representative: tuple
    members: tuple[int, ...] = field(repr=False, compare=False, default=())


@dataclass(frozen=True)
class OrbitReport:
    orbits: tuple[Orbit, ...]

    def table(self) -> list[tuple[int, int]]:
        return [(o.size, o.incident_facets) for o in self.orbits]

    @property
    def total(self) -> int:
        return sum(o.size for o in self.orbits)


# -- double description ---------------------------------------------------------

class _ZeroSets:
    """Bitsets over processed rows, mirrored into an ``(n, words)`` uint64 array."""

    def __init__(self, n_rows: int):
        self.words = max(1, (n_rows + 63) // 64)

    def to_array(self, sets: Sequence[int]) -> np.ndarray:
        arr = np.zeros((len(sets), self.words), dtype=np.uint64)
        mask = (1 << 64) - 1
        for i, z in enumerate(sets):
            for w in range(self.words):
                arr[i, w] = (z >> (64 * w)) & mask
        return arr

    def from_words(self, words: np.ndarray) -> int:
        z = 0
        for w in range(self.words - 1, -1, -1):
            z = (z << 64) | int(words[w])
        return z


def _sparse(a: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple((i, c) for i, c in enumerate(a) if c)


def _dot(sa, r) -> int:
    return sum(c * r[i] for i, c in sa)


def double_description(rows: Sequence[Sequence[int]], n: int, max_rays: int | None = None):
    """Extreme rays of ``{x in Q^n : a.x <= 0 for all rows a}``.

    Returns ``(lineality, rays, zero_sets)``.  Lineality vectors and rays are
    primitive integer tuples; rays are extreme modulo the lineality space.
    Rows are inserted in the given order; the result as a set does not
    depend on that order.  ``max_rays`` caps the intermediate ray count.
    """
    lin: list[tuple[int, ...]] = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    rays: list[tuple[int, ...]] = []
    zs: list[int] = []
    zsets = _ZeroSets(len(rows))
    for idx, a in enumerate(rows):
        sa = _sparse(a)
        bit = 1 << idx
        lvals = [_dot(sa, l) for l in lin]
        piv = next((k for k, v in enumerate(lvals) if v != 0), None)
        if piv is not None:
            l0, c0 = lin[piv], lvals[piv]
            if c0 > 0:
                l0 = tuple(-x for x in l0)
                c0 = -c0
            new_lin = []
            for k, l in enumerate(lin):
                if k == piv:
                    continue
                # a.l0 = c0 < 0 after orientation; make a.l' = 0
                v = lvals[k]
                if v:
                    l = _primitive([c0 * x - v * y for x, y in zip(l, l0)])
                new_lin.append(l)
            new_rays = []
            for r in rays:
                v = _dot(sa, r)
                if v:
                    r = _primitive([-c0 * x + v * y for x, y in zip(r, l0)])
                new_rays.append(r)
            prev_mask = bit - 1
            zs = [z | bit for z in zs]
            new_rays.append(_primitive(l0))
            zs.append(prev_mask)
            rays = new_rays
            lin = new_lin
            continue

        vals = [_dot(sa, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        if not pos:
            zs = [z | bit if v == 0 else z for z, v in zip(zs, vals)]
            continue
        neg = [k for k, v in enumerate(vals) if v < 0]
        threshold = n - len(lin) - 2
        created: list[tuple[int, ...]] = []
        created_z: list[int] = []
        if neg:
            zarr = zsets.to_array(zs)
            narr = zarr[neg]
            for p in pos:
                zp = zarr[p]
                common = narr & zp
                pc = np.bitwise_count(common).sum(axis=1)
                cand = np.nonzero(pc >= threshold)[0]
                if len(cand) == 0:
                    continue
                sp = vals[p]
                rp = rays[p]
                for ci in cand:
                    Z = common[ci]
                    # adjacent iff only p and n contain the common zero set
                    hits = np.count_nonzero(np.all((zarr & Z) == Z, axis=1))
                    if hits != 2:
                        continue
                    nk = neg[ci]
                    sn = vals[nk]
                    rn = rays[nk]
                    created.append(_primitive([sp * x - sn * y for x, y in zip(rn, rp)]))
                    created_z.append(zsets.from_words(Z) | bit)
        keep = [k for k, v in enumerate(vals) if v <= 0]
        if max_rays is not None and len(keep) + len(created) > max_rays:
            raise ComputationLimitError(
                f"more than {max_rays} intermediate rays after {idx + 1} of {len(rows)} rows")
        rays = [rays[k] for k in keep] + created
        zs = [zs[k] | bit if vals[k] == 0 else zs[k] for k in keep] + created_z
    return lin, rays, zs


# -- public operations -------------------------------------------------------------

def lineality(H: HCone) -> list[tuple[Fraction, ...]]:
    """Basis of the lineality space ``{x : a.x = 0 for every row}``."""
    return kernel(H.inequalities, H.ambient_dim) if H.inequalities else [
        tuple(Fraction(int(i == j)) for j in range(H.ambient_dim)) for i in range(H.ambient_dim)
    ]


def extreme_rays(H: HCone, max_rays: int | None = None) -> VRep:
    """Extreme rays modulo lineality, as sorted primitive integer vectors in the RREF chart."""
    if not H.is_cone:
        raise ValueError("extreme_rays needs a homogeneous cone")
    lin, rays, _ = double_description(H.inequalities, H.ambient_dim, max_rays)
    chart = LinealityChart(lin, H.ambient_dim)
    reps = sorted({chart.ray(r) for r in rays})
    basis = tuple(tuple(x) for x in chart.rows)
    return VRep(basis, tuple(reps))


def polytope_vertices(H: HCone, max_rays: int | None = None) -> VRep:
    """Exact vertices of a bounded, nonempty ``{x : A x <= b}``."""
    if H.is_cone:
        raise ValueError("polytope_vertices needs right-hand sides")
    n = H.ambient_dim
    rows = [tuple(a) + (-b,) for a, b in zip(H.inequalities, H.rhs)]
    rows.append((0,) * n + (-1,))
    lin, rays, _ = double_description(rows, n + 1, max_rays)
    if not any(r[-1] > 0 for r in rays):
        raise InfeasibleError("polytope is empty")
    if lin or any(r[-1] == 0 for r in rays):
        raise UnboundedError("recession cone is nontrivial")
    verts = sorted({tuple(Fraction(x, r[-1]) for x in r[:-1]) for r in rays})
    return VRep((), tuple(verts))


def incidence(H: HCone, V: VRep) -> IncidenceMatrix:
    """Bit matrix: vertex/ray ``v`` lies on facet ``f`` with equality."""
    bs = H.rhs if H.rhs is not None else (0,) * len(H)
    out = []
    for v in V.rays_or_vertices:
        bits = 0
        for f, (a, b) in enumerate(zip(H.inequalities, bs)):
            if sum(Fraction(ai) * xi for ai, xi in zip(a, v) if ai) == b:
                bits |= 1 << f
        out.append(bits)
    return IncidenceMatrix(tuple(out), len(H))


def _maximal(sets: Iterable[int]) -> list[int]:
    uniq = sorted(set(sets), key=lambda s: -s.bit_count())
    out: list[int] = []
    for s in uniq:
        if not any(s & t == s for t in out):
            out.append(s)
    return out


def face_lattice_levels(inc: IncidenceMatrix) -> list[set[int]]:
    """Faces as vertex bitsets, grouped by dimension (vertices first, facets last).

    Each face's facets are the maximal proper intersections with facets of the
    whole polytope; this walks the lattice from the top down.
    """
    n_vertices = len(inc.rows)
    full = (1 << n_vertices) - 1
    facets = _maximal(s for s in inc.facet_vertex_sets() if s and s != full)
    levels = [set(facets)]
    while True:
        nxt: set[int] = set()
        for F in levels[-1]:
            if F.bit_count() == 1:
                continue
            cands = (F & G for G in facets)
            nxt.update(_maximal(c for c in cands if c and c != F))
        if not nxt:
            break
        levels.append(nxt)
    levels.reverse()
    return levels


def f_vector(inc: IncidenceMatrix) -> FVector:
    levels = face_lattice_levels(inc)
    counts = tuple(len(level) for level in levels)
    if counts and counts[0] != len(inc.rows):
        raise AssertionError("face lattice does not bottom out at the vertices")
    return FVector(counts)


# -- symmetric group action on off-diagonal matrix coordinates --------------------

def offdiag_pairs(d: int) -> list[tuple[int, int]]:
    """Row-major order of the off-diagonal positions: (0,1), (0,2), ..., (1,0), ..."""
    return [(i, j) for i in range(d) for j in range(d) if i != j]


def sd_coordinate_permutations(d: int, group: Iterable[Sequence[int]] | None = None) -> list[list[int]]:
    """For each sigma in S_d (or in ``group``), the map on vectorised coordinates
    ``(i,j) -> (sigma i, sigma j)``.

    Entry ``k`` of each list is the source coordinate for target coordinate ``k``.
    """
    pairs = offdiag_pairs(d)
    index = {p: k for k, p in enumerate(pairs)}
    out = []
    for sigma in (itertools.permutations(range(d)) if group is None else group):
        inv = [0] * d
        for i, s in enumerate(sigma):
            inv[s] = i
        out.append([index[(inv[i], inv[j])] for i, j in pairs])
    return out


def sd_orbits(
    points: Sequence[tuple],
    d: int,
    incident_counts: Sequence[int],
    canon: Callable[[tuple], tuple] | None = None,
    group: Sequence[Sequence[int]] | None = None,
) -> OrbitReport:
    """Classify points (vectorised off-diagonal matrices) into S_d-orbits.

    ``canon`` maps a permuted vector back to the stored normal form (e.g. a
    chart modulo lineality); by default points are compared as given.
    ``group`` restricts the action to a subgroup, given as permutations of ``range(d)``.
    """
    canon = canon or (lambda v: tuple(v))
    perms = sd_coordinate_permutations(d, group)
    group_order = len(perms)
    index = {tuple(p): k for k, p in enumerate(points)}
    seen = [False] * len(points)
    orbits = []
    for k, p in enumerate(points):
        if seen[k]:
            continue
        members = set()
        for perm in perms:
            q = canon(tuple(p[s] for s in perm))
            m = index.get(q)
            if m is None:
                raise AssertionError("point set is not closed under the S_d action")
            members.add(m)
        counts = {incident_counts[m] for m in members}
        if len(counts) != 1:
            raise AssertionError(f"orbit with inconsistent incidence counts {sorted(counts)}")
        for m in members:
            seen[m] = True
        rep = min(points[m] for m in members)
        if group_order % len(members):
            raise AssertionError("orbit size does not divide the group order")
        orbits.append(Orbit(len(members), counts.pop(), tuple(rep), tuple(sorted(members))))
    orbits.sort(key=lambda o: (o.size, o.incident_facets, o.representative))
    return OrbitReport(tuple(orbits))

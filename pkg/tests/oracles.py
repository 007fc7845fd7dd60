"""Slow, independent reference implementations used as test oracles."""
from __future__ import annotations

import itertools
from fractions import Fraction

from tropos.polyhedra import rank

J = {d: [[0 if i == j else 1 for j in range(d)] for i in range(d)] for d in range(1, 6)}


def simple_path_closure(N):
    """Min weight over all simple paths (and the empty path on the diagonal)."""
    d = len(N)
    C = [[None] * d for _ in range(d)]
    for i in range(d):
        for k in range(d):
            best = 0 if i == k else None
            others = [x for x in range(d) if x not in (i, k)]
            for r in range(len(others) + 1):
                for mid in itertools.permutations(others, r):
                    path = (i,) + mid + (k,)
                    if i == k and r == 0:
                        w = N[i][i]
                    else:
                        w = sum(N[a][b] for a, b in zip(path, path[1:]))
                    best = w if best is None else min(best, w)
            C[i][k] = best
    return C


def has_negative_cycle(N) -> bool:
    d = len(N)
    for r in range(1, d + 1):
        for cyc in itertools.permutations(range(d), r):
            if sum(N[a][b] for a, b in zip(cyc, cyc[1:] + cyc[:1])) < 0:
                return True
    return False


def box_integer_points(M, radius):
    d = len(M)
    out = []
    for u in itertools.product(range(-radius, radius + 1), repeat=d - 1):
        u = u + (0,)
        if all(u[i] - u[j] <= M[i][j] for i in range(d) for j in range(d)):
            out.append(u)
    return out


def least_pseudo_inverse(N, M):
    """Entrywise-least integer X with N.X >= M and X.N >= M (min-plus)."""
    d = len(M)
    # (N.X)_ik >= m_ik  <=>  x_jk >= m_ik - n_ij for all i, j; similarly for X.N
    return [[max(max(M[i][k] - N[i][j] for i in range(d)),
                 max(M[j][l] - N[k][l] for l in range(d)))
             for k in range(d)] for j in range(d)]


def ref_double_description(A, n):
    """Naive double description over Fractions with algebraic-rank adjacency.

    Returns ``(lineality, rays)`` for the cone ``{x : a.x <= 0}``.
    """
    lin = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    rays = []
    done = []
    for a in A:
        a = [Fraction(x) for x in a]

        def dot(v):
            return sum(x * y for x, y in zip(a, v))

        lv = [dot(l) for l in lin]
        piv = next((k for k, v in enumerate(lv) if v != 0), None)
        if piv is not None:
            l0, c0 = lin[piv], lv[piv]
            if c0 > 0:
                l0, c0 = tuple(-x for x in l0), -c0
            lin = [tuple(x - (dot(l) / c0) * y for x, y in zip(l, l0)) for k, l in enumerate(lin) if k != piv]
            rays = [tuple(x - (dot(r) / c0) * y for x, y in zip(r, l0)) for r in rays] + [l0]
            done.append(a)
            continue
        vals = [dot(r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        neg = [r for r, v in zip(rays, vals) if v < 0]
        new = [r for r, v in zip(rays, vals) if v <= 0]
        target = n - len(lin) - 2
        for p in pos:
            for q in neg:
                Z = [b for b in done if sum(x * y for x, y in zip(b, p)) == 0 and sum(x * y for x, y in zip(b, q)) == 0]
                if len(Z) < target or rank(Z) != target:
                    continue
                sp, sq = dot(p), dot(q)
                new.append(tuple(sp * y - sq * x for x, y in zip(p, q)))
        rays = new
        done.append(a)
    return lin, rays


def ref_polytope_vertices(H):
    n = H.ambient_dim
    rows = [tuple(a) + (-b,) for a, b in zip(H.inequalities, H.rhs)] + [(0,) * n + (-1,)]
    _, rays = ref_double_description(rows, n + 1)
    return sorted({tuple(x / r[-1] for x in r[:-1]) for r in rays if r[-1] > 0})

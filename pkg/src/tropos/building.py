"""Chambers of the standard apartment and the affine Weyl group acting on them.

An element ``w = h_sigma g_u`` sends the basis vector ``e_j`` to
``p^{u_j} e_{sigma(j)}``.  Permutations are 0-based tuples with
``sigma[j] = sigma(j)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .orders import GraduatedOrder, pz_order
from .polytrope import LatticeClass, normalize
from .trop import INF, MAX_PLUS, DimensionError, TropMatrix, as_matrix, min_plus, trop_add


@dataclass(frozen=True)
class WeylElement:
    sigma: tuple[int, ...]
    u: tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(int(x) for x in self.sigma)
        u = tuple(int(x) for x in self.u)
        if sorted(sigma) != list(range(len(sigma))):
            raise ValueError(f"{sigma} is not a permutation of 0..{len(sigma) - 1}")
        if len(u) != len(sigma):
            raise DimensionError("sigma and u differ in length")
        if sum(u) != 0:
            raise ValueError("translation part must sum to 0")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "u", u)

    @property
    def d(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, d: int) -> "WeylElement":
        return cls(tuple(range(d)), (0,) * d)

    def inverse(self) -> "WeylElement":
        # (h g_u)^{-1} = g_{-u} h^{-1} = h^{-1} g_{-u o sigma^{-1}}
        inv = [0] * self.d
        for j, s in enumerate(self.sigma):
            inv[s] = j
        return WeylElement(tuple(inv), tuple(-self.u[inv[i]] for i in range(self.d)))

    def act(self, v: Sequence[int]) -> LatticeClass:
        """Image of the class ``[L_v]``, normalised."""
        if len(v) != self.d:
            raise DimensionError(f"class of length {len(v)} for d={self.d}")
        out = [0] * self.d
        for j, s in enumerate(self.sigma):
            out[s] = self.u[j] + v[j]
        return normalize(tuple(out))


def weyl_compose(w1: WeylElement, w2: WeylElement) -> WeylElement:
    """The element ``w1 w2`` (apply ``w2`` first)."""
    if w1.d != w2.d:
        raise DimensionError(f"cannot compose elements for d={w1.d} and d={w2.d}")
    sigma = tuple(w1.sigma[s] for s in w2.sigma)
    u = tuple(w1.u[w2.sigma[j]] + w2.u[j] for j in range(w1.d))
    return WeylElement(sigma, u)


@dataclass(frozen=True)
class Chamber:
    classes: tuple[LatticeClass, ...]

    def __post_init__(self):
        classes = tuple(normalize(tuple(c)) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        if not is_chamber(classes):
            raise ValueError("classes do not form a chamber")


def _chain_from(start: Sequence[int], classes) -> bool:
    d = len(start)
    supports = []
    for c in classes:
        k = max(s - x for s, x in zip(start, c))
        diff = tuple(x + k - s for s, x in zip(start, c))
        if any(t not in (0, 1) for t in diff):
            return False
        supports.append(frozenset(i for i, t in enumerate(diff) if t))
    sizes = sorted(len(s) for s in supports)
    if sizes != list(range(d)):
        return False
    supports.sort(key=len)
    return all(a < b for a, b in zip(supports, supports[1:]))


def is_chamber(classes: Sequence[Sequence[int]]) -> bool:
    """``d`` classes with representatives ``L_1 > L_2 > ... > L_d > pL_1``."""
    classes = [normalize(tuple(c)) for c in classes]
    if not classes:
        return False
    d = len(classes[0])
    if len(classes) != d or len(set(classes)) != d or any(len(c) != d for c in classes):
        return False
    return any(_chain_from(s, classes) for s in classes)


def standard_chamber(d: int) -> tuple[Chamber, TropMatrix]:
    if d < 2:
        raise ValueError("d must be at least 2")
    classes = tuple(normalize((1,) * i + (0,) * (d - i)) for i in range(d))
    M0 = TropMatrix(tuple(tuple(int(j > i) for j in range(d)) for i in range(d)))
    if pz_order(classes).M != M0:
        raise AssertionError("standard chamber does not generate M_0")
    return Chamber(classes), M0


def trop_weyl(w: WeylElement) -> tuple[TropMatrix, TropMatrix]:
    d = w.d
    P = TropMatrix(tuple(tuple(0 if i == w.sigma[j] else INF for j in range(d)) for i in range(d)))
    D = TropMatrix(tuple(tuple(w.u[i] if i == j else INF for j in range(d)) for i in range(d)))
    return P, D


def translate_chamber(w: WeylElement, C: Chamber) -> Chamber:
    return Chamber(tuple(w.act(c) for c in C.classes))


def two_chamber_order(w: WeylElement) -> GraduatedOrder:
    """The order ``PZ(C_0 u w C_0)`` as ``M_0`` max-plus the conjugate of ``M_0`` by ``w``."""
    _, M0 = standard_chamber(w.d)
    P, D = trop_weyl(w)
    Pinv, Dneg = trop_weyl(WeylElement(w.inverse().sigma, tuple(-x for x in w.u)))
    conj = min_plus(min_plus(min_plus(min_plus(P, D), M0), Dneg), Pinv)
    M = trop_add(MAX_PLUS, M0, conj)
    if not M.is_finite():
        raise AssertionError("two-chamber matrix has infinite entries")
    return GraduatedOrder(M)


def two_chamber_oracle(w: WeylElement) -> GraduatedOrder:
    """``pz_order`` over the classes of both chambers."""
    C0, _ = standard_chamber(w.d)
    return pz_order(list(C0.classes) + list(translate_chamber(w, C0).classes))


def weyl_generators(d: int) -> list[WeylElement]:
    """Coxeter generators ``[s_0, s_1, ..., s_{d-1}]``."""
    if d < 2:
        raise ValueError("d must be at least 2")
    sigma0 = list(range(d))
    sigma0[0], sigma0[-1] = d - 1, 0
    u0 = [0] * d
    u0[0], u0[-1] = -1, 1
    gens = [WeylElement(tuple(sigma0), tuple(u0))]
    for i in range(d - 1):
        s = list(range(d))
        s[i], s[i + 1] = i + 1, i
        gens.append(WeylElement(tuple(s), (0,) * d))
    return gens


def conjugate_equal(M1, M2) -> tuple[int, ...] | None:
    """A permutation ``sigma`` with ``M2[sigma i][sigma j] = M1[i][j]``, if one exists.

    A heuristic notion of isomorphism for graduated orders.
    """
    M1, M2 = as_matrix(M1), as_matrix(M2)
    if M1.d != M2.d:
        return None
    d = M1.d
    for s in itertools.permutations(range(d)):
        if all(M2[s[i]][s[j]] == M1[i][j] for i in range(d) for j in range(d)):
            return s
    return None

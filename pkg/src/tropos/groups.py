"""Finite groups given by multiplication tables, and naming by signature.

A signature is ``(order, abelian, element-order multiset)``.  It identifies
abelian groups up to isomorphism; for the small nonabelian groups in the
catalog it happens to separate them too.  Unmatched signatures get no name.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class GroupDescriptor:
    order: int
    abelian: bool
    element_orders: tuple[tuple[int, int], ...]  # sorted (element order, count) pairs
    name: str | None = None

    @property
    def order_counts(self) -> dict[int, int]:
        return dict(self.element_orders)

    @property
    def signature(self):
        return (self.order, self.abelian, self.element_orders)


def _identity(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    raise ValueError("table has no identity element")


def check_group(table: Sequence[Sequence[int]]) -> int:
    """Validate the group axioms and return the index of the identity."""
    n = len(table)
    e = _identity(table)
    for row in table:
        if sorted(row) != list(range(n)):
            raise ValueError("table is not a Latin square")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise ValueError(f"not associative at {(a, b, c)}")
    return e


def element_order(table, e: int, x: int) -> int:
    k, y = 1, x
    while y != e:
        y = table[y][x]
        k += 1
    return k


def signature(table: Sequence[Sequence[int]]) -> tuple[int, bool, tuple[tuple[int, int], ...]]:
    n = len(table)
    e = _identity(table)
    abelian = all(table[a][b] == table[b][a] for a in range(n) for b in range(a + 1, n))
    counts = Counter(element_order(table, e, x) for x in range(n))
    return n, abelian, tuple(sorted(counts.items()))


def _perm_group_signature(gens: list[tuple[int, ...]]):
    elems = {tuple(range(len(gens[0])))}
    frontier = list(elems)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = tuple(g[i] for i in h)
                if gh not in elems:
                    elems.add(gh)
                    nxt.append(gh)
        frontier = nxt
    elems = sorted(elems)
    index = {g: k for k, g in enumerate(elems)}
    table = [[index[tuple(g[i] for i in h)] for h in elems] for g in elems]
    return signature(table)


def _cyclic(n: int):
    counts = Counter(n // math.gcd(k, n) for k in range(n))
    return n, True, tuple(sorted(counts.items()))


def _dihedral(n: int):
    # symmetries of the n-gon, order 2n
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return _perm_group_signature([rot, ref])


def _build_catalog(max_order: int = 24) -> dict:
    entries: list[tuple[str, tuple]] = []
    for n in range(1, max_order + 1):
        entries.append((f"Z{n}", _cyclic(n)))
    entries.append(("Z2xZ2", (4, True, ((1, 1), (2, 3)))))
    entries.append(("S3", _dihedral(3)))
    for n in range(4, max_order // 2 + 1):
        entries.append((f"D{2 * n}", _dihedral(n)))
    entries.append(("Q8", (8, False, ((1, 1), (2, 1), (4, 6)))))
    entries.append(("A4", _perm_group_signature([(1, 2, 0, 3), (0, 2, 3, 1)])))
    entries.append(("S4", _perm_group_signature([(1, 0, 2, 3), (1, 2, 3, 0)])))
    # S3 x Z2 is D12; listed under that name
    catalog: dict = {}
    for name, sig in entries:
        if sig in catalog and catalog[sig] != name:
            catalog[sig] = None
        else:
            catalog[sig] = name
    return catalog


CATALOG = _build_catalog()


def describe(table: Sequence[Sequence[int]]) -> GroupDescriptor:
    check_group(table)
    order, abelian, counts = signature(table)
    return GroupDescriptor(order, abelian, counts, CATALOG.get((order, abelian, counts)))

"""Min-plus and max-plus matrix arithmetic over the extended integers.

Finite values are Python ``int``; the two infinities are the float constants
:data:`INF` and :data:`NEG_INF`.  Sums of opposite infinities are an error,
never silently absorbed.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

INF = math.inf
NEG_INF = -math.inf

TropValue = Union[int, float]


class IndeterminateError(ArithmeticError):
    """Raised when a tropical product would form (+inf) + (-inf)."""


class DimensionError(ValueError):
    pass


class Semiring(enum.Enum):
    MIN_PLUS = "min"
    MAX_PLUS = "max"

    @property
    def plus(self):
        return min if self is Semiring.MIN_PLUS else max

    @property
    def zero(self) -> float:
        """Additive neutral element (+inf for min-plus, -inf for max-plus)."""
        return INF if self is Semiring.MIN_PLUS else NEG_INF


MIN_PLUS = Semiring.MIN_PLUS
MAX_PLUS = Semiring.MAX_PLUS


def trop_value(x) -> TropValue:
    """Coerce ``x`` to a well-formed extended integer."""
    if isinstance(x, bool):
        raise TypeError("booleans are not tropical values")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return x
        if x.is_integer():
            return int(x)
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            return INF
        if s in ("-inf", "-infinity"):
            return NEG_INF
        return int(s)
    raise TypeError(f"not an extended integer: {x!r}")


def is_finite(x: TropValue) -> bool:
    return isinstance(x, int)


def tadd(a: TropValue, b: TropValue) -> TropValue:
    """Classical sum of two extended integers (tropical multiplication)."""
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    if (a == INF and b == NEG_INF) or (a == NEG_INF and b == INF):
        raise IndeterminateError("(+inf) + (-inf) is undefined")
    return a + b


class TropMatrix(tuple):
    """Immutable square matrix of extended integers, stored as a tuple of rows."""

    def __new__(cls, rows: Iterable[Iterable]):
        if isinstance(rows, TropMatrix):
            return rows
        data = tuple(tuple(trop_value(x) for x in row) for row in rows)
        d = len(data)
        if d == 0:
            raise DimensionError("matrix must have positive dimension")
        if any(len(row) != d for row in data):
            raise DimensionError("matrix must be square")
        return super().__new__(cls, data)

    @classmethod
    def _raw(cls, rows) -> "TropMatrix":
        # trusted constructor for internal results
        return tuple.__new__(cls, rows)

    @property
    def d(self) -> int:
        return len(self)

    def is_finite(self) -> bool:
        return all(isinstance(x, int) for row in self for x in row)

    def transpose(self) -> "TropMatrix":
        return TropMatrix._raw(tuple(zip(*self)))

    def __neg__(self) -> "TropMatrix":
        return TropMatrix._raw(tuple(tuple(-x for x in row) for row in self))

    def __le__(self, other) -> bool:
        return all(a <= b for r, s in zip(self, other) for a, b in zip(r, s))

    def __ge__(self, other) -> bool:
        return all(a >= b for r, s in zip(self, other) for a, b in zip(r, s))

    def tolist(self) -> list[list[TropValue]]:
        return [list(row) for row in self]

    def __repr__(self) -> str:
        return f"TropMatrix({self.tolist()})"


def as_matrix(A) -> TropMatrix:
    return A if isinstance(A, TropMatrix) else TropMatrix(A)


def identity(d: int, sr: Semiring = MIN_PLUS) -> TropMatrix:
    """Tropical identity: 0 on the diagonal, the additive zero elsewhere."""
    z = sr.zero
    return TropMatrix._raw(tuple(tuple(0 if i == j else z for j in range(d)) for i in range(d)))


def zeros(d: int) -> TropMatrix:
    return TropMatrix._raw(tuple((0,) * d for _ in range(d)))


def trop_add(sr: Semiring, A, B) -> TropMatrix:
    A, B = as_matrix(A), as_matrix(B)
    if A.d != B.d:
        raise DimensionError(f"dimension mismatch: {A.d} vs {B.d}")
    plus = sr.plus
    return TropMatrix._raw(tuple(tuple(plus(a, b) for a, b in zip(r, s)) for r, s in zip(A, B)))


def trop_sum(sr: Semiring, matrices: Iterable) -> TropMatrix:
    it = iter(matrices)
    try:
        acc = as_matrix(next(it))
    except StopIteration:
        raise ValueError("empty tropical sum") from None
    for B in it:
        acc = trop_add(sr, acc, B)
    return acc


def trop_mul(sr: Semiring, A, B) -> TropMatrix:
    A, B = as_matrix(A), as_matrix(B)
    if A.d != B.d:
        raise DimensionError(f"dimension mismatch: {A.d} vs {B.d}")
    cols = tuple(zip(*B))
    if A.is_finite() and B.is_finite():
        plus = sr.plus
        return TropMatrix._raw(
            tuple(tuple(plus(a + b for a, b in zip(row, col)) for col in cols) for row in A)
        )
    plus = sr.plus
    return TropMatrix._raw(
        tuple(tuple(plus(tadd(a, b) for a, b in zip(row, col)) for col in cols) for row in A)
    )


def min_plus(A, B) -> TropMatrix:
    return trop_mul(MIN_PLUS, A, B)


def max_plus(A, B) -> TropMatrix:
    return trop_mul(MAX_PLUS, A, B)


def rank_one(u: Sequence[int]) -> TropMatrix:
    """The matrix with entries ``u[i] - u[j]``."""
    u = [trop_value(x) for x in u]
    if not all(isinstance(x, int) for x in u):
        raise ValueError("rank_one needs a finite integer vector")
    return TropMatrix._raw(tuple(tuple(ui - uj for uj in u) for ui in u))


def triangle_violation(M) -> tuple[int, int, int] | None:
    """First triple ``(i, j, k)`` with ``m_ik > m_ij + m_jk``, in lexicographic order."""
    d = len(M)
    for i in range(d):
        Mi = M[i]
        for j in range(d):
            mij = Mi[j]
            Mj = M[j]
            for k in range(d):
                if Mi[k] > tadd(mij, Mj[k]):
                    return (i, j, k)
    return None


def is_kleene_star(M) -> bool:
    M = as_matrix(M)
    if any(M[i][i] != 0 for i in range(M.d)):
        return False
    return triangle_violation(M) is None


@dataclass(frozen=True)
class EmptyWitness:
    """Negative cycle certifying that ``{u : u_i - u_j <= n_ij}`` is empty.

    ``cycle`` lists vertices with the start repeated at the end.
    """

    cycle: tuple[int, ...]
    weight: int


def _negative_cycle(N: TropMatrix) -> EmptyWitness:
    # Bellman-Ford from a virtual source; the constraint u_i - u_j <= n_ij is
    # an edge i -> j of weight n_ij, so cycles of N are read along rows.
    d = N.d
    dist = [0] * d
    pred = [None] * d
    last = None
    for _ in range(d + 1):
        last = None
        for i in range(d):
            for j in range(d):
                w = N[i][j]
                if w == INF:
                    continue
                if dist[i] + w < dist[j]:
                    dist[j] = dist[i] + w
                    pred[j] = i
                    last = j
        if last is None:
            break
    if last is None:
        raise AssertionError("no negative cycle present")
    v = last
    for _ in range(d):
        v = pred[v]
    cycle = [v]
    w = pred[v]
    while w != v:
        cycle.append(w)
        w = pred[w]
    cycle.append(v)
    cycle.reverse()
    weight = sum(N[a][b] for a, b in zip(cycle, cycle[1:]))
    # rotate so the smallest vertex comes first
    body = cycle[:-1]
    k = body.index(min(body))
    body = body[k:] + body[:k]
    return EmptyWitness(tuple(body + [body[0]]), weight)


def kleene_star(N) -> TropMatrix | EmptyWitness:
    """Shortest-path closure of ``N`` under min-plus, or a negative-cycle witness.

    Entries may be ``INF`` (no constraint) but not ``NEG_INF``.  The closure is
    computed by repeated squaring of ``N (+) I``; a negative cycle shows up as
    a negative diagonal entry.
    """
    N = as_matrix(N)
    if any(x == NEG_INF for row in N for x in row):
        raise ValueError("kleene_star does not accept -inf entries")
    d = N.d
    C = trop_add(MIN_PLUS, N, identity(d))
    length = 1
    while length < d:
        C = min_plus(C, C)
        length *= 2
    # one more squaring exposes any negative cycle on the diagonal
    C2 = min_plus(C, C)
    if C2 != C or any(C[i][i] < 0 for i in range(d)):
        return _negative_cycle(N)
    return C

"""p-adic valuations of rationals and lattice membership ``val(X) >= N``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .trop import INF, DimensionError, TropMatrix, TropValue, as_matrix


@dataclass(frozen=True)
class PAdic:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise ValueError(f"p must be a prime integer, got {self.p!r}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _int_val(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_val(q, ctx: PAdic | int) -> TropValue:
    """Exponent of ``p`` in the rational ``q``; ``val(0) = INF``."""
    p = ctx.p if isinstance(ctx, PAdic) else PAdic(ctx).p
    q = Fraction(q)
    if q == 0:
        return INF
    return _int_val(q.numerator, p) - _int_val(q.denominator, p)


def as_rational_matrix(X) -> tuple[tuple[Fraction, ...], ...]:
    rows = tuple(tuple(Fraction(x) for x in row) for row in X)
    d = len(rows)
    if d == 0 or any(len(r) != d for r in rows):
        raise DimensionError("rational matrix must be square and nonempty")
    return rows


def val_matrix(X, ctx: PAdic | int) -> TropMatrix:
    X = as_rational_matrix(X)
    return TropMatrix._raw(tuple(tuple(padic_val(x, ctx) for x in row) for row in X))


def in_lattice(X, N, ctx: PAdic | int) -> bool:
    """True iff ``val(X) >= N`` entrywise, i.e. ``X`` lies in ``I_N``."""
    V = val_matrix(X, ctx)
    N = as_matrix(N)
    if V.d != N.d:
        raise DimensionError(f"dimension mismatch: {V.d} vs {N.d}")
    return V >= N


def mat_mul(X: Sequence[Sequence[Fraction]], Y: Sequence[Sequence[Fraction]]):
    """Ordinary product of rational matrices."""
    cols = list(zip(*Y))
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in X)


def generator_combination(N, coeffs, p: int):
    """``sum c_ij p^{n_ij} E_ij`` for rational ``coeffs``; entries with ``n_ij = INF`` are 0."""
    N = as_matrix(N)
    out = []
    for i, row in enumerate(N):
        out.append(tuple(
            Fraction(0) if n == INF else Fraction(coeffs[i][j]) * Fraction(p) ** n
            for j, n in enumerate(row)
        ))
    return tuple(out)

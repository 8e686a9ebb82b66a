"""Dense GF(2) linear algebra on rows packed into Python ints."""

from __future__ import annotations

from collections.abc import Sequence

from .errors import InconsistencyError

__all__ = ["pack", "unpack", "rank", "solve_unique", "solve_any"]


def pack(bits: Sequence[int]) -> int:
    out = 0
    for k, b in enumerate(bits):
        if b & 1:
            out |= 1 << k
    return out


def unpack(mask: int, n: int) -> tuple[int, ...]:
    return tuple((mask >> k) & 1 for k in range(n))


def _eliminate(rows: list[int], rhs: list[int], n: int) -> tuple[list[int], list[int], list[int]]:
    """Gauss-Jordan elimination; returns reduced rows, rhs and pivot columns."""
    rows, rhs = list(rows), list(rhs)
    pivots: list[int] = []
    r = 0
    for col in range(n):
        bit = 1 << col
        sel = next((k for k in range(r, len(rows)) if rows[k] & bit), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        rhs[r], rhs[sel] = rhs[sel], rhs[r]
        for k in range(len(rows)):
            if k != r and rows[k] & bit:
                rows[k] ^= rows[r]
                rhs[k] ^= rhs[r]
        pivots.append(col)
        r += 1
    return rows, rhs, pivots


def rank(rows: Sequence[int], n: int) -> int:
    return len(_eliminate(list(rows), [0] * len(rows), n)[2])


def _back_substitute(rows, rhs, pivots, n) -> tuple[int, ...]:
    for k in range(len(pivots), len(rows)):
        if rhs[k]:
            raise InconsistencyError("inconsistent GF(2) system")
    sol = [0] * n
    for k, col in enumerate(pivots):
        sol[col] = rhs[k]
    return tuple(sol)


def solve_unique(rows: Sequence[int], rhs: Sequence[int], n: int) -> tuple[int, ...]:
    """Solve A u = b over GF(2); raise unless the solution exists and is unique."""
    red, b, pivots = _eliminate(list(rows), [v & 1 for v in rhs], n)
    sol = _back_substitute(red, b, pivots, n)
    if len(pivots) < n:
        raise InconsistencyError(f"underdetermined GF(2) system: rank {len(pivots)} < {n}")
    return sol


def solve_any(rows: Sequence[int], rhs: Sequence[int], n: int) -> tuple[int, ...]:
    """Some solution (free variables set to 0); raise if inconsistent."""
    red, b, pivots = _eliminate(list(rows), [v & 1 for v in rhs], n)
    return _back_substitute(red, b, pivots, n)

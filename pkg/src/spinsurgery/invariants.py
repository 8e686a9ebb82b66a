"""Exact signature, C.C, the restricted Arf reduction and the Rochlin invariant."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import InconsistencyError, InvalidInputError
from .homology import arf_form
from .mapping import BoundingPairChain, Separating
from .surgery import BASIS_A, BASIS_B, BLOWUP, DOTTED, TWIST, CharacteristicSublink, FramedLink


def signature_exact(m) -> int:
    """Signature by rational congruence diagonalization.

    A nonzero diagonal entry is used as a 1x1 pivot; when the remaining diagonal
    vanishes, a nonzero off-diagonal entry b gives the hyperbolic pivot
    [[0, b], [b, 0]], which contributes 0.
    """
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError("signature needs a square matrix")
    if not np.array_equal(a, a.T):
        raise InvalidInputError("signature needs a symmetric matrix")
    rows = [[Fraction(int(v)) for v in r] for r in a.tolist()]
    sig = 0
    while rows:
        n = len(rows)
        k = next((i for i in range(n) if rows[i][i] != 0), None)
        if k is not None:
            p = rows[k][k]
            sig += 1 if p > 0 else -1
            keep = [i for i in range(n) if i != k]
            rows = [[rows[i][j] - rows[i][k] * rows[k][j] / p for j in keep] for i in keep]
            continue
        hit = next(((i, j) for i in range(n) for j in range(i + 1, n) if rows[i][j] != 0), None)
        if hit is None:
            break
        i, j = hit
        b = rows[i][j]
        # inverse of [[0,b],[b,0]] is [[0,1/b],[1/b,0]]
        keep = [t for t in range(n) if t not in (i, j)]
        rows = [
            [rows[s][t] - (rows[s][i] * rows[j][t] + rows[s][j] * rows[i][t]) / b for t in keep]
            for s in keep
        ]
    return sig


def total_linking(l: FramedLink, c: CharacteristicSublink) -> int:
    """C.C: the sum of all linking-matrix entries over the sublink."""
    if len(c.membership) != len(l):
        raise InvalidInputError("membership length does not match the link")
    v = np.asarray(c.membership, dtype=np.int64)
    return int(v @ l.linking @ v)


def arf_terms(l: FramedLink, c: CharacteristicSublink) -> list[tuple[str, int]]:
    """Per-piece Arf contributions from the reduction rules, in component order."""
    if len(c.membership) != len(l):
        raise InvalidInputError("membership length does not match the link")
    mem = c.membership
    q = c.source_spin
    groups: dict[int, list[int]] = {}
    terms: list[tuple[str, int]] = []
    for comp in l.components:
        if not mem[comp.id]:
            continue
        if comp.kind == DOTTED:
            raise InconsistencyError("dotted circle in the characteristic sublink")
        if comp.kind in (BASIS_A, BASIS_B):
            terms.append((f"basis:{comp.id}", 0))
        elif comp.kind == BLOWUP:
            terms.append((f"blowup:{comp.id}", 0))
        elif comp.kind == TWIST:
            groups.setdefault(comp.group, []).append(comp.id)
        else:
            raise InconsistencyError(f"component {comp.id} of kind {comp.kind!r} is not reducible")
    for group, ids in groups.items():
        comp = l.components[ids[0]]
        size = sum(1 for x in l.components if x.kind == TWIST and x.group == group)
        if comp.role == "sep":
            curve = l.letters[comp.letter].curve
            assert isinstance(curve, Separating)
            terms.append((f"sep:{group}", arf_form(q, curve.lattice())))
        elif len(ids) != size:
            raise InconsistencyError(f"pair {group} is split by the sublink")
        elif comp.role == "square":
            terms.append((f"square:{group}", 0))
        elif comp.role == "bp":
            curve = l.letters[comp.letter].curve
            assert isinstance(curve, BoundingPairChain)
            terms.append((f"bp:{group}", q.q(curve.c1) * q.q(curve.c2)))
        else:
            raise InconsistencyError(f"unknown twist role {comp.role!r}")
    return terms


def arf_sublink(l: FramedLink, c: CharacteristicSublink) -> int:
    """Arf invariant of the sublink; a value tracked through Kirby moves wins."""
    if c.arf is not None:
        return c.arf % 2
    return sum(v for _, v in arf_terms(l, c)) % 2


def rochlin(l: FramedLink, c: CharacteristicSublink) -> int:
    """mu(L, C) = signature - C.C + 8 Arf(C) mod 16."""
    return (signature_exact(l.linking) - total_linking(l, c) + 8 * arf_sublink(l, c)) % 16

"""Kirby moves on (link, characteristic sublink) pairs.

The Arf term is tracked explicitly.  Reversing a component K of the sublink
changes Arf by lk(K, C - K)/2; a slide written as e_i -> e_i - e_j keeps the
sublink's class, and when j drops out of C the Arf term moves by
((M c)_j - M_jj)/2.  The additive slide e_i -> e_i + e_j is reverse(j),
subtractive slide, reverse(j).
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .errors import InvalidInputError
from .invariants import arf_sublink
from .surgery import BLOWUP, DOTTED, CharacteristicSublink, Component, FramedLink


def _with_matrix(l: FramedLink, m: np.ndarray, components=None) -> FramedLink:
    comps = list(l.components if components is None else components)
    comps = [replace(c, framing=int(m[k, k])) for k, c in enumerate(comps)]
    return FramedLink(l.genus, tuple(comps), m, l.letters, l.conventions)


def _tracked(l: FramedLink, c: CharacteristicSublink) -> CharacteristicSublink:
    if c.arf is None:
        return replace(c, arf=arf_sublink(l, c))
    return c


def _half_link(m: np.ndarray, mem, j: int) -> int:
    """((M c)_j - M_jj) / 2, the halved linking of j with the rest of C."""
    v = np.asarray(mem, dtype=np.int64)
    val = int(m[j] @ v) - int(m[j, j])
    assert val % 2 == 0
    return val // 2


def _check_index(l: FramedLink, *idx: int) -> None:
    for k in idx:
        if not 0 <= k < len(l):
            raise InvalidInputError(f"component index {k} out of range")


def kirby_blowup(l: FramedLink, c: CharacteristicSublink, sign: int) -> tuple[FramedLink, CharacteristicSublink]:
    """Append a split unknot with framing sign; it joins the sublink."""
    if sign not in (1, -1):
        raise InvalidInputError("blow-up sign must be +-1")
    c = _tracked(l, c)
    n = len(l)
    m = np.zeros((n + 1, n + 1), dtype=np.int64)
    m[:n, :n] = l.linking
    m[n, n] = sign
    comps = list(l.components) + [Component(n, BLOWUP, framing=sign)]
    return _with_matrix(l, m, comps), replace(c, membership=c.membership + (1,))


def kirby_reverse(l: FramedLink, c: CharacteristicSublink, j: int) -> tuple[FramedLink, CharacteristicSublink]:
    """Reverse the orientation of component j."""
    _check_index(l, j)
    c = _tracked(l, c)
    m = np.array(l.linking)
    arf = c.arf
    if c.membership[j]:
        arf = (arf + _half_link(m, c.membership, j)) % 2
    m[j, :] *= -1
    m[:, j] *= -1
    comps = list(l.components)
    comps[j] = replace(comps[j], orientation=-comps[j].orientation)
    return _with_matrix(l, m, comps), replace(c, arf=arf)


def _subtract_slide(l: FramedLink, c: CharacteristicSublink, i: int, j: int) -> tuple[FramedLink, CharacteristicSublink]:
    m = np.array(l.linking)
    e = np.eye(len(l), dtype=np.int64)
    e[i, j] = -1
    mem = list(c.membership)
    arf = c.arf
    if mem[i]:
        if mem[j]:
            arf = (arf + _half_link(m, mem, j)) % 2
        mem[j] ^= 1
    return _with_matrix(l, e @ m @ e.T), replace(c, membership=tuple(mem), arf=arf)


def kirby_handle_slide(
    l: FramedLink, c: CharacteristicSublink, i: int, j: int, subtract: bool = False
) -> tuple[FramedLink, CharacteristicSublink]:
    """Slide component i over j: M -> E M E^T with E adding row j to row i.

    Membership of j toggles iff i is in the sublink.
    """
    _check_index(l, i, j)
    if i == j:
        raise InvalidInputError("cannot slide a component over itself")
    if DOTTED in (l.components[i].kind, l.components[j].kind):
        raise InvalidInputError("the dotted circle does not take part in handle slides")
    c = _tracked(l, c)
    if subtract:
        return _subtract_slide(l, c, i, j)
    l, c = kirby_reverse(l, c, j)
    l, c = _subtract_slide(l, c, i, j)
    return kirby_reverse(l, c, j)

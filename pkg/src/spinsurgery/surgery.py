"""Framed-link presentations of mapping tori at the level of linking matrices.

Component order: the dotted circle, the 2g basis unknots a_1, b_1, ..., then
twist curves by increasing level.  Levels follow application order, so the
rightmost letter of a word sits lowest.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, replace

import numpy as np

from . import gf2
from .conventions import FROZEN, Conventions
from .errors import InconsistencyError, InvalidInputError
from .homology import SpinStructure, Vec, intersect, seifert
from .mapping import BoundingPairChain, Letter, Nonseparating, Separating, TwistWord, is_level2

DOTTED, BASIS_A, BASIS_B, TWIST, BLOWUP = "dotted", "basis_a", "basis_b", "twist", "blowup"


@dataclass(frozen=True)
class Component:
    """One link component.

    For twist curves: `level` (1-based), integer class `cls`, `orientation`,
    `letter` (index into the link's letters), `role` ('square', 'sep' or 'bp')
    and `group`, shared by the curves that cancel as a pair.
    """

    id: int
    kind: str
    framing: int = 0
    handle: int | None = None
    level: int | None = None
    cls: Vec | None = None
    orientation: int = 1
    letter: int | None = None
    role: str | None = None
    group: int | None = None

    def to_json(self) -> dict:
        out: dict = {"id": self.id, "kind": self.kind, "framing": self.framing}
        for key in ("handle", "level", "letter", "role", "group"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.cls is not None:
            out["cls"] = list(self.cls)
        if self.kind == TWIST:
            out["orientation"] = self.orientation
        return out

    @classmethod
    def from_json(cls, d: dict) -> Component:
        return cls(
            id=int(d["id"]),
            kind=str(d["kind"]),
            framing=int(d.get("framing", 0)),
            handle=d.get("handle"),
            level=d.get("level"),
            cls=tuple(d["cls"]) if "cls" in d else None,
            orientation=int(d.get("orientation", 1)),
            letter=d.get("letter"),
            role=d.get("role"),
            group=d.get("group"),
        )


@dataclass(frozen=True)
class FramedLink:
    genus: int
    components: tuple[Component, ...]
    linking: np.ndarray
    letters: tuple[Letter, ...] = ()
    conventions: Conventions = FROZEN

    def __post_init__(self):
        m = np.array(self.linking, dtype=np.int64)
        if m.shape != (len(self.components), len(self.components)):
            raise InvalidInputError("linking matrix shape does not match component count")
        if not np.array_equal(m, m.T):
            raise InvalidInputError("linking matrix is not symmetric")
        for k, comp in enumerate(self.components):
            if m[k, k] != comp.framing:
                raise InvalidInputError(f"framing of component {k} disagrees with the diagonal")
        m.flags.writeable = False
        object.__setattr__(self, "linking", m)
        object.__setattr__(self, "components", tuple(self.components))

    def __len__(self) -> int:
        return len(self.components)

    def twist_ids(self) -> list[int]:
        return [c.id for c in self.components if c.kind == TWIST]

    def to_json(self) -> dict:
        from .dsl import format_letter

        return {
            "genus": self.genus,
            "components": [c.to_json() for c in self.components],
            "linking": self.linking.tolist(),
            "letters": [format_letter(l) for l in self.letters],
            "conventions": self.conventions.as_dict(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, d: dict) -> FramedLink:
        from .dsl import parse_letter

        g = int(d["genus"])
        conv = Conventions(**d["conventions"]) if "conventions" in d else FROZEN
        return cls(
            genus=g,
            components=tuple(Component.from_json(c) for c in d["components"]),
            linking=np.array(d["linking"], dtype=np.int64),
            letters=tuple(parse_letter(t, g) for t in d.get("letters", [])),
            conventions=conv,
        )


@dataclass(frozen=True)
class CharacteristicSublink:
    """Membership vector over components plus the spin structure it came from.

    `arf` is None for builder links, where the Arf term follows from the
    reduction rules; Kirby moves record the tracked value here.
    """

    membership: tuple[int, ...]
    source_spin: SpinStructure
    arf: int | None = None

    def members(self) -> list[int]:
        return [k for k, b in enumerate(self.membership) if b]

    def bits(self) -> str:
        return "".join(map(str, self.membership))


# ---------------------------------------------------------------- builder


@dataclass
class _Curve:
    cls: Vec
    framing: int
    orientation: int
    letter: int
    role: str
    group: int


def _letter_curves(letter: Letter, index: int, group0: int, conv: Conventions) -> list[_Curve]:
    eps = conv.twist_framing_sign
    curve = letter.curve
    if isinstance(curve, Nonseparating):
        if letter.exponent % 2:
            raise InvalidInputError("nonseparating letters must carry even exponents in level-2 words")
        c = curve.cls
        m = seifert(c, c, conv)
        sign = 1 if letter.exponent > 0 else -1
        out = []
        for k in range(abs(letter.exponent)):
            out.append(_Curve(c, m + eps * sign, 1 if k % 2 == 0 else -1, index, "square", group0 + k // 2))
        return out
    if isinstance(curve, Separating):
        zero = (0,) * curve.rank
        return [_Curve(zero, eps * letter.exponent, 1, index, "sep", group0)]
    if isinstance(curve, BoundingPairChain):
        d = curve.d
        m = seifert(d, d, conv)
        e = letter.exponent
        return [
            _Curve(d, m + eps * e, 1, index, "bp", group0),
            _Curve(d, m - eps * e, -1, index, "bp", group0),
        ]
    raise InvalidInputError(f"unsupported curve type {type(curve).__name__}")


def _basis_link(c: Vec, conv: Conventions) -> Vec:
    if not conv.dual_linking:
        return c
    n = len(c)
    return tuple(intersect(tuple(int(k == j) for k in range(n)), c) for j in range(n))


def _assemble(genus: int, curves: Sequence[_Curve], letters: tuple[Letter, ...], conv: Conventions) -> FramedLink:
    n = 2 * genus
    size = 1 + n + len(curves)
    m = np.zeros((size, size), dtype=np.int64)
    comps = [Component(0, DOTTED)]
    for j in range(n):
        comps.append(Component(1 + j, BASIS_A if j % 2 == 0 else BASIS_B, handle=j // 2 + 1))
    for k, cv in enumerate(curves):
        idx = 1 + n + k
        m[idx, idx] = cv.framing
        lk = _basis_link(cv.cls, conv)
        for j in range(n):
            m[idx, 1 + j] = m[1 + j, idx] = cv.orientation * lk[j]
        for k2 in range(k):
            low = curves[k2]
            v = low.orientation * cv.orientation * seifert(low.cls, cv.cls, conv)
            m[1 + n + k2, idx] = m[idx, 1 + n + k2] = v
        comps.append(
            Component(
                idx, TWIST, framing=cv.framing, level=k + 1, cls=cv.cls, orientation=cv.orientation,
                letter=cv.letter, role=cv.role, group=cv.group,
            )
        )
    return FramedLink(genus, tuple(comps), m, letters, conv)


def _word_curves(w: TwistWord, conv: Conventions) -> list[_Curve]:
    curves: list[_Curve] = []
    group = 0
    for index in reversed(range(len(w.letters))):
        new = _letter_curves(w.letters[index], index, group, conv)
        group = max(c.group for c in new) + 1
        curves.extend(new)
    return curves


def build_mapping_torus_link(w: TwistWord, conv: Conventions = FROZEN, check_level2: bool = True) -> FramedLink:
    """Surgery presentation (component list plus linking matrix) of the mapping torus of w."""
    if check_level2 and not is_level2(w):
        raise InvalidInputError("word is not in the level-2 subgroup")
    return _assemble(w.genus, _word_curves(w, conv), w.letters, conv)


def _link_curves(l: FramedLink) -> list[_Curve]:
    out = []
    for c in l.components:
        if c.kind == TWIST:
            out.append(_Curve(c.cls, c.framing, c.orientation, c.letter, c.role, c.group))
        elif c.kind != DOTTED and c.kind not in (BASIS_A, BASIS_B):
            raise InvalidInputError("compose_tangles needs builder links")
    return out


def compose_tangles(l1: FramedLink, l2: FramedLink) -> FramedLink:
    """Stack l2's tangle above l1's: the link of the word w2 * w1."""
    if l1.genus != l2.genus:
        raise InvalidInputError("genus mismatch")
    if l1.conventions != l2.conventions:
        raise InvalidInputError("links were built under different conventions")
    lower, upper = _link_curves(l1), _link_curves(l2)
    shift_letter = len(l2.letters)
    shift_group = 1 + max((c.group for c in lower), default=-1)
    lower = [replace(c, letter=c.letter + shift_letter) for c in lower]
    upper = [replace(c, group=c.group + shift_group) for c in upper]
    return _assemble(l1.genus, lower + upper, l2.letters + l1.letters, l1.conventions)


# ------------------------------------------------------- characteristic sublink


def is_characteristic(m: np.ndarray, membership: Sequence[int]) -> bool:
    v = np.asarray(membership, dtype=np.int64)
    return bool(np.all((m @ v - np.diag(m)) % 2 == 0))


def characteristic_sublink(l: FramedLink, sigma: SpinStructure) -> CharacteristicSublink:
    """theta(sigma): basis memberships seeded by svals, twist memberships solved over GF(2)."""
    if sigma.genus != l.genus:
        raise InvalidInputError("spin structure genus does not match the link")
    known = [0] * len(l)
    svals = sigma.svals(l.conventions)
    unknown: list[int] = []
    for c in l.components:
        if c.kind in (BASIS_A, BASIS_B):
            known[c.id] = svals[c.id - 1]
        elif c.kind == TWIST:
            unknown.append(c.id)
        elif c.kind != DOTTED:
            raise InvalidInputError(f"component {c.id} of kind {c.kind!r} is not from the builder")
    m = l.linking
    odd = (m % 2).astype(np.int64)
    kv = np.asarray(known, dtype=np.int64)
    rhs = (np.diag(m) - m @ kv) % 2
    sub = odd[:, unknown]
    rows = [gf2.pack(r) for r in sub]
    sol = gf2.solve_unique(rows, [int(b) for b in rhs], len(unknown)) if unknown else ()
    membership = list(known)
    for idx, b in zip(unknown, sol):
        membership[idx] = b
    if membership[0] or not is_characteristic(m, membership):
        raise InconsistencyError("solved sublink failed the characteristic condition")
    return CharacteristicSublink(tuple(membership), sigma)

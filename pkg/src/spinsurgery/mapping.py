"""Dehn-twist words and their action on integral homology."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import InvalidInputError
from .homology import Vec, handle_pairs, intersect, is_primitive, reduce2

__all__ = [
    "Nonseparating",
    "Separating",
    "BoundingPairChain",
    "Letter",
    "TwistWord",
    "transvect",
    "transvection_matrix",
    "word_action",
    "is_level2",
    "is_torelli",
    "chain_bp_factorization",
    "separating_square_factorization",
    "apply_matrix",
]


@dataclass(frozen=True)
class Nonseparating:
    cls: Vec

    def __post_init__(self):
        object.__setattr__(self, "cls", tuple(int(c) for c in self.cls))
        if not any(self.cls):
            raise InvalidInputError("twist class must be nonzero")
        if not is_primitive(self.cls):
            raise InvalidInputError(f"non-primitive class {list(self.cls)}")

    @property
    def rank(self) -> int:
        return len(self.cls)


@dataclass(frozen=True)
class Separating:
    """Curve bounding the handles in `handles` (1-based).

    `pairs` optionally overrides the standard lattice (a_i, b_i) of the bounded
    subsurface, e.g. after transporting the curve by a mapping class.
    """

    handles: tuple[int, ...]
    genus: int
    pairs: tuple[tuple[Vec, Vec], ...] | None = None

    def __post_init__(self):
        hs = tuple(sorted(set(int(h) for h in self.handles)))
        object.__setattr__(self, "handles", hs)
        if not hs or len(hs) >= self.genus or hs[0] < 1 or hs[-1] > self.genus:
            raise InvalidInputError(
                f"separating handle set {list(hs)} must be a nonempty proper subset of 1..{self.genus}"
            )

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def lattice(self) -> tuple[tuple[Vec, Vec], ...]:
        return self.pairs if self.pairs is not None else handle_pairs(self.genus, self.handles)


@dataclass(frozen=True)
class BoundingPairChain:
    """Bounding pair d_1, d_2 presented by a chain c_1, c_2, c_3.

    Over Z the pair's class is d = c_1 + c_3 or c_1 - c_3, whichever is orthogonal
    to c_2; mod 2 both agree with c_1 + c_3.
    """

    c1: Vec
    c2: Vec
    c3: Vec

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            object.__setattr__(self, name, tuple(int(c) for c in getattr(self, name)))
        if not (len(self.c1) == len(self.c2) == len(self.c3)):
            raise InvalidInputError("chain classes have different lengths")
        if abs(intersect(self.c1, self.c2)) != 1 or abs(intersect(self.c2, self.c3)) != 1:
            raise InvalidInputError("degenerate chain: need c1.c2 = +-1 and c2.c3 = +-1")
        if intersect(self.c1, self.c3) != 0:
            raise InvalidInputError("degenerate chain: need c1.c3 = 0")
        d = self.d
        if not any(d) or not is_primitive(d):
            raise InvalidInputError("chain does not bound a pair: c1 +- c3 is not primitive")

    @property
    def rank(self) -> int:
        return len(self.c1)

    @property
    def d(self) -> Vec:
        plus = tuple(a + b for a, b in zip(self.c1, self.c3))
        if intersect(plus, self.c2) == 0:
            return plus
        return tuple(a - b for a, b in zip(self.c1, self.c3))


Curve = Union[Nonseparating, Separating, BoundingPairChain]


@dataclass(frozen=True)
class Letter:
    curve: Curve
    exponent: int

    def __post_init__(self):
        if self.exponent == 0:
            raise InvalidInputError("zero exponent")
        if not isinstance(self.curve, Nonseparating) and abs(self.exponent) != 1:
            raise InvalidInputError("separating and bounding-pair letters carry exponent +-1")

    @property
    def kind(self) -> str:
        return {Nonseparating: "twist", Separating: "sep", BoundingPairChain: "bp"}[type(self.curve)]


@dataclass(frozen=True)
class TwistWord:
    """Letters as written; the rightmost letter acts first."""

    genus: int
    letters: tuple[Letter, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.genus < 1:
            raise InvalidInputError("genus must be positive")
        for k, letter in enumerate(self.letters):
            if letter.curve.rank != 2 * self.genus:
                raise InvalidInputError(f"letter {k} does not live in genus {self.genus}")

    def __mul__(self, other: TwistWord) -> TwistWord:
        """Product self * other: `other` acts first."""
        if self.genus != other.genus:
            raise InvalidInputError("genus mismatch")
        return TwistWord(self.genus, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> TwistWord:
        return TwistWord(self.genus, tuple(Letter(l.curve, -l.exponent) for l in reversed(self.letters)))

    @classmethod
    def of(cls, genus: int, *letters: Letter) -> TwistWord:
        return cls(genus, tuple(letters))


def transvect(c: Sequence[int], x: Sequence[int], exponent: int = 1) -> Vec:
    """Action of t_c^exponent on x: x + exponent (x.c) c."""
    k = exponent * intersect(x, c)
    return tuple(int(a) + k * int(b) for a, b in zip(x, c))


def transvection_matrix(c: Sequence[int], exponent: int = 1) -> np.ndarray:
    n = len(c)
    cols = [transvect(c, tuple(int(k == j) for k in range(n)), exponent) for j in range(n)]
    return np.array(cols, dtype=np.int64).T


def _letter_matrix(letter: Letter, n: int) -> np.ndarray:
    if isinstance(letter.curve, Nonseparating):
        return transvection_matrix(letter.curve.cls, letter.exponent)
    return np.eye(n, dtype=np.int64)


def word_action(w: TwistWord) -> np.ndarray:
    """Matrix of w on H_1(Z); columns are images of basis classes."""
    n = 2 * w.genus
    m = np.eye(n, dtype=np.int64)
    for letter in w.letters:
        m = m @ _letter_matrix(letter, n)
    return m


def apply_matrix(m: np.ndarray, v: Sequence[int]) -> Vec:
    return tuple(int(t) for t in m @ np.asarray(v, dtype=np.int64))


def is_level2(w: TwistWord) -> bool:
    m = word_action(w)
    return bool(np.all((m - np.eye(len(m), dtype=np.int64)) % 2 == 0))


def is_torelli(w: TwistWord) -> bool:
    m = word_action(w)
    return bool(np.array_equal(m, np.eye(len(m), dtype=np.int64)))


def chain_bp_factorization(bp: BoundingPairChain, d_exponent: int = -2) -> TwistWord:
    """Seven squared twists whose product is the bounding pair map of the chain.

    The last letter carries `d_exponent` (-2 by default, +2 for the opposite
    orientation of d_1 versus d_2).
    """
    if d_exponent not in (-2, 2):
        raise InvalidInputError("d_exponent must be +-2")
    c1, c2, c3 = bp.c1, bp.c2, bp.c3
    x = transvect(c2, transvect(c3, c1))
    y = transvect(c2, transvect(c3, x))
    z = transvect(c3, transvect(c2, c3))
    w = transvect(c3, c2)
    classes = (c1, x, y, z, w, c3)
    letters = tuple(Letter(Nonseparating(c), 2) for c in classes) + (Letter(Nonseparating(bp.d), d_exponent),)
    return TwistWord(len(c1) // 2, letters)


def separating_square_factorization(sep: Separating) -> TwistWord:
    """Twist about a single-handle separating curve as six squared twists.

    With D^2 = t_a^2 t^2_{t_a^{-1} t_b(a)} t^2_{t_a^{-1}(b)} the boundary twist is D^4.
    """
    if len(sep.handles) != 1 or sep.pairs is not None:
        raise InvalidInputError("square factorization is only provided for a standard single handle")
    ((a, b),) = sep.lattice()
    ab = transvect(a, transvect(b, a), -1)
    ba = transvect(a, b, -1)
    half = tuple(Letter(Nonseparating(c), 2) for c in (a, ab, ba))
    return TwistWord(sep.genus, half + half)


def mod2_classes(w: TwistWord) -> list[Vec]:
    return [reduce2(l.curve.cls) for l in w.letters if isinstance(l.curve, Nonseparating)]

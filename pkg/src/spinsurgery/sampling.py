"""Random words, classes and chains for fuzz suites; everything takes an explicit Generator."""

from __future__ import annotations

import os

import numpy as np

from .homology import SpinStructure, Vec, is_primitive
from .mapping import BoundingPairChain, Letter, Nonseparating, Separating, TwistWord, apply_matrix, word_action

SEED_ENV = "SPINSURGERY_SEED"


def resolve_seed(seed: int | None, default: int = 0) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        return int(env)
    return default if seed is None else seed


def random_class(rng: np.random.Generator, g: int, bound: int = 2) -> Vec:
    while True:
        c = tuple(int(v) for v in rng.integers(-bound, bound + 1, size=2 * g))
        if any(c) and is_primitive(c):
            return c


def random_spin(rng: np.random.Generator, g: int) -> SpinStructure:
    return SpinStructure(tuple(int(v) for v in rng.integers(0, 2, size=2 * g)))


def random_bits(rng: np.random.Generator, g: int) -> Vec:
    return tuple(int(v) for v in rng.integers(0, 2, size=2 * g))


def random_mapping(rng: np.random.Generator, g: int, length: int = 3) -> TwistWord:
    """Product of single (not squared) twists on small classes."""
    letters = tuple(Letter(Nonseparating(random_class(rng, g, 1)), int(rng.choice((-1, 1)))) for _ in range(length))
    return TwistWord(g, letters)


def standard_chain(g: int) -> BoundingPairChain:
    n = 2 * g
    a1 = tuple(int(k == 0) for k in range(n))
    b1 = tuple(int(k == 1) for k in range(n))
    a1a2 = tuple(int(k in (0, 2)) for k in range(n))
    return BoundingPairChain(a1, b1, a1a2)


def random_chain(rng: np.random.Generator, g: int, spread: int = 3) -> BoundingPairChain:
    """Image of the standard chain under a random mapping class (g >= 2)."""
    m = word_action(random_mapping(rng, g, spread))
    bp = standard_chain(g)
    return BoundingPairChain(apply_matrix(m, bp.c1), apply_matrix(m, bp.c2), apply_matrix(m, bp.c3))


def random_separating(rng: np.random.Generator, g: int) -> Separating:
    k = int(rng.integers(1, g))
    handles = tuple(int(h) for h in rng.choice(np.arange(1, g + 1), size=k, replace=False))
    return Separating(handles, g)


def random_letter(rng: np.random.Generator, g: int, kinds: tuple[str, ...] = ("twist", "sep", "bp")) -> Letter:
    allowed = [k for k in kinds if k == "twist" or g >= 2]
    kind = str(rng.choice(allowed))
    if kind == "twist":
        return Letter(Nonseparating(random_class(rng, g)), int(rng.choice((-4, -2, -2, 2, 2, 4))))
    if kind == "sep":
        return Letter(random_separating(rng, g), int(rng.choice((-1, 1))))
    return Letter(random_chain(rng, g), int(rng.choice((-1, 1))))


def random_word(
    rng: np.random.Generator, g: int, max_length: int = 6, kinds: tuple[str, ...] = ("twist", "sep", "bp")
) -> TwistWord:
    n = int(rng.integers(0, max_length + 1))
    return TwistWord(g, tuple(random_letter(rng, g, kinds) for _ in range(n)))


def random_torelli_word(rng: np.random.Generator, g: int, max_length: int = 4) -> TwistWord:
    return random_word(rng, g, max_length, kinds=("sep", "bp"))

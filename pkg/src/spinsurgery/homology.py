"""Symplectic and Seifert forms on H_1 of the closed surface, and spin structures.

Basis order is a_1, b_1, ..., a_g, b_g; index 2i-2 is a_i and 2i-1 is b_i.
Integer classes are tuples of ints, mod-2 classes are tuples of 0/1.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .conventions import FROZEN, Conventions
from .errors import InvalidInputError

Vec = tuple[int, ...]


def _check_len(*vs: Sequence[int]) -> int:
    n = len(vs[0])
    if n == 0 or n % 2:
        raise InvalidInputError(f"class length must be a positive even number, got {n}")
    for v in vs[1:]:
        if len(v) != n:
            raise InvalidInputError(f"length mismatch: {n} vs {len(v)}")
    return n


@lru_cache(maxsize=None)
def _j(g: int) -> np.ndarray:
    m = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for i in range(g):
        m[2 * i, 2 * i + 1] = 1
        m[2 * i + 1, 2 * i] = -1
    m.flags.writeable = False
    return m


@lru_cache(maxsize=None)
def _v(g: int, transpose: bool) -> np.ndarray:
    m = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for i in range(g):
        if transpose:
            m[2 * i + 1, 2 * i] = 1
        else:
            m[2 * i, 2 * i + 1] = 1
    m.flags.writeable = False
    return m


@dataclass(frozen=True)
class SurfaceModel:
    """Closed genus-g surface with the standard embedding."""

    genus: int
    conventions: Conventions = FROZEN

    def __post_init__(self):
        if self.genus < 1:
            raise InvalidInputError("genus must be positive")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def J(self) -> np.ndarray:
        return _j(self.genus)

    @property
    def V(self) -> np.ndarray:
        return _v(self.genus, self.conventions.seifert_transpose)

    def basis(self) -> list[Vec]:
        n = self.rank
        return [tuple(int(k == j) for k in range(n)) for j in range(n)]

    def label(self, index: int) -> str:
        return f"{'ab'[index % 2]}{index // 2 + 1}"


def basis_vector(n: int, index: int) -> Vec:
    return tuple(int(k == index) for k in range(n))


def intersect(u: Sequence[int], v: Sequence[int]) -> int:
    """Algebraic intersection u^T J v."""
    n = _check_len(u, v)
    return sum(u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(n // 2))


def seifert(u: Sequence[int], v: Sequence[int], conv: Conventions = FROZEN) -> int:
    """Seifert pairing u^T V v of the standard embedding."""
    n = _check_len(u, v)
    if conv.seifert_transpose:
        return sum(u[2 * i + 1] * v[2 * i] for i in range(n // 2))
    return sum(u[2 * i] * v[2 * i + 1] for i in range(n // 2))


def reduce2(u: Iterable[int]) -> Vec:
    return tuple(int(c) % 2 for c in u)


def is_primitive(u: Sequence[int]) -> bool:
    return math.gcd(*(abs(int(c)) for c in u)) == 1


def i_z(z: Sequence[int], y: Sequence[int]) -> int:
    """Indicator of odd intersection, as an element of Z/8."""
    return intersect(z, y) % 2


def pd(x: Sequence[int]) -> Vec:
    """Poincare dual d of x, characterised by intersect(d, y) = x(y) mod 2."""
    n = _check_len(x)
    out = [0] * n
    for i in range(n // 2):
        # d = J x: d_{a_i} = x_{b_i}, d_{b_i} = -x_{a_i}
        out[2 * i] = x[2 * i + 1] % 2
        out[2 * i + 1] = x[2 * i] % 2
    return tuple(out)


def evaluate(x: Sequence[int], c: Sequence[int]) -> int:
    """Cohomology class x evaluated on a homology class, mod 2."""
    _check_len(x, c)
    return sum(int(a) * int(b) for a, b in zip(x, c)) % 2


def parse_bits(text: str, n: int | None = None) -> Vec:
    text = text.strip()
    if not text or any(ch not in "01" for ch in text):
        raise InvalidInputError(f"expected a bit-string, got {text!r}")
    if n is not None and len(text) != n:
        raise InvalidInputError(f"bit-string {text!r} must have length {n}")
    if len(text) % 2:
        raise InvalidInputError(f"bit-string {text!r} must have even length")
    return tuple(int(ch) for ch in text)


@dataclass(frozen=True)
class SpinStructure:
    """A spin structure, stored as its quadratic form on the basis."""

    qvals: Vec

    def __post_init__(self):
        _check_len(self.qvals)
        object.__setattr__(self, "qvals", reduce2(self.qvals))

    @classmethod
    def zero(cls, g: int) -> SpinStructure:
        return cls((0,) * (2 * g))

    @classmethod
    def from_bits(cls, text: str, g: int | None = None) -> SpinStructure:
        return cls(parse_bits(text, None if g is None else 2 * g))

    @classmethod
    def from_svals(cls, svals: Sequence[int], conv: Conventions = FROZEN) -> SpinStructure:
        return cls(tuple((s - conv.sval_offset) % 2 for s in svals))

    @classmethod
    def all(cls, g: int) -> list[SpinStructure]:
        n = 2 * g
        return [cls(tuple((k >> j) & 1 for j in range(n))) for k in range(1 << n)]

    @property
    def genus(self) -> int:
        return len(self.qvals) // 2

    def svals(self, conv: Conventions = FROZEN) -> Vec:
        return tuple((q + conv.sval_offset) % 2 for q in self.qvals)

    def q(self, c: Sequence[int]) -> int:
        _check_len(self.qvals, c)
        s = sum(q * (int(x) % 2) for q, x in zip(self.qvals, c))
        s += sum((int(c[2 * i]) % 2) * (int(c[2 * i + 1]) % 2) for i in range(len(c) // 2))
        return s % 2

    def bits(self) -> str:
        return "".join(map(str, self.qvals))


def q_eval(sigma: SpinStructure, c: Sequence[int]) -> int:
    return sigma.q(c)


def q_seifert(c: Sequence[int], conv: Conventions = FROZEN) -> int:
    """Quadratic form seifert(c, c) mod 2 of the standard embedding."""
    return seifert(c, c, conv) % 2


def arf_form(sigma: SpinStructure, pairs: Sequence[tuple[Sequence[int], Sequence[int]]]) -> int:
    """Arf invariant sum q(x_i) q(y_i) over a symplectic family of mod-2 pairs."""
    for k, (x, y) in enumerate(pairs):
        if intersect(x, y) % 2 != 1:
            raise InvalidInputError(f"pair {k} is not dual: x.y is even")
        for x2, y2 in pairs[k + 1:]:
            if any(intersect(u, v) % 2 for u in (x, y) for v in (x2, y2)):
                raise InvalidInputError("sublattice pairs are not mutually orthogonal")
    return sum(sigma.q(x) * sigma.q(y) for x, y in pairs) % 2


def handle_pairs(g: int, handles: Iterable[int]) -> tuple[tuple[Vec, Vec], ...]:
    """Standard lattice pairs (a_i, b_i) for 1-based handle indices."""
    n = 2 * g
    return tuple((basis_vector(n, 2 * i - 2), basis_vector(n, 2 * i - 1)) for i in handles)


def spin_act(sigma: SpinStructure, x: Sequence[int]) -> SpinStructure:
    """sigma + x; on basis classes q shifts by x."""
    _check_len(sigma.qvals, x)
    return SpinStructure(tuple((q + int(v)) % 2 for q, v in zip(sigma.qvals, x)))


def all_classes_f2(g: int, nonzero: bool = True) -> list[Vec]:
    n = 2 * g
    vs = [tuple((k >> j) & 1 for j in range(n)) for k in range(1 << n)]
    return vs[1:] if nonzero else vs


def intersection_matrix_ok(g: int, conv: Conventions = FROZEN) -> bool:
    """Check the SurfaceModel invariant V - V^T = J with zero diagonal."""
    model = SurfaceModel(g, conv)
    v = model.V
    return bool(np.array_equal(v - v.T, model.J) and not np.any(np.diag(v)))

"""The Z/8 squarefree algebra on generators X_k (one per basis class).

Monomials are sorted tuples of 0-based basis indices; () is the constant.
Relations: X_k^2 = (-1)^{q(e_k)} X_k, and bar(A + X) is expanded by
bar(A+X) = (-1)^{A.X} ((-1)^{q(X)} bar(A) + (-1)^{q(A)} bar(X) - 2 bar(A) bar(X)).
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .errors import InvalidInputError
from .homology import SpinStructure, Vec, all_classes_f2, basis_vector, intersect, reduce2
from .mapping import (
    BoundingPairChain,
    Letter,
    Nonseparating,
    Separating,
    TwistWord,
    chain_bp_factorization,
    is_level2,
)

Monomial = tuple[int, ...]
MOD = 8


@dataclass(frozen=True)
class AlgebraElement:
    genus: int
    qvals: Vec
    terms: tuple[tuple[Monomial, int], ...] = ()

    @classmethod
    def build(cls, genus: int, qvals: Sequence[int], terms: Mapping[Monomial, int] | Iterable) -> AlgebraElement:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, int] = {}
        n = 2 * genus
        for mono, coeff in items:
            mono = tuple(sorted(mono))
            if len(set(mono)) != len(mono) or any(not 0 <= k < n for k in mono):
                raise InvalidInputError(f"invalid monomial {list(mono)}")
            acc[mono] = (acc.get(mono, 0) + int(coeff)) % MOD
        clean = tuple(sorted(((m, c) for m, c in acc.items() if c), key=lambda t: (len(t[0]), t[0])))
        return cls(genus, tuple(int(q) % 2 for q in qvals), clean)

    @property
    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def coeff(self, mono: Sequence[int]) -> int:
        return self.as_dict.get(tuple(sorted(mono)), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        return add(self, other)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return add(self, scale(other, -1))

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        return mul(self, other)

    def __rmul__(self, k: int) -> AlgebraElement:
        return scale(self, k)

    def to_json(self) -> list[dict]:
        return [{"monomial": list(m), "coeff": c} for m, c in self.terms]

    @classmethod
    def from_json(cls, data: Sequence[dict], genus: int, qvals: Sequence[int]) -> AlgebraElement:
        return cls.build(genus, qvals, [(tuple(d["monomial"]), d["coeff"]) for d in data])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = lambda m: "*".join(f"X{'ab'[k % 2]}{k // 2 + 1}" for k in m) or "1"
        return " + ".join(f"{c}*{names(m)}" for m, c in self.terms)


def zero(genus: int, qvals: Sequence[int]) -> AlgebraElement:
    return AlgebraElement.build(genus, qvals, {})


def generator(k: int, sigma: SpinStructure) -> AlgebraElement:
    return AlgebraElement.build(sigma.genus, sigma.qvals, {(k,): 1})


def _same_context(e1: AlgebraElement, e2: AlgebraElement) -> None:
    if e1.genus != e2.genus:
        raise InvalidInputError("genus mismatch")
    if e1.qvals != e2.qvals:
        raise InvalidInputError("spin context mismatch")


def add(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    _same_context(e1, e2)
    return AlgebraElement.build(e1.genus, e1.qvals, list(e1.terms) + list(e2.terms))


def scale(e: AlgebraElement, k: int) -> AlgebraElement:
    return AlgebraElement.build(e.genus, e.qvals, [(m, k * c) for m, c in e.terms])


def mul(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    """Product with squarefree reduction X_k^2 = (-1)^{q(e_k)} X_k."""
    _same_context(e1, e2)
    q = e1.qvals
    out: list[tuple[Monomial, int]] = []
    for m1, c1 in e1.terms:
        s1 = set(m1)
        for m2, c2 in e2.terms:
            sign = 1
            for k in m2:
                if k in s1 and q[k]:
                    sign = -sign
            out.append((tuple(sorted(s1.union(m2))), sign * c1 * c2))
    return AlgebraElement.build(e1.genus, q, out)


def is_normal_form(e: AlgebraElement, allow_constant: bool = False) -> bool:
    """Degree <= 3, degree-2 coefficients even, degree-3 coefficients divisible by 4."""
    for m, c in e.terms:
        d = len(m)
        if d == 0 and not allow_constant:
            return False
        if d > 3 or c % (1 << max(d - 1, 0)):
            return False
    return True


@lru_cache(maxsize=65536)
def _gen_bar_cached(bits: Vec, qvals: Vec, order: tuple[int, ...]) -> AlgebraElement:
    g = len(bits) // 2
    sigma = SpinStructure(qvals)
    idx = [k for k in order if bits[k]]
    n = 2 * g
    k0 = idx[0]
    acc = AlgebraElement.build(g, qvals, {(k0,): 1})
    a_cls = list(basis_vector(n, k0))
    for k in idx[1:]:
        x_cls = basis_vector(n, k)
        xbar = AlgebraElement.build(g, qvals, {(k,): 1})
        qa, qx = sigma.q(a_cls), qvals[k]
        dot = intersect(a_cls, x_cls) % 2
        acc = scale(
            add(add(scale(acc, (-1) ** qx), scale(xbar, (-1) ** qa)), scale(mul(acc, xbar), -2)),
            (-1) ** dot,
        )
        a_cls[k] = 1
    return acc


def gen_bar(c: Sequence[int], sigma: SpinStructure, order: Sequence[int] | None = None) -> AlgebraElement:
    """bar(c) in normal form, expanded over basis indices in `order` (default increasing)."""
    bits = reduce2(c)
    if len(bits) != len(sigma.qvals):
        raise InvalidInputError("class length does not match the spin structure")
    if not any(bits):
        raise InvalidInputError("bar(0) is not defined")
    order = tuple(range(len(bits))) if order is None else tuple(order)
    if sorted(order) != list(range(len(bits))):
        raise InvalidInputError("order must be a permutation of the basis indices")
    return _gen_bar_cached(bits, sigma.qvals, order)


def phi_eval(e: AlgebraElement, sigma: SpinStructure, y: Sequence[int]) -> int:
    """Substitute (-1)^{q(e_k)} i_{e_k}(y) for X_k and evaluate in Z/8."""
    n = 2 * e.genus
    if len(y) != n or len(sigma.qvals) != n:
        raise InvalidInputError("genus mismatch in phi_eval")
    vals = []
    for k in range(n):
        i_k = intersect(basis_vector(n, k), y) % 2
        vals.append((-1) ** sigma.qvals[k] * i_k)
    total = 0
    for m, c in e.terms:
        p = c
        for k in m:
            p *= vals[k]
        total += p
    return total % MOD


def _separating_image(lattice, sigma: SpinStructure) -> AlgebraElement:
    """sum over lattice pairs of 4 q(b) bar(a) + 4 q(a) bar(b) + 4 bar(a) bar(b)."""
    out = zero(sigma.genus, sigma.qvals)
    for a, b in lattice:
        abar, bbar = gen_bar(a, sigma), gen_bar(b, sigma)
        out = out + scale(abar, 4 * sigma.q(b)) + scale(bbar, 4 * sigma.q(a)) + scale(mul(abar, bbar), 4)
    return out


def beta_algebra(w: TwistWord, sigma: SpinStructure) -> AlgebraElement:
    """beta_sigma(w) valued in the algebra."""
    if sigma.genus != w.genus:
        raise InvalidInputError("genus mismatch")
    if not is_level2(w):
        raise InvalidInputError("word is not in the level-2 subgroup")
    out = zero(w.genus, sigma.qvals)
    for letter in w.letters:
        c = letter.curve
        if isinstance(c, Nonseparating):
            if letter.exponent % 2:
                raise InvalidInputError("nonseparating letters need even exponents")
            out = out + scale(gen_bar(c.cls, sigma), letter.exponent // 2)
        elif isinstance(c, Separating):
            out = out + scale(_separating_image(c.lattice(), sigma), letter.exponent)
        elif isinstance(c, BoundingPairChain):
            expanded = beta_algebra(chain_bp_factorization(c), sigma)
            out = out + scale(expanded, letter.exponent)
        else:
            raise InvalidInputError(f"unsupported letter {type(c).__name__}")
    return out


# ---------------------------------------------------------------- Z/8 modules


def _v2(a: int) -> int:
    a %= MOD
    if a == 0:
        return 3
    v = 0
    while a % 2 == 0:
        a //= 2
        v += 1
    return v


def snf_z8(rows: Sequence[Sequence[int]]) -> list[int]:
    """Smith normal form over Z/8; returns the 2-adic valuations (0, 1 or 2) of the nonzero pivots.

    Z/8 is local, so pivoting on an entry of minimal valuation makes every
    other entry a multiple of the pivot.
    """
    a = [[int(v) % MOD for v in r] for r in rows]
    if not a:
        return []
    nr, nc = len(a), len(a[0])
    out = []
    r0 = 0
    for _ in range(min(nr, nc)):
        best = None
        for i in range(r0, nr):
            for j in range(r0, nc):
                v = _v2(a[i][j])
                if v < 3 and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        a[r0], a[i] = a[i], a[r0]
        for row in a:
            row[r0], row[j] = row[j], row[r0]
        unit = (a[r0][r0] >> v) % MOD
        inv = pow(unit, -1, MOD)
        a[r0] = [(inv * t) % MOD for t in a[r0]]
        p = a[r0][r0]  # = 2^v
        for i2 in range(nr):
            if i2 != r0 and a[i2][r0]:
                f = (a[i2][r0] >> v) % MOD
                a[i2] = [(s - f * t) % MOD for s, t in zip(a[i2], a[r0])]
        for j2 in range(r0 + 1, nc):
            if a[r0][j2]:
                f = (a[r0][j2] >> v) % MOD
                for row in a:
                    row[j2] = (row[j2] - f * row[r0]) % MOD
        assert p == 1 << v
        out.append(v)
        r0 += 1
    return out


def normal_monomials(g: int, max_degree: int = 3) -> list[Monomial]:
    n = 2 * g
    return [m for d in range(1, max_degree + 1) for m in itertools.combinations(range(n), d)]


def coordinates(e: AlgebraElement, monos: Sequence[Monomial]) -> list[int]:
    d = e.as_dict
    extra = set(d) - set(monos)
    if extra:
        raise InvalidInputError(f"element has terms outside the coordinate set: {sorted(extra)}")
    return [d.get(m, 0) for m in monos]


@dataclass
class StructureReport:
    genus: int
    spin: str
    ranks: tuple[int, int, int]
    expected: tuple[int, int, int]
    order_log2: int
    generators: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.ranks == self.expected and all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "spin": self.spin,
            "ranks": {"order8": self.ranks[0], "order4": self.ranks[1], "order2": self.ranks[2]},
            "expected": {"order8": self.expected[0], "order4": self.expected[1], "order2": self.expected[2]},
            "order_log2": self.order_log2,
            "generators": self.generators,
            "checks": self.checks,
            "ok": self.ok,
        }


def _ranks(vals: Sequence[int]) -> tuple[int, int, int]:
    return (vals.count(0), vals.count(1), vals.count(2))


def prop62_check(g: int, sigma: SpinStructure | None = None) -> dict:
    """Certify that phi is injective on normal-form elements.

    Family points: y_S = sum of the dual partners of S, for generator subsets S of
    size 1, 2, 3.  At y_S a monomial T evaluates to a unit when T is contained in
    S and to 0 otherwise, so the evaluation matrix is unitriangular.  The image
    order of the rescaled lattice (coefficients times 1, 2, 4) then equals the
    lattice order, so no element with a unit coefficient on a normal monomial
    is killed.
    """
    sigma = sigma or SpinStructure.zero(g)
    monos = normal_monomials(g)
    n = 2 * g
    partner = lambda k: k + 1 if k % 2 == 0 else k - 1
    rows = []
    triangular = True
    for s in monos:
        y = [0] * n
        for k in s:
            y[partner(k)] = 1
        row = []
        for t in monos:
            v = phi_eval(AlgebraElement.build(g, sigma.qvals, {t: 1}), sigma, y)
            if set(t) <= set(s):
                triangular &= v in (1, MOD - 1)
            else:
                triangular &= v == 0
            row.append(v)
        rows.append(row)
    scaled = [[v * (1 << (len(t) - 1)) for v, t in zip(r, monos)] for r in rows]
    image_log2 = sum(3 - v for v in snf_z8(scaled))
    lattice_log2 = sum(3 - (len(t) - 1) for t in monos)
    return {
        "family_points": len(monos),
        "unitriangular": bool(triangular),
        "image_order_log2": image_log2,
        "lattice_order_log2": lattice_log2,
        "injective": bool(triangular and image_log2 == lattice_log2),
    }


def abelianization_report(g: int, sigma: SpinStructure | None = None) -> StructureReport:
    """Z/8-module spanned by bar(c) over all nonzero classes, via Smith normal form."""
    if not 1 <= g <= 3:
        raise InvalidInputError("abelianization report is limited to g <= 3")
    sigma = sigma or SpinStructure.zero(g)
    monos = normal_monomials(g)
    gens = [gen_bar(c, sigma) for c in all_classes_f2(g)]
    vals = snf_z8([coordinates(e, monos) for e in gens])
    ranks = _ranks(vals)
    n = 2 * g
    expected = (comb(n, 1), comb(n, 2), comb(n, 3))
    p62 = prop62_check(g, sigma)
    return StructureReport(
        genus=g,
        spin=sigma.bits(),
        ranks=ranks,
        expected=expected,
        order_log2=sum(3 - v for v in vals),
        generators=len(gens),
        checks={
            "normal_form": all(is_normal_form(e) for e in gens),
            "prop62_injective": p62["injective"],
        },
    )


# ------------------------------------------------------------ Torelli image


def enumerate_chains(g: int, limit: int | None = None) -> list[BoundingPairChain]:
    """Chains with 0/1 coefficients whose pair class is primitive."""
    vecs = all_classes_f2(g)
    out = []
    for c1, c2, c3 in itertools.product(vecs, repeat=3):
        if abs(intersect(c1, c2)) != 1 or abs(intersect(c2, c3)) != 1 or intersect(c1, c3) != 0:
            continue
        try:
            out.append(BoundingPairChain(c1, c2, c3))
        except InvalidInputError:
            continue
        if limit is not None and len(out) >= limit:
            break
    return out


def special_image(bp: BoundingPairChain, sigma: SpinStructure) -> AlgebraElement:
    """4 C1 C2 + 4 C1 C2 D1, the image when q vanishes on C1, C2 and D1."""
    c1, c2, d = gen_bar(bp.c1, sigma), gen_bar(bp.c2, sigma), gen_bar(bp.d, sigma)
    c12 = mul(c1, c2)
    return scale(c12, 4) + scale(mul(c12, d), 4)


@dataclass
class TorelliImageReport:
    genus: int
    spin: str
    chains: int
    dimension: int
    all_two_torsion: bool
    special_chains: int
    special_ok: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def torelli_image_report(g: int, sigma: SpinStructure, limit: int | None = None) -> TorelliImageReport:
    """Span of beta_sigma over bounding-pair chains, as a Z/2-vector space."""
    if g not in (2, 3):
        raise InvalidInputError("Torelli image report needs g = 2 or 3")
    from . import gf2

    monos = normal_monomials(g)
    chains = enumerate_chains(g, limit)
    torsion = True
    special_n, special_ok = 0, True
    rows = []
    for bp in chains:
        e = beta_algebra(TwistWord(g, (Letter(bp, 1),)), sigma)
        torsion &= (e + e).is_zero()
        coords = coordinates(e, monos)
        rows.append(gf2.pack([(c // 4) % 2 for c in coords]))
        if sigma.q(bp.c1) == sigma.q(bp.c2) == sigma.q(bp.d) == 0:
            special_n += 1
            special_ok &= e == special_image(bp, sigma)
    return TorelliImageReport(
        genus=g,
        spin=sigma.bits(),
        chains=len(chains),
        dimension=gf2.rank(rows, len(monos)),
        all_two_torsion=bool(torsion),
        special_chains=special_n,
        special_ok=bool(special_ok),
    )

from __future__ import annotations

import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from spinsurgery.algebra import (
    AlgebraElement,
    abelianization_report,
    add,
    beta_algebra,
    coordinates,
    gen_bar,
    generator,
    is_normal_form,
    mul,
    normal_monomials,
    phi_eval,
    prop62_check,
    snf_z8,
    special_image,
    torelli_image_report,
    zero,
)
from spinsurgery.dsl import parse_word
from spinsurgery.errors import InvalidInputError
from spinsurgery.homology import SpinStructure, all_classes_f2, i_z, pd
from spinsurgery.homomorphisms import beta_closed
from spinsurgery.mapping import Letter, TwistWord
from spinsurgery.sampling import random_chain, random_word, standard_chain

S1, S2 = SpinStructure.zero(1), SpinStructure.zero(2)


def _el(g, s, terms):
    return AlgebraElement.build(g, s.qvals, terms)


def test_gen_bar_examples():
    assert gen_bar((1, 0), S1) == _el(1, S1, {(0,): 1})
    assert gen_bar((1, 1), S1) == _el(1, S1, {(0,): -1, (1,): -1, (0, 1): 2})
    assert gen_bar((1, 0, 1, 0), S2) == _el(2, S2, {(0,): 1, (2,): 1, (0, 2): -2})
    with pytest.raises(InvalidInputError):
        gen_bar((0, 0), S1)


def test_gen_bar_is_normal_form_and_phi_correct():
    for g in (1, 2, 3):
        spins = SpinStructure.all(g) if g < 3 else SpinStructure.all(g)[::9]
        ys = all_classes_f2(g, nonzero=False)
        for s in spins:
            for c in all_classes_f2(g):
                e = gen_bar(c, s)
                assert is_normal_form(e)
                for y in ys[:: 1 if g < 3 else 3]:
                    assert phi_eval(e, s, y) == ((-1) ** s.q(c) * i_z(c, y)) % 8


def test_mul_examples():
    s = SpinStructure((0, 1, 0, 0))
    xa, xb = generator(0, s), generator(1, s)
    assert mul(xa, xa) == xa
    assert mul(xb, xb) == _el(2, s, {(1,): -1})
    e = zero(2, s.qvals)
    assert add(xa, e) == xa
    cubic = mul(mul(AlgebraElement.build(2, s.qvals, {(0,): 4}), generator(1, s)), generator(2, s))
    assert cubic == _el(2, s, {(0, 1, 2): 4})
    assert mul(cubic, _el(2, s, {(3,): 2})).is_zero()


def test_mul_matches_phi_pointwise():
    rng = np.random.default_rng(3)
    s = SpinStructure((1, 0, 1, 1))
    ys = all_classes_f2(2, nonzero=False)
    monos = [()] + [m for d in range(1, 5) for m in itertools.combinations(range(4), d)]
    for _ in range(200):
        e1 = _el(2, s, {monos[int(k)]: int(rng.integers(8)) for k in rng.integers(len(monos), size=4)})
        e2 = _el(2, s, {monos[int(k)]: int(rng.integers(8)) for k in rng.integers(len(monos), size=4)})
        for y in ys:
            assert phi_eval(mul(e1, e2), s, y) == (phi_eval(e1, s, y) * phi_eval(e2, s, y)) % 8


def test_expansion_order_independence():
    rng = np.random.default_rng(4)
    for g in (2, 3):
        for _ in range(100):
            s = SpinStructure(tuple(int(v) for v in rng.integers(0, 2, 2 * g)))
            c = tuple(int(v) for v in rng.integers(0, 2, 2 * g))
            if not any(c):
                continue
            order = [int(v) for v in rng.permutation(2 * g)]
            assert gen_bar(c, s) == gen_bar(c, s, order)


def test_beta_algebra_examples():
    assert beta_algebra(parse_word("T[1,0]^2", 1), S1) == generator(0, S1)
    assert beta_algebra(parse_word("T[1,0]^-2", 1), S1) == _el(1, S1, {(0,): -1})
    bp = standard_chain(2)
    c1, c2, c3, d = bp.c1, bp.c2, bp.c3, bp.d
    plus = lambda *vs: tuple(sum(t) % 2 for t in zip(*vs))
    for s in SpinStructure.all(2):
        expected = zero(2, s.qvals)
        for c in (c1, plus(c1, c2), plus(c1, c2, c3), c2, plus(c2, c3), c3):
            expected = expected + gen_bar(c, s)
        expected = expected - gen_bar(d, s)
        assert beta_algebra(TwistWord.of(2, Letter(bp, 1)), s) == expected


def test_special_sigma_display():
    rng = np.random.default_rng(5)
    hits = 0
    for _ in range(200):
        bp = random_chain(rng, 2)
        for s in SpinStructure.all(2):
            if s.q(bp.c1) == s.q(bp.c2) == s.q(bp.d) == 0:
                hits += 1
                assert beta_algebra(TwistWord.of(2, Letter(bp, 1)), s) == special_image(bp, s)
    assert hits > 0


def test_phi_bridge_to_closed_formula():
    rng = np.random.default_rng(7)
    for _ in range(200):
        g = int(rng.integers(1, 4))
        w = random_word(rng, g)
        s = SpinStructure(tuple(int(v) for v in rng.integers(0, 2, 2 * g)))
        x = tuple(int(v) for v in rng.integers(0, 2, 2 * g))
        assert phi_eval(beta_algebra(w, s), s, pd(x)) == beta_closed(w, s, x)


def test_beta_algebra_additive():
    rng = np.random.default_rng(8)
    for _ in range(100):
        w1, w2 = random_word(rng, 2, 3), random_word(rng, 2, 3)
        s = SpinStructure(tuple(int(v) for v in rng.integers(0, 2, 4)))
        assert beta_algebra(w1 * w2, s) == beta_algebra(w1, s) + beta_algebra(w2, s)


def _sympy_ranks(rows, ncols):
    """Independent oracle: Z-Smith form of the rows stacked on 8*I."""
    m = sympy.Matrix([list(r) for r in rows] + (8 * sympy.eye(ncols)).tolist())
    snf = smith_normal_form(m, domain=sympy.ZZ)
    diag = [abs(int(snf[k, k])) for k in range(ncols)]
    return tuple(diag.count(v) for v in (1, 2, 4))


def test_snf_z8_against_sympy():
    rng = np.random.default_rng(9)
    for _ in range(30):
        r, c = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        rows = (rng.integers(0, 8, size=(r, c)) * rng.choice([1, 2, 4], size=(r, c))) % 8
        vals = snf_z8(rows.tolist())
        assert tuple(vals.count(v) for v in (0, 1, 2)) == _sympy_ranks(rows.tolist(), c)


def test_abelianization_ranks_against_sympy():
    for g in (1, 2):
        monos = normal_monomials(g)
        rows = [coordinates(gen_bar(c, SpinStructure.zero(g)), monos) for c in all_classes_f2(g)]
        assert _sympy_ranks(rows, len(monos)) == abelianization_report(g).ranks


def test_abelianization_genus_1_and_3():
    r1 = abelianization_report(1)
    assert r1.ranks == (2, 1, 0) and r1.order_log2 == 2 * 3 + 2
    r3 = abelianization_report(3, SpinStructure((1, 0, 0, 1, 1, 1)))
    assert r3.ranks == (6, 15, 20) and r3.ok
    with pytest.raises(InvalidInputError):
        abelianization_report(4)


def test_prop62_all_spins_genus_2():
    for s in SpinStructure.all(2):
        out = prop62_check(2, s)
        assert out["unitriangular"] and out["injective"]


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 7), min_size=14, max_size=14), st.integers(0, 15))
def test_nonzero_normal_form_survives_phi(raw, spin_index):
    s = SpinStructure.all(2)[spin_index]
    monos = normal_monomials(2)
    coeffs = {m: (v * (1 << (len(m) - 1))) % 8 for m, v in zip(monos, raw)}
    e = _el(2, s, coeffs)
    values = [phi_eval(e, s, y) for y in all_classes_f2(2, nonzero=False)]
    assert e.is_zero() == (not any(values))


def test_torelli_image_report_genus_2():
    rep = torelli_image_report(2, SpinStructure.zero(2))
    assert rep.chains > 0 and rep.all_two_torsion and rep.special_ok and rep.special_chains > 0
    with pytest.raises(InvalidInputError):
        torelli_image_report(1, S1)


def test_json_roundtrip():
    e = gen_bar((1, 1, 1, 0), S2)
    assert AlgebraElement.from_json(e.to_json(), 2, S2.qvals) == e
    assert e.to_json()[0] == {"monomial": [0], "coeff": e.coeff((0,))}

from __future__ import annotations

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from spinsurgery.dsl import parse_word
from spinsurgery.errors import InconsistencyError, InvalidInputError
from spinsurgery.homology import SpinStructure
from spinsurgery.invariants import arf_sublink, arf_terms, rochlin, signature_exact, total_linking
from spinsurgery.mapping import TwistWord
from spinsurgery.sampling import random_spin, random_torelli_word, random_word
from spinsurgery.surgery import (
    BLOWUP,
    CharacteristicSublink,
    Component,
    FramedLink,
    build_mapping_torus_link,
    characteristic_sublink,
)


def _descartes_signature(m: np.ndarray) -> int:
    """Independent oracle: sign changes of the characteristic polynomial.

    Symmetric matrices have real spectra, so Descartes' rule is exact.
    """
    lam = sympy.symbols("lam")
    p = sympy.Matrix(m.tolist()).charpoly(lam)
    coeffs = [c for c in p.all_coeffs() if c != 0]
    neg = [c * (-1) ** k for k, c in enumerate(reversed(p.all_coeffs()))][::-1]
    neg = [c for c in neg if c != 0]
    changes = lambda cs: sum(1 for a, b in zip(cs, cs[1:]) if a * b < 0)
    return changes(coeffs) - changes(neg)


def test_signature_examples():
    assert signature_exact([[4, -3], [-3, 2]]) == 0
    assert signature_exact(np.zeros((3, 3), dtype=int)) == 0
    assert signature_exact(np.diag([1, -1, 2])) == 1
    assert signature_exact([[0, 1], [1, 0]]) == 0
    with pytest.raises(InvalidInputError):
        signature_exact([[0, 1], [0, 0]])


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n)))
def test_signature_matches_descartes_oracle(entries):
    n = int(round(len(entries) ** 0.5))
    a = np.array(entries, dtype=np.int64).reshape(n, n)
    m = a + a.T
    assert signature_exact(m) == _descartes_signature(m)


def test_signature_sylvester_fuzz():
    rng = np.random.default_rng(9)
    for _ in range(200):
        n = int(rng.integers(2, 8))
        a = rng.integers(-3, 4, size=(n, n))
        m = a + a.T
        e = np.eye(n, dtype=np.int64)
        for _ in range(5):
            i, j = rng.choice(n, size=2, replace=False)
            e[i] += int(rng.integers(-2, 3)) * e[j]
        assert signature_exact(e @ m @ e.T) == signature_exact(m)


def test_total_linking_examples():
    for m_exp, cc in ((-2, 2), (2, -2)):
        link = build_mapping_torus_link(TwistWord.of(2, *parse_word(f"T[1,1,0,1]^{m_exp}", 2).letters))
        c = characteristic_sublink(link, SpinStructure.zero(2))
        in_c = c.membership[5] == 1
        assert total_linking(link, c) == (cc if in_c else 0)
    empty = CharacteristicSublink((0,) * len(link), SpinStructure.zero(2))
    assert total_linking(link, empty) == 0
    bp = build_mapping_torus_link(parse_word("BP([1,0,0,0],[0,1,0,0],[1,0,1,0])", 2))
    for s in SpinStructure.all(2):
        assert total_linking(bp, characteristic_sublink(bp, s)) == 0


def test_arf_examples():
    link = build_mapping_torus_link(parse_word("T[1,0]^2", 1))
    c = characteristic_sublink(link, SpinStructure.zero(1))
    assert c.membership[3:] == (1, 1) and arf_sublink(link, c) == 0
    basis_only = characteristic_sublink(link, SpinStructure((1, 0)))
    assert basis_only.members() == [1] and arf_sublink(link, basis_only) == 0
    sep = build_mapping_torus_link(parse_word("SEP{1}", 2))
    assert arf_sublink(sep, characteristic_sublink(sep, SpinStructure((1, 1, 0, 0)))) == 1
    assert arf_sublink(sep, characteristic_sublink(sep, SpinStructure((1, 0, 1, 1)))) == 0


def test_arf_rejects_dotted_and_split_pairs():
    link = build_mapping_torus_link(parse_word("T[1,0]^2", 1))
    with pytest.raises(InconsistencyError):
        arf_sublink(link, CharacteristicSublink((1, 0, 0, 1, 1), SpinStructure.zero(1)))
    with pytest.raises(InconsistencyError):
        arf_sublink(link, CharacteristicSublink((0, 0, 0, 1, 0), SpinStructure.zero(1)))


def test_rochlin_examples():
    unknot = FramedLink(0 + 1, (Component(0, BLOWUP, framing=1),), np.array([[1]]))
    assert rochlin(unknot, CharacteristicSublink((1,), SpinStructure.zero(1))) == 0
    sep = build_mapping_torus_link(parse_word("SEP{1}", 2))
    assert signature_exact(sep.linking) == -1
    assert rochlin(sep, characteristic_sublink(sep, SpinStructure.zero(2))) == 0
    assert rochlin(sep, characteristic_sublink(sep, SpinStructure((1, 1, 0, 0)))) == 8
    ident = build_mapping_torus_link(TwistWord(2))
    assert rochlin(ident, characteristic_sublink(ident, SpinStructure.zero(2))) == 0


def test_signature_minus_cc_vanishes_on_torelli_links():
    rng = np.random.default_rng(12)
    for _ in range(60):
        g = int(rng.integers(2, 4))
        link = build_mapping_torus_link(random_torelli_word(rng, g))
        sig = signature_exact(link.linking)
        for s in SpinStructure.all(2) if g == 2 else [random_spin(rng, g) for _ in range(6)]:
            assert sig - total_linking(link, characteristic_sublink(link, s)) == 0


def test_squared_twist_signature():
    rng = np.random.default_rng(1)
    for _ in range(30):
        w = random_word(rng, 2, 1, kinds=("twist",))
        if len(w) and abs(w.letters[0].exponent) == 2:
            link = build_mapping_torus_link(w)
            assert signature_exact(link.linking) == -int(np.sign(w.letters[0].exponent))


def test_arf_terms_listing():
    link = build_mapping_torus_link(parse_word("SEP{1} BP([1,0,0,0],[0,1,0,0],[1,0,1,0])", 2))
    terms = dict(arf_terms(link, characteristic_sublink(link, SpinStructure((1, 1, 0, 0)))))
    assert any(k.startswith("sep") for k in terms)

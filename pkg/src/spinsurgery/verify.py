"""Randomized and exhaustive invariant suites, shared by the CLI and the tests."""

from __future__ import annotations

import itertools
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .algebra import add, beta_algebra, gen_bar, mul, phi_eval
from .homology import SpinStructure, all_classes_f2, i_z, intersect, pd
from .homomorphisms import (
    bc_mu,
    bc_mu_link,
    beta_closed,
    beta_link,
    pullback_cohomology,
    pullback_spin,
    transport_letter,
)
from .invariants import rochlin, signature_exact, total_linking
from .kirby import kirby_blowup, kirby_handle_slide
from .mapping import TwistWord, chain_bp_factorization, is_level2, is_torelli, transvection_matrix, word_action
from .sampling import (
    random_bits,
    random_chain,
    random_class,
    random_mapping,
    random_spin,
    random_torelli_word,
    random_word,
)
from .surgery import (
    DOTTED,
    TWIST,
    build_mapping_torus_link,
    characteristic_sublink,
    compose_tangles,
    is_characteristic,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    cases: int
    detail: str = ""


def _run(name: str, fn: Callable[[], tuple[int, str]]) -> CheckResult:
    try:
        cases, failure = fn()
    except Exception as exc:  # report, don't crash the suite
        return CheckResult(name, False, 0, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, not failure, cases, failure)


def suite_homology(g: int, samples: int, rng: np.random.Generator) -> list[CheckResult]:
    vecs = all_classes_f2(min(g, 3), nonzero=False)

    def identity9():
        n = 0
        for a, b, x in itertools.product(vecs, repeat=3):
            ab = tuple((s + t) % 2 for s, t in zip(a, b))
            n += 1
            if (i_z(a, x) + i_z(b, x) - 2 * i_z(a, x) * i_z(b, x)) % 8 != i_z(ab, x):
                return n, f"identity (9) fails at {a}, {b}, {x}"
        return n, ""

    def refinement():
        n = 0
        for s in SpinStructure.all(min(g, 2)):
            small = all_classes_f2(min(g, 2), nonzero=False)
            for x, y in itertools.product(small, repeat=2):
                xy = tuple((u + v) % 2 for u, v in zip(x, y))
                n += 1
                if (s.q(xy) + s.q(x) + s.q(y)) % 2 != intersect(x, y) % 2:
                    return n, f"q is not a refinement at {x}, {y}"
        return n, ""

    return [_run("identity (9)", identity9), _run("quadratic refinement", refinement)]


def suite_mapping(g: int, samples: int, rng: np.random.Generator) -> list[CheckResult]:
    g = max(g, 2)

    def chains():
        for k in range(samples):
            w = chain_bp_factorization(random_chain(rng, g))
            if not (is_torelli(w) and is_level2(w)):
                return k + 1, "chain factorization is not Torelli"
        return samples, ""

    def symplectic_and_conjugation():
        from .homology import SurfaceModel

        J = SurfaceModel(g).J
        for k in range(samples):
            f = random_mapping(rng, g, 4)
            m = word_action(f)
            if not np.array_equal(m.T @ J @ m, J):
                return k + 1, "word action is not symplectic"
            c = random_class(rng, g)
            lhs = m @ transvection_matrix(c) @ (-J @ m.T @ J)
            fc = tuple(int(v) for v in m @ np.array(c))
            if not np.array_equal(lhs, transvection_matrix(fc)):
                return k + 1, "conjugation identity fails"
        return samples, ""

    return [_run("chain factorization Torelli", chains), _run("symplectic + conjugation", symplectic_and_conjugation)]


def suite_surgery(g: int, samples: int, rng: np.random.Generator) -> list[CheckResult]:
    def sublinks():
        for k in range(samples):
            w = random_word(rng, g)
            link = build_mapping_torus_link(w)
            s = random_spin(rng, g)
            c = characteristic_sublink(link, s)
            if not is_characteristic(link.linking, c.membership) or c.membership[0]:
                return k + 1, "sublink is not characteristic"
            groups: dict[int, set[int]] = {}
            for comp in link.components:
                if comp.kind == TWIST:
                    groups.setdefault(comp.group, set()).add(c.membership[comp.id])
            if any(len(v) > 1 for v in groups.values()):
                return k + 1, "a pair is split by the sublink"
        return samples, ""

    def compose():
        for k in range(samples):
            w1, w2 = random_word(rng, g, 4), random_word(rng, g, 4)
            a = compose_tangles(build_mapping_torus_link(w1), build_mapping_torus_link(w2))
            b = build_mapping_torus_link(w2 * w1)
            if not np.array_equal(a.linking, b.linking):
                return k + 1, "compose_tangles differs from the direct build"
        return samples, ""

    return [_run("characteristic sublinks", sublinks), _run("tangle composition", compose)]


def suite_invariants(g: int, samples: int, rng: np.random.Generator) -> list[CheckResult]:
    def sylvester():
        for k in range(samples):
            n = int(rng.integers(1, 7))
            a = rng.integers(-3, 4, size=(n, n))
            m = a + a.T
            e = np.eye(n, dtype=np.int64)
            for _ in range(4):
                i, j = rng.choice(n, size=2, replace=False) if n > 1 else (0, 0)
                if i != j:
                    e[i] += int(rng.integers(-2, 3)) * e[j]
            if signature_exact(e @ m @ e.T) != signature_exact(m):
                return k + 1, "signature changed under congruence"
        return samples, ""

    def torelli_cancellation():
        gg = max(g, 2)
        for k in range(samples):
            w = random_torelli_word(rng, gg)
            link = build_mapping_torus_link(w)
            sig = signature_exact(link.linking)
            for s in (random_spin(rng, gg), SpinStructure.zero(gg)):
                c = characteristic_sublink(link, s)
                if sig - total_linking(link, c) != 0:
                    return k + 1, "signature - C.C is nonzero on a Torelli word"
        return samples, ""

    return [_run("Sylvester invariance", sylvester), _run("Torelli signature cancellation", torelli_cancellation)]


def suite_homomorphism(g: int, samples: int, rng: np.random.Generator) -> list[CheckResult]:
    def oracle():
        for k in range(samples):
            w, s, x = random_word(rng, g), random_spin(rng, g), random_bits(rng, g)
            if beta_link(w, s, x) != beta_closed(w, s, x):
                return k + 1, "beta_link and beta_closed disagree"
        return samples, ""

    def additivity():
        for k in range(samples):
            w1, w2 = random_word(rng, g, 3), random_word(rng, g, 3)
            s, x = random_spin(rng, g), random_bits(rng, g)
            if beta_link(w1 * w2, s, x) != (beta_link(w1, s, x) + beta_link(w2, s, x)) % 8:
                return k + 1, "beta is not additive"
        return samples, ""

    def torelli():
        gg = max(g, 2)
        for k in range(samples):
            w = random_torelli_word(rng, gg)
            s, x = random_spin(rng, gg), random_bits(rng, gg)
            if (2 * beta_link(w, s, x)) % 8:
                return k + 1, "Torelli value is not 2-torsion"
            if bc_mu(w) != bc_mu_link(w):
                return k + 1, "Birman-Craggs routes disagree"
        return samples, ""

    def conjugation():
        for k in range(samples):
            f = random_mapping(rng, g, 2)
            w = random_word(rng, g, 1, kinds=("twist",))
            if not len(w):
                continue
            s, x = random_spin(rng, g), random_bits(rng, g)
            moved = TwistWord(g, (transport_letter(w.letters[0], f),))
            if beta_link(moved, s, x) != beta_link(w, pullback_spin(s, f), pullback_cohomology(x, f)):
                return k + 1, "conjugation covariance fails"
        return samples, ""

    return [
        _run("beta_link = beta_closed", oracle),
        _run("beta additivity", additivity),
        _run("Torelli 2-torsion and mu routes", torelli),
        _run("conjugation covariance", conjugation),
    ]


def suite_algebra(g: int, samples: int, rng: np.random.Generator) -> list[CheckResult]:
    g = min(g, 3)
    ys = all_classes_f2(g, nonzero=False)

    def bridge():
        for k in range(samples):
            w, s, x = random_word(rng, g), random_spin(rng, g), random_bits(rng, g)
            if phi_eval(beta_algebra(w, s), s, pd(x)) != beta_closed(w, s, x):
                return k + 1, "phi(beta_algebra) differs from beta_closed"
        return samples, ""

    def homomorphism():
        classes = all_classes_f2(g)
        for k in range(samples):
            s = random_spin(rng, g)
            e1 = gen_bar(classes[int(rng.integers(len(classes)))], s)
            e2 = gen_bar(classes[int(rng.integers(len(classes)))], s)
            for y in ys:
                p1, p2 = phi_eval(e1, s, y), phi_eval(e2, s, y)
                if phi_eval(add(e1, e2), s, y) != (p1 + p2) % 8 or phi_eval(mul(e1, e2), s, y) != (p1 * p2) % 8:
                    return k + 1, "phi is not a ring homomorphism"
        return samples, ""

    def order_independence():
        classes = all_classes_f2(g)
        for k in range(samples):
            s = random_spin(rng, g)
            c = classes[int(rng.integers(len(classes)))]
            order = [int(v) for v in rng.permutation(2 * g)]
            if gen_bar(c, s) != gen_bar(c, s, order):
                return k + 1, "gen_bar depends on the expansion order"
        return samples, ""

    return [
        _run("phi bridge to beta_closed", bridge),
        _run("phi homomorphism", homomorphism),
        _run("expansion order independence", order_independence),
    ]


def random_kirby_walk(rng: np.random.Generator, link, sub, steps: int) -> tuple[int, str]:
    """Apply random blow-ups and slides; report the first step that changes mu."""
    mu0 = rochlin(link, sub)
    for step in range(steps):
        n = len(link)
        movable = [c.id for c in link.components if c.kind != DOTTED]
        if rng.random() < 0.15 and n < 14:
            link, sub = kirby_blowup(link, sub, int(rng.choice((-1, 1))))
        elif len(movable) >= 2:
            i, j = (int(v) for v in rng.choice(movable, size=2, replace=False))
            link, sub = kirby_handle_slide(link, sub, i, j, subtract=bool(rng.random() < 0.5))
        if not is_characteristic(link.linking, sub.membership):
            return step + 1, "sublink stopped being characteristic"
        if rochlin(link, sub) != mu0:
            return step + 1, f"mu changed from {mu0} to {rochlin(link, sub)}"
    return steps, ""


def suite_kirby(g: int, samples: int, rng: np.random.Generator) -> list[CheckResult]:
    gg = min(g, 2)

    def walks():
        total = 0
        for k in range(max(1, samples // 20)):
            w = random_word(rng, gg, 3)
            link = build_mapping_torus_link(w)
            sub = characteristic_sublink(link, random_spin(rng, gg))
            n, failure = random_kirby_walk(rng, link, sub, 20)
            total += n
            if failure:
                return total, failure
        return total, ""

    return [_run("Kirby invariance of mu", walks)]


SUITES = {
    "homology": suite_homology,
    "mapping": suite_mapping,
    "surgery": suite_surgery,
    "invariants": suite_invariants,
    "homomorphism": suite_homomorphism,
    "algebra": suite_algebra,
    "kirby": suite_kirby,
}


def run_suite(name: str, g: int, samples: int, seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    names = list(SUITES) if name == "all" else [name]
    out: list[CheckResult] = []
    for n in names:
        out.extend(SUITES[n](g, samples, rng))
    return out

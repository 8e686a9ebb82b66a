"""Sato's beta_{sigma,x} and the Birman-Craggs mu, each by two independent routes."""

from __future__ import annotations

import itertools
import time
from collections.abc import Sequence
from dataclasses import dataclass, field


from .conventions import FROZEN, Conventions, all_conventions
from .errors import InconsistencyError, InvalidInputError
from .homology import (
    SpinStructure,
    Vec,
    arf_form,
    evaluate,
    intersection_matrix_ok,
    is_primitive,
    q_seifert,
    seifert,
    spin_act,
)
from .invariants import arf_sublink, arf_terms, rochlin, signature_exact, total_linking
from .mapping import (
    BoundingPairChain,
    Letter,
    Nonseparating,
    Separating,
    TwistWord,
    apply_matrix,
    is_level2,
    is_torelli,
    word_action,
)
from .surgery import build_mapping_torus_link, characteristic_sublink


def _check_x(w: TwistWord, sigma: SpinStructure, x: Sequence[int]) -> None:
    if sigma.genus != w.genus or len(x) != 2 * w.genus:
        raise InvalidInputError("spin structure / cohomology class genus mismatch")


def beta_link_trace(
    w: TwistWord, sigma: SpinStructure, x: Sequence[int], conv: Conventions = FROZEN
) -> dict:
    """Evaluate beta through the surgery link and return every intermediate quantity."""
    _check_x(w, sigma, x)
    link = build_mapping_torus_link(w, conv)
    tau = spin_act(sigma, x)
    c0 = characteristic_sublink(link, sigma)
    c1 = characteristic_sublink(link, tau)
    cc0, cc1 = total_linking(link, c0), total_linking(link, c1)
    a0, a1 = arf_sublink(link, c0), arf_sublink(link, c1)
    num = cc1 - cc0 + 8 * (a0 - a1)
    if num % 2:
        raise InconsistencyError(f"odd numerator {num} before halving")
    return {
        "value": (num // 2) % 8,
        "link": link.to_json(),
        "sublink_sigma": c0.bits(),
        "sublink_sigma_plus_x": c1.bits(),
        "signature": signature_exact(link.linking),
        "cc_sigma": cc0,
        "cc_sigma_plus_x": cc1,
        "arf_sigma": a0,
        "arf_sigma_plus_x": a1,
        "arf_terms_sigma": arf_terms(link, c0),
        "arf_terms_sigma_plus_x": arf_terms(link, c1),
    }


def beta_link(w: TwistWord, sigma: SpinStructure, x: Sequence[int], conv: Conventions = FROZEN) -> int:
    """beta_{sigma,x}(w) = (C'.C' - C.C + 8(Arf(C) - Arf(C')))/2 mod 8."""
    _check_x(w, sigma, x)
    link = build_mapping_torus_link(w, conv)
    c0 = characteristic_sublink(link, sigma)
    c1 = characteristic_sublink(link, spin_act(sigma, x))
    num = total_linking(link, c1) - total_linking(link, c0) + 8 * (arf_sublink(link, c0) - arf_sublink(link, c1))
    if num % 2:
        raise InconsistencyError(f"odd numerator {num} before halving")
    return (num // 2) % 8


def bp_arf(q: SpinStructure, bp: BoundingPairChain) -> int:
    """Arf term of a bounding pair: nonzero only when both curves are characteristic."""
    return (1 - q.q(bp.d)) * q.q(bp.c1) * q.q(bp.c2)


def beta_closed(w: TwistWord, sigma: SpinStructure, x: Sequence[int]) -> int:
    """Letterwise closed formulas summed by additivity."""
    _check_x(w, sigma, x)
    if not is_level2(w):
        raise InvalidInputError("word is not in the level-2 subgroup")
    tau = spin_act(sigma, x)
    total = 0
    for letter in w.letters:
        c = letter.curve
        if isinstance(c, Nonseparating):
            if letter.exponent % 2:
                raise InvalidInputError("closed formula needs even exponents on nonseparating letters")
            total += (letter.exponent // 2) * (-1) ** sigma.q(c.cls) * evaluate(x, c.cls)
        elif isinstance(c, Separating):
            total += 4 * (arf_form(sigma, c.lattice()) - arf_form(tau, c.lattice()))
        elif isinstance(c, BoundingPairChain):
            total += 4 * (bp_arf(sigma, c) - bp_arf(tau, c))
        else:
            raise InvalidInputError(f"unsupported letter {type(c).__name__}")
    return total % 8


# ------------------------------------------------------------ Birman-Craggs


def _torelli_letters(w: TwistWord) -> None:
    if not is_torelli(w):
        raise InvalidInputError("word is not in the Torelli group")
    for letter in w.letters:
        if isinstance(letter.curve, Nonseparating):
            raise InvalidInputError("Birman-Craggs evaluation takes separating and bounding-pair letters")


def bc_mu(w: TwistWord, conv: Conventions = FROZEN) -> int:
    """Johnson's closed forms with q(x) = seifert(x, x) mod 2."""
    _torelli_letters(w)
    q0 = SpinStructure(tuple(q_seifert(e, conv) for e in _basis(w.genus)))
    total = 0
    for letter in w.letters:
        c = letter.curve
        if isinstance(c, Separating):
            total += arf_form(q0, c.lattice())
        elif seifert(c.d, c.d, conv) % 2 == 0:
            total += q_seifert(c.c1, conv) * q_seifert(c.c2, conv)
    return total % 2


def eta(g: int, conv: Conventions = FROZEN) -> SpinStructure:
    """The spin structure with all svals zero."""
    return SpinStructure.from_svals((0,) * (2 * g), conv)


def bc_mu_link(w: TwistWord, conv: Conventions = FROZEN) -> int:
    """Rochlin invariant of the mapping-torus link with theta(eta), divided by 8."""
    _torelli_letters(w)
    link = build_mapping_torus_link(w, conv)
    r = rochlin(link, characteristic_sublink(link, eta(w.genus, conv)))
    if r % 8:
        raise InconsistencyError(f"Torelli word gave mu = {r}, not a multiple of 8")
    return (r // 8) % 2


# --------------------------------------------------------- transport by f


def _basis(g: int) -> list[Vec]:
    n = 2 * g
    return [tuple(int(k == j) for k in range(n)) for j in range(n)]


def pullback_spin(sigma: SpinStructure, f: TwistWord) -> SpinStructure:
    """f* sigma, whose quadratic form is q_sigma composed with f_*."""
    m = word_action(f)
    return SpinStructure(tuple(sigma.q(apply_matrix(m, e)) for e in _basis(f.genus)))


def pullback_cohomology(x: Sequence[int], f: TwistWord) -> Vec:
    m = word_action(f)
    return tuple(evaluate(x, apply_matrix(m, e)) for e in _basis(f.genus))


def transport_letter(letter: Letter, f: TwistWord) -> Letter:
    """The conjugate f t f^{-1}, represented by the image curve."""
    m = word_action(f)
    c = letter.curve
    if isinstance(c, Nonseparating):
        curve = Nonseparating(apply_matrix(m, c.cls))
    elif isinstance(c, Separating):
        pairs = tuple((apply_matrix(m, a), apply_matrix(m, b)) for a, b in c.lattice())
        curve = Separating(c.handles, c.genus, pairs)
    else:
        curve = BoundingPairChain(apply_matrix(m, c.c1), apply_matrix(m, c.c2), apply_matrix(m, c.c3))
    return Letter(curve, letter.exponent)


def corollary_relation_check(
    w: TwistWord, sigma: SpinStructure, x: Sequence[int], f: TwistWord, g: TwistWord, conv: Conventions = FROZEN
) -> bool:
    """beta_{sigma,x}(w) read in Z/2 against mu(f w f^-1) - mu(g w g^-1).

    Requires sigma = f* eta and sigma + x = g* eta.
    """
    if len(w) != 1 or isinstance(w.letters[0].curve, Nonseparating):
        raise InvalidInputError("corollary check takes a single separating or bounding-pair letter")
    e = eta(w.genus, conv)
    tau = spin_act(sigma, x)
    q_arf = lambda s: arf_form(s, [(a, b) for a, b in _handle_basis(w.genus)])
    if q_arf(sigma) != q_arf(e) or pullback_spin(e, f) != sigma:
        raise InvalidInputError("sigma is not f* eta for the supplied f")
    if q_arf(tau) != q_arf(e) or pullback_spin(e, g) != tau:
        raise InvalidInputError("sigma + x is not g* eta for the supplied g")
    beta = beta_link(w, sigma, x, conv)
    if beta not in (0, 4):
        raise InconsistencyError(f"Torelli beta value {beta} is not in {{0, 4}}")
    letter = w.letters[0]
    mu_f = bc_mu(TwistWord(w.genus, (transport_letter(letter, f),)), conv)
    mu_g = bc_mu(TwistWord(w.genus, (transport_letter(letter, g),)), conv)
    return beta // 4 == (mu_f - mu_g) % 2


def _handle_basis(g: int):
    b = _basis(g)
    return [(b[2 * i], b[2 * i + 1]) for i in range(g)]


# -------------------------------------------------------------- calibration


@dataclass
class ConventionReport:
    candidates: int
    beta_survivors: list[Conventions]
    structural_survivors: list[Conventions]
    survivors: list[Conventions]
    chosen: Conventions | None
    matches_frozen: bool
    generators_checked: int
    evaluations: int
    seconds: float
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "candidates": self.candidates,
            "beta_survivors": [c.as_dict() for c in self.beta_survivors],
            "structural_survivors": [c.as_dict() for c in self.structural_survivors],
            "survivors": [c.as_dict() for c in self.survivors],
            "chosen": None if self.chosen is None else self.chosen.as_dict(),
            "matches_frozen": self.matches_frozen,
            "generators_checked": self.generators_checked,
            "evaluations": self.evaluations,
            "seconds": round(self.seconds, 3),
            "notes": self.notes,
        }


def squared_generator_pool(g: int, bound: int = 2) -> list[Letter]:
    out = []
    for cls in itertools.product(range(-bound, bound + 1), repeat=2 * g):
        if any(cls) and is_primitive(cls):
            out.extend(Letter(Nonseparating(cls), e) for e in (2, -2))
    return out


def structural_ok(conv: Conventions, genera: Sequence[int] = (1, 2)) -> bool:
    """Module invariants: V - V^T = J, and a positive separating twist has framing -1."""
    for g in genera:
        if not intersection_matrix_ok(g, conv):
            return False
    sep = TwistWord(2, (Letter(Separating((1,), 2), 1),))
    link = build_mapping_torus_link(sep, conv)
    return int(link.linking[-1, -1]) == -1


def _agrees(conv: Conventions, letters: Sequence[Letter], g: int, closed: dict) -> tuple[bool, int]:
    spins = SpinStructure.all(g)
    n = len(spins)
    evals = 0
    for letter in letters:
        w = TwistWord(g, (letter,))
        link = build_mapping_torus_link(w, conv)
        cc, arf = [], []
        try:
            for s in spins:
                c = characteristic_sublink(link, s)
                cc.append(total_linking(link, c))
                arf.append(arf_sublink(link, c))
        except InconsistencyError:
            return False, evals
        table = closed[letter]
        for k in range(n):
            for xm in range(n):
                num = cc[k ^ xm] - cc[k] + 8 * (arf[k] - arf[k ^ xm])
                evals += 1
                if num % 2 or (num // 2) % 8 != table[k][xm]:
                    return False, evals
    return True, evals


def calibrate_conventions(genera: Sequence[int] = (1, 2), bound: int = 2, strict: bool = True) -> ConventionReport:
    """Search the 16 convention assignments.

    beta agreement over all squared generators, spins and x is the primary
    filter; the SurfaceModel invariant V - V^T = J and the separating framing -1
    are applied as structural filters.  Raises unless exactly one assignment
    survives both.
    """
    t0 = time.perf_counter()
    pools = {g: squared_generator_pool(g, bound) for g in genera}
    closed: dict[int, dict] = {}
    for g, letters in pools.items():
        spins = SpinStructure.all(g)
        xs = [s.qvals for s in spins]  # bit patterns double as x in the same index order
        closed[g] = {
            letter: [[beta_closed(TwistWord(g, (letter,)), s, x) for x in xs] for s in spins]
            for letter in letters
        }
    cands = all_conventions()
    beta_ok, struct_ok = [], []
    evals = 0
    for conv in cands:
        good = True
        for g, letters in pools.items():
            ok, k = _agrees(conv, letters, g, closed[g])
            evals += k
            if not ok:
                good = False
                break
        if good:
            beta_ok.append(conv)
        if structural_ok(conv, genera):
            struct_ok.append(conv)
    both = [c for c in beta_ok if c in struct_ok]
    notes = []
    if len(beta_ok) > 1:
        notes.append(
            f"{len(beta_ok)} assignments agree on beta; they differ only in the Seifert transpose, "
            "which beta cannot see and V - V^T = J fixes"
        )
    chosen = both[0] if len(both) == 1 else None
    report = ConventionReport(
        candidates=len(cands),
        beta_survivors=beta_ok,
        structural_survivors=struct_ok,
        survivors=both,
        chosen=chosen,
        matches_frozen=chosen == FROZEN,
        generators_checked=sum(len(v) for v in pools.values()),
        evaluations=evals,
        seconds=time.perf_counter() - t0,
        notes=notes,
    )
    if strict and len(both) != 1:
        raise InconsistencyError(f"calibration left {len(both)} assignments")
    return report

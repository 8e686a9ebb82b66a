"""Command-line front end.  Exit codes: 0 ok, 1 verification failure, 2 usage, 3 internal inconsistency."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from .dsl import parse_word
from .errors import InvalidInputError, SpinSurgeryError, VerificationError
from .homology import SpinStructure, parse_bits

MAX_BUILD_GENUS = 6
MAX_REPORT_GENUS = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse already exits 2; keep the JSON error shape
        self.print_usage(sys.stderr)
        print(json.dumps({"error": "usage", "message": message}), file=sys.stderr)
        raise SystemExit(2)


def _genus(limit: int):
    def check(text: str) -> int:
        try:
            g = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"genus must be an integer, got {text!r}")
        if not 1 <= g <= limit:
            raise argparse.ArgumentTypeError(f"genus must lie in 1..{limit}")
        return g

    return check


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spinsurgery", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("eval-sato", help="evaluate beta_{sigma,x} on a level-2 word")
    s.add_argument("--genus", type=_genus(MAX_BUILD_GENUS), required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--spin", required=True, help="q_sigma on the basis, e.g. 0010")
    s.add_argument("--x", required=True, help="cohomology class as values on the basis")
    s.add_argument("--route", choices=("link", "closed", "algebra", "both"), default="link")
    s.add_argument("--trace", action="store_true")

    s = sub.add_parser("eval-bc", help="evaluate the Birman-Craggs mu on a Torelli word")
    s.add_argument("--genus", type=_genus(MAX_BUILD_GENUS), required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--route", choices=("closed", "link", "both"), default="closed")
    s.add_argument("--trace", action="store_true")

    s = sub.add_parser("build-link", help="emit the framed link of a word as JSON")
    s.add_argument("--genus", type=_genus(MAX_BUILD_GENUS), required=True)
    s.add_argument("--word", required=True)

    s = sub.add_parser("rochlin", help="combinatorial Rochlin invariant of a JSON link")
    s.add_argument("--link", required=True, help="path to a JSON link, or - for stdin")
    s.add_argument("--spin", required=True)
    s.add_argument("--membership", help="explicit sublink bit-string over component ids")
    s.add_argument("--trace", action="store_true")

    s = sub.add_parser("abelianize", help="structure of the level-2 abelianization")
    s.add_argument("--genus", type=_genus(MAX_REPORT_GENUS), required=True)
    s.add_argument("--spin")
    s.add_argument("--torelli", action="store_true", help="also report the Torelli image")
    s.add_argument("--limit", type=int, help="cap on enumerated chains")

    s = sub.add_parser("verify", help="run invariant suites")
    s.add_argument("--suite", default="all",
                   choices=("all", "homology", "mapping", "surgery", "invariants", "homomorphism", "algebra", "kirby"))
    s.add_argument("--genus", type=_genus(MAX_REPORT_GENUS), default=2)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int)

    s = sub.add_parser("calibrate", help="search the convention space and print the frozen choice")
    s.add_argument("--bound", type=int, default=2)
    return p


def _spin(text: str, g: int) -> SpinStructure:
    return SpinStructure(parse_bits(text, 2 * g))


def _cmd_eval_sato(a) -> int:
    from .algebra import beta_algebra, phi_eval
    from .homology import pd
    from .homomorphisms import beta_closed, beta_link, beta_link_trace

    w = parse_word(a.word, a.genus)
    sigma = _spin(a.spin, a.genus)
    x = parse_bits(a.x, 2 * a.genus)
    values = {}
    trace = None
    if a.route in ("link", "both"):
        if a.trace:
            trace = beta_link_trace(w, sigma, x)
            values["link"] = trace["value"]
        else:
            values["link"] = beta_link(w, sigma, x)
    if a.route in ("closed", "both"):
        values["closed"] = beta_closed(w, sigma, x)
    if a.route in ("algebra", "both"):
        values["algebra"] = phi_eval(beta_algebra(w, sigma), sigma, pd(x))
    if len(set(values.values())) != 1:
        print(json.dumps({"error": "route disagreement", "values": values}), file=sys.stderr)
        return 1
    print(next(iter(values.values())))
    if a.trace:
        print(json.dumps({"routes": values, "trace": trace}, default=str))
    return 0


def _cmd_eval_bc(a) -> int:
    from .homomorphisms import bc_mu, bc_mu_link

    w = parse_word(a.word, a.genus)
    values = {}
    if a.route in ("closed", "both"):
        values["closed"] = bc_mu(w)
    if a.route in ("link", "both"):
        values["link"] = bc_mu_link(w)
    if len(set(values.values())) != 1:
        print(json.dumps({"error": "route disagreement", "values": values}), file=sys.stderr)
        return 1
    print(next(iter(values.values())))
    if a.trace:
        print(json.dumps({"routes": values}))
    return 0


def _cmd_build_link(a) -> int:
    from .surgery import build_mapping_torus_link

    print(build_mapping_torus_link(parse_word(a.word, a.genus)).dumps())
    return 0


def _cmd_rochlin(a) -> int:
    from .invariants import arf_sublink, rochlin, signature_exact, total_linking
    from .surgery import CharacteristicSublink, FramedLink, characteristic_sublink, is_characteristic

    try:
        raw = sys.stdin.read() if a.link == "-" else open(a.link).read()
        link = FramedLink.from_json(json.loads(raw))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InvalidInputError(f"cannot read link: {exc}") from exc
    sigma = _spin(a.spin, link.genus)
    if a.membership:
        bits = tuple(int(ch) for ch in a.membership.strip())
        if len(bits) != len(link) or any(b not in (0, 1) for b in bits):
            raise InvalidInputError(f"membership must be a bit-string of length {len(link)}")
        if not is_characteristic(link.linking, bits):
            raise InvalidInputError("membership is not characteristic")
        sub = CharacteristicSublink(bits, sigma)
    else:
        sub = characteristic_sublink(link, sigma)
    print(rochlin(link, sub))
    if a.trace:
        print(json.dumps({
            "membership": sub.bits(),
            "signature": signature_exact(link.linking),
            "cc": total_linking(link, sub),
            "arf": arf_sublink(link, sub),
        }))
    return 0


def _cmd_abelianize(a) -> int:
    from .algebra import abelianization_report, torelli_image_report

    sigma = _spin(a.spin, a.genus) if a.spin else SpinStructure.zero(a.genus)
    report = abelianization_report(a.genus, sigma)
    out = {"abelianization": report.as_dict()}
    ok = report.ok
    if a.torelli:
        if a.genus < 2:
            raise InvalidInputError("the Torelli image report needs genus 2 or 3")
        tr = torelli_image_report(a.genus, sigma, a.limit)
        out["torelli_image"] = tr.as_dict()
        ok &= tr.all_two_torsion and tr.special_ok
    print(json.dumps(out, indent=2))
    return 0 if ok else 1


def _cmd_verify(a) -> int:
    from .sampling import resolve_seed
    from .verify import run_suite

    seed = resolve_seed(a.seed)
    results = run_suite(a.suite, a.genus, a.samples, seed)
    for r in results:
        line = f"{'PASS' if r.ok else 'FAIL'}  {r.name} ({r.cases} cases)"
        print(line + (f": {r.detail}" if r.detail else ""))
    print(json.dumps({"seed": seed, "passed": sum(r.ok for r in results), "total": len(results)}))
    return 0 if all(r.ok for r in results) else 1


def _cmd_calibrate(a) -> int:
    from .homomorphisms import calibrate_conventions

    report = calibrate_conventions(bound=a.bound, strict=False)
    print(json.dumps(report.as_dict(), indent=2))
    if len(report.survivors) != 1:
        raise VerificationError(f"calibration left {len(report.survivors)} assignments")
    return 0 if report.matches_frozen else 1


COMMANDS = {
    "eval-sato": _cmd_eval_sato,
    "eval-bc": _cmd_eval_bc,
    "build-link": _cmd_build_link,
    "rochlin": _cmd_rochlin,
    "abelianize": _cmd_abelianize,
    "verify": _cmd_verify,
    "calibrate": _cmd_calibrate,
}


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except SpinSurgeryError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

"""Global convention choices fixed by calibration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class Conventions:
    """One point in the finite convention search space.

    Attributes:
        seifert_transpose: use the transposed per-handle Seifert block [[0,0],[1,0]].
        dual_linking: twist curves link basis components through J·c instead of c.
        sval_offset: svals = qvals + offset on basis classes.
        twist_framing_sign: framing of a positive twist is seifert(c,c) + this sign.
    """

    seifert_transpose: bool = False
    dual_linking: bool = False
    sval_offset: int = 0
    twist_framing_sign: int = -1

    def label(self) -> str:
        return (
            f"transpose={int(self.seifert_transpose)} dual={int(self.dual_linking)} "
            f"offset={self.sval_offset} eps={self.twist_framing_sign:+d}"
        )

    def as_dict(self) -> dict:
        return {
            "seifert_transpose": self.seifert_transpose,
            "dual_linking": self.dual_linking,
            "sval_offset": self.sval_offset,
            "twist_framing_sign": self.twist_framing_sign,
        }


# Frozen after calibration (see homomorphisms.calibrate_conventions).
FROZEN = Conventions()


def all_conventions() -> list[Conventions]:
    """All 16 assignments, in a fixed order."""
    return [
        Conventions(t, d, o, e)
        for t, d, o, e in itertools.product((False, True), (False, True), (0, 1), (-1, 1))
    ]

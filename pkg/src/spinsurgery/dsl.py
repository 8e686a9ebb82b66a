"""Word DSL: `T[1,0,0,0]^2`, `SEP{1}`, `BP([..],[..],[..])`; leftmost letter acts last."""

from __future__ import annotations

import re

from .errors import InvalidInputError, ParseError
from .mapping import BoundingPairChain, Letter, Nonseparating, Separating, TwistWord

_INT_LIST = r"\[\s*-?\d+(?:\s*,\s*-?\d+)*\s*\]"
_EXP = r"(?:\s*\^\s*(?P<exp>[+-]?\d+))?"
_LETTER = re.compile(
    rf"T\s*(?P<cls>{_INT_LIST}){_EXP}"
    rf"|SEP\s*\{{(?P<handles>\s*\d+(?:\s*,\s*\d+)*\s*)\}}{_EXP.replace('exp', 'sexp')}"
    rf"|BP\s*\(\s*(?P<c1>{_INT_LIST})\s*,\s*(?P<c2>{_INT_LIST})\s*,\s*(?P<c3>{_INT_LIST})\s*\){_EXP.replace('exp', 'bexp')}"
)


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.strip()[1:-1].split(","))


def _letter_from_match(m: re.Match, g: int, pos: int) -> Letter:
    n = 2 * g
    try:
        if m.group("cls") is not None:
            cls = _ints(m.group("cls"))
            if len(cls) != n:
                raise ParseError(f"class has length {len(cls)}, expected {n}", pos)
            return Letter(Nonseparating(cls), int(m.group("exp") or 1))
        if m.group("handles") is not None:
            hs = tuple(int(t) for t in m.group("handles").split(","))
            return Letter(Separating(hs, g), int(m.group("sexp") or 1))
        cs = [_ints(m.group(k)) for k in ("c1", "c2", "c3")]
        if any(len(c) != n for c in cs):
            raise ParseError(f"chain class length must be {n}", pos)
        return Letter(BoundingPairChain(*cs), int(m.group("bexp") or 1))
    except ParseError:
        raise
    except InvalidInputError as exc:
        raise ParseError(str(exc), pos) from exc


def parse_word(text: str, g: int) -> TwistWord:
    """Parse the DSL into a validated TwistWord."""
    letters: list[Letter] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _LETTER.match(text, pos)
        if m is None:
            raise ParseError(f"unrecognised letter starting {text[pos:pos + 12]!r}", pos)
        end = m.end()
        if end < len(text) and not text[end].isspace():
            raise ParseError("letters must be separated by whitespace", end)
        letters.append(_letter_from_match(m, g, pos))
        pos = end
    return TwistWord(g, tuple(letters))


def parse_letter(text: str, g: int) -> Letter:
    w = parse_word(text, g)
    if len(w) != 1:
        raise ParseError(f"expected exactly one letter in {text!r}")
    return w.letters[0]


def _fmt(v) -> str:
    return "[" + ",".join(str(int(c)) for c in v) + "]"


def format_letter(letter: Letter) -> str:
    c = letter.curve
    exp = "" if letter.exponent == 1 else f"^{letter.exponent}"
    if isinstance(c, Nonseparating):
        return f"T{_fmt(c.cls)}^{letter.exponent}"
    if isinstance(c, Separating):
        if c.pairs is not None:
            raise InvalidInputError("transported separating curves have no DSL form")
        return "SEP{" + ",".join(map(str, c.handles)) + "}" + exp
    return f"BP({_fmt(c.c1)},{_fmt(c.c2)},{_fmt(c.c3)}){exp}"


def format_word(w: TwistWord) -> str:
    return " ".join(format_letter(l) for l in w.letters)

"""Text form of model specifications.

Grammar::

    spec    := factor ('x' factor)*
    factor  := name [ '(' key '=' value (',' key '=' value)* ')' ]
    name    := 'R' int | 'E' int | 'S' int | 'CP' int | 'Berger'

Examples: ``S3(r=1)xR2``, ``Berger(n=3,delta=11/10)``, ``CP2xR2``, ``E4``.
Numbers are read exactly where possible (``1.1`` becomes ``11/10``).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import SpecParseError
from .model_spaces import BergerSphere, Euclidean, FubiniStudyCP, ModelSpec, Product, RoundSphere, factors_of
from .profiles import format_number

_NAME = re.compile(r"(Berger|CP|[RES])(\d*)$")

_ALLOWED = {
    "R": set(), "E": set(), "S": {"r"}, "CP": {"scale"}, "Berger": {"n", "delta"},
}


def _split_factors(text: str) -> list[tuple[str, int]]:
    """Split on 'x' at parenthesis depth 0, keeping each piece's offset."""
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecParseError("unbalanced ')'", ")", i)
        elif ch == "x" and depth == 0:
            pieces.append((text[start:i], start))
            start = i + 1
    if depth != 0:
        raise SpecParseError(f"unclosed '(' in {text!r}", "(", text.rfind("("))
    pieces.append((text[start:], start))
    return pieces


def _value(tok: str, pos: int):
    try:
        return Fraction(tok)
    except ValueError:
        raise SpecParseError(f"bad number {tok!r}", tok, pos) from None


def _parse_factor(piece: str, offset: int) -> ModelSpec:
    if not piece:
        raise SpecParseError("empty factor", "", offset)
    head, paren, rest = piece.partition("(")
    match = _NAME.match(head)
    if not match:
        raise SpecParseError(f"unknown factor {head!r}", head, offset)
    kind, digits = match.groups()
    params: dict[str, Fraction] = {}
    if paren:
        if not rest.endswith(")"):
            raise SpecParseError("expected ')'", piece, offset)
        body = rest[:-1]
        pos = offset + len(head) + 1
        for item in body.split(","):
            key, eq, val = item.partition("=")
            key = key.strip()
            if not eq or not key:
                raise SpecParseError(f"expected key=value, got {item!r}", item, pos)
            if key not in _ALLOWED[kind]:
                raise SpecParseError(f"unknown parameter {key!r} for {kind}", key, pos)
            params[key] = _value(val.strip(), pos + len(item) - len(val))
            pos += len(item) + 1
    try:
        if kind == "Berger":
            if digits:
                raise SpecParseError(f"Berger takes n as a parameter, got {head!r}", head, offset)
            if "n" not in params or "delta" not in params:
                raise SpecParseError("Berger needs n and delta", piece, offset)
            if params["n"].denominator != 1:
                raise SpecParseError(f"n must be an integer in {piece!r}", piece, offset)
            return BergerSphere(int(params["n"]), params["delta"])
        if not digits:
            raise SpecParseError(f"missing dimension after {kind!r}", head, offset)
        dim = int(digits)
        if kind in ("R", "E"):
            return Euclidean(dim)
        if kind == "S":
            return RoundSphere(dim, params.get("r", Fraction(1)))
        return FubiniStudyCP(dim, params.get("scale", Fraction(1)))
    except ValueError as exc:
        if isinstance(exc, SpecParseError):
            raise
        raise SpecParseError(str(exc), piece, offset) from None


def parse_spec(text: str) -> ModelSpec:
    """Parse a model string; products with one factor collapse to that factor."""
    if not isinstance(text, str) or not text.strip():
        raise SpecParseError("empty model specification", "", 0)
    if text != text.strip() or " " in text:
        pos = next(i for i, ch in enumerate(text) if ch.isspace())
        raise SpecParseError("whitespace", " ", pos)
    factors = [_parse_factor(piece, off) for piece, off in _split_factors(text)]
    return factors[0] if len(factors) == 1 else Product(tuple(factors))


def format_spec(spec: ModelSpec) -> str:
    parts = []
    for f in factors_of(spec):
        if isinstance(f, Euclidean):
            parts.append(f"R{f.m}")
        elif isinstance(f, RoundSphere):
            parts.append(f"S{f.m}(r={format_number(f.radius)})")
        elif isinstance(f, BergerSphere):
            parts.append(f"Berger(n={f.n},delta={format_number(f.delta)})")
        elif isinstance(f, FubiniStudyCP):
            parts.append(f"CP{f.n}" if f.scale == 1 else f"CP{f.n}(scale={format_number(f.scale)})")
        else:
            raise TypeError(f"not a model spec: {f!r}")
    return "x".join(parts)

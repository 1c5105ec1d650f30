"""Propositional formulas: AST, parser, and printer.

Connectives from tightest to loosest: ``~``, ``/\\``, ``\\/``, ``->``.
Implication associates to the right, the lattice connectives to the left.
Negation is definitional: ``~p`` is stored as ``p -> False`` and there is no
separate AST node for it, so the two spellings are structurally equal.

All offsets reported by the tokenizer and parser are byte offsets into the
UTF-8 encoding of the input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "Prop", "Atom", "Truth", "Falsity", "And", "Or", "Imp",
    "TRUE", "FALSE", "Not", "is_negation",
    "Token", "ParseError", "tokenize", "parse_prop", "parse_prop_tokens",
    "pretty", "RESERVED_WORDS",
]

RESERVED_WORDS = frozenset(
    {"True", "False", "Lemma", "Parameter", "Proof", "Qed", "Check", "Require", "Import"}
)


class Prop:
    """Base class for formula nodes; every instance is immutable."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Prop):
    name: str


@dataclass(frozen=True)
class Truth(Prop):
    pass


@dataclass(frozen=True)
class Falsity(Prop):
    pass


@dataclass(frozen=True)
class And(Prop):
    left: Prop
    right: Prop


@dataclass(frozen=True)
class Or(Prop):
    left: Prop
    right: Prop


@dataclass(frozen=True)
class Imp(Prop):
    left: Prop
    right: Prop


TRUE = Truth()
FALSE = Falsity()


def Not(p: Prop) -> Prop:
    return Imp(p, FALSE)


def is_negation(p: Prop) -> bool:
    return isinstance(p, Imp) and p.right == FALSE


class ParseError(Exception):
    """Syntax error with the byte span of the offending token."""

    def __init__(self, message: str, start: int, end: int):
        super().__init__(f"{message} at offset {start}")
        self.message = message
        self.start = start
        self.end = end


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "~" | "/\\" | "\\/" | "->" | "(" | ")" | ":" | "."
    text: str
    start: int
    end: int


_WS = frozenset(b" \t\r\n\f\v")
_IDENT = re.compile(rb"[A-Za-z_][A-Za-z0-9_']*")
_TWO_BYTE = (b"/\\", b"\\/", b"->")
_ONE_BYTE = (b"~", b"(", b")", b":", b".")


def tokenize(data: bytes) -> list[Token]:
    """Tokenize formula/command text; raises ParseError on a stray byte."""
    toks: list[Token] = []
    pos, n = 0, len(data)
    while pos < n:
        if data[pos] in _WS:
            pos += 1
            continue
        m = _IDENT.match(data, pos)
        if m:
            toks.append(Token("ident", m.group().decode("ascii"), pos, m.end()))
            pos = m.end()
            continue
        two = data[pos:pos + 2]
        if two in _TWO_BYTE:
            t = two.decode("ascii")
            toks.append(Token(t, t, pos, pos + 2))
            pos += 2
            continue
        one = data[pos:pos + 1]
        if one in _ONE_BYTE:
            t = one.decode("ascii")
            toks.append(Token(t, t, pos, pos + 1))
            pos += 1
            continue
        shown = data[pos:pos + 1].decode("utf-8", "replace")
        raise ParseError(f"unexpected character {shown!r}", pos, pos + 1)
    return toks


def _peek(toks: list[Token], i: int, eob: int) -> Token:
    if i < len(toks):
        return toks[i]
    return Token("eof", "", eob, eob)


def parse_prop_tokens(toks: list[Token], i: int, eob: int) -> tuple[Prop, int]:
    """Parse one formula starting at token index i; returns (formula, next index)."""
    return _parse_imp(toks, i, eob)


def _parse_imp(toks, i, eob):
    left, i = _parse_or(toks, i, eob)
    if _peek(toks, i, eob).kind == "->":
        right, i = _parse_imp(toks, i + 1, eob)
        return Imp(left, right), i
    return left, i


def _parse_or(toks, i, eob):
    left, i = _parse_and(toks, i, eob)
    while _peek(toks, i, eob).kind == "\\/":
        right, i = _parse_and(toks, i + 1, eob)
        left = Or(left, right)
    return left, i


def _parse_and(toks, i, eob):
    left, i = _parse_neg(toks, i, eob)
    while _peek(toks, i, eob).kind == "/\\":
        right, i = _parse_neg(toks, i + 1, eob)
        left = And(left, right)
    return left, i


def _parse_neg(toks, i, eob):
    if _peek(toks, i, eob).kind == "~":
        inner, i = _parse_neg(toks, i + 1, eob)
        return Not(inner), i
    return _parse_atom(toks, i, eob)


def _parse_atom(toks, i, eob):
    t = _peek(toks, i, eob)
    if t.kind == "ident":
        if t.text == "True":
            return TRUE, i + 1
        if t.text == "False":
            return FALSE, i + 1
        if t.text in RESERVED_WORDS:
            raise ParseError(f"reserved word {t.text!r}", t.start, t.end)
        return Atom(t.text), i + 1
    if t.kind == "(":
        inner, i = _parse_imp(toks, i + 1, eob)
        closing = _peek(toks, i, eob)
        if closing.kind != ")":
            raise ParseError("expected ')'", closing.start, closing.end)
        return inner, i + 1
    raise ParseError("expected a proposition", t.start, t.end)


def parse_prop(src: str) -> Prop:
    """Parse a complete formula; trailing tokens are an error."""
    data = src.encode("utf-8")
    toks = tokenize(data)
    prop, i = _parse_imp(toks, 0, len(data))
    if i < len(toks):
        t = toks[i]
        raise ParseError(f"unexpected token {t.text!r}", t.start, t.end)
    return prop


_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_NOT = 1, 2, 3, 4


def pretty(p: Prop) -> str:
    """Print with minimal parentheses; parse(pretty(p)) == p."""
    return _render(p, 0)


def _render(p: Prop, min_prec: int) -> str:
    if is_negation(p):
        s = "~" + _render(p.left, _PREC_NOT)  # type: ignore[attr-defined]
        return s if _PREC_NOT >= min_prec else f"({s})"
    if isinstance(p, Atom):
        return p.name
    if isinstance(p, Truth):
        return "True"
    if isinstance(p, Falsity):
        return "False"
    if isinstance(p, And):
        s = _render(p.left, _PREC_AND) + " /\\ " + _render(p.right, _PREC_AND + 1)
        return s if _PREC_AND >= min_prec else f"({s})"
    if isinstance(p, Or):
        s = _render(p.left, _PREC_OR) + " \\/ " + _render(p.right, _PREC_OR + 1)
        return s if _PREC_OR >= min_prec else f"({s})"
    if isinstance(p, Imp):
        s = _render(p.left, _PREC_IMP + 1) + " -> " + _render(p.right, _PREC_IMP)
        return s if _PREC_IMP >= min_prec else f"({s})"
    raise TypeError(f"not a formula: {p!r}")

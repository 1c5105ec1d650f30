"""Vernacular sentences: the command layer the engine executes.

Each sentence parses to exactly one command. Declaration keywords are
capitalized (Lemma, Parameter, Proof, Qed, Check, Require Import); tactic
names are lowercase. Parse errors carry the byte span of the offending token
relative to the sentence start.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .prop import (
    ParseError,
    Prop,
    RESERVED_WORDS,
    Token,
    parse_prop_tokens,
    tokenize,
)

__all__ = [
    "Lemma", "Parameter", "ProofMarker", "Qed", "Check", "RequireImport",
    "TacticCmd", "Vernac",
    "Tactic", "Intro", "Exact", "Assumption", "Split", "Left", "Right",
    "Apply", "Destruct", "Exfalso", "Contradiction",
    "TACTIC_NAMES", "parse_vernac",
]


class Tactic:
    __slots__ = ()


@dataclass(frozen=True)
class Intro(Tactic):
    name: Optional[str] = None


@dataclass(frozen=True)
class Exact(Tactic):
    name: str


@dataclass(frozen=True)
class Assumption(Tactic):
    pass


@dataclass(frozen=True)
class Split(Tactic):
    pass


@dataclass(frozen=True)
class Left(Tactic):
    pass


@dataclass(frozen=True)
class Right(Tactic):
    pass


@dataclass(frozen=True)
class Apply(Tactic):
    name: str


@dataclass(frozen=True)
class Destruct(Tactic):
    name: str


@dataclass(frozen=True)
class Exfalso(Tactic):
    pass


@dataclass(frozen=True)
class Contradiction(Tactic):
    pass


@dataclass(frozen=True)
class Lemma:
    name: str
    statement: Prop


@dataclass(frozen=True)
class Parameter:
    name: str
    statement: Prop


@dataclass(frozen=True)
class ProofMarker:
    pass


@dataclass(frozen=True)
class Qed:
    pass


@dataclass(frozen=True)
class Check:
    name: str


@dataclass(frozen=True)
class RequireImport:
    path: tuple[str, ...]


@dataclass(frozen=True)
class TacticCmd:
    tactic: Tactic


Vernac = Union[Lemma, Parameter, ProofMarker, Qed, Check, RequireImport, TacticCmd]

TACTIC_NAMES = frozenset({
    "intro", "exact", "assumption", "split", "left", "right",
    "apply", "destruct", "exfalso", "contradiction",
})


def parse_vernac(text: str) -> Vernac:
    """Parse one terminated sentence into a command."""
    data = text.encode("utf-8")
    if not data.endswith(b"."):
        raise ParseError("sentence must end with '.'", max(len(data) - 1, 0), len(data))
    body = data[:-1]
    eob = len(body)
    toks = tokenize(body)
    if not toks:
        raise ParseError("expected a command", 0, 1)
    head = toks[0]
    if head.kind != "ident":
        raise ParseError("expected a command", head.start, head.end)
    word = head.text
    if word in ("Lemma", "Parameter"):
        return _parse_declaration(word, toks, eob)
    if word == "Proof":
        _expect_end(toks, 1, eob)
        return ProofMarker()
    if word == "Qed":
        _expect_end(toks, 1, eob)
        return Qed()
    if word == "Check":
        name = _expect_name(toks, 1, eob)
        _expect_end(toks, 2, eob)
        return Check(name.text)
    if word == "Require":
        return _parse_require(toks, eob)
    if word in TACTIC_NAMES:
        return TacticCmd(_parse_tactic(word, toks, eob))
    raise ParseError(f"unknown command {word!r}", head.start, head.end)


def _peek(toks: list[Token], i: int, eob: int) -> Token:
    if i < len(toks):
        return toks[i]
    return Token("eof", "", eob, eob)


def _expect_end(toks: list[Token], i: int, eob: int) -> None:
    t = _peek(toks, i, eob)
    if t.kind != "eof":
        raise ParseError(f"unexpected token {t.text!r}", t.start, t.end)


def _expect_name(toks: list[Token], i: int, eob: int) -> Token:
    t = _peek(toks, i, eob)
    if t.kind != "ident":
        raise ParseError("expected identifier", t.start, t.end)
    if t.text in RESERVED_WORDS:
        raise ParseError(f"reserved word {t.text!r}", t.start, t.end)
    return t


def _parse_declaration(word: str, toks: list[Token], eob: int) -> Vernac:
    name = _expect_name(toks, 1, eob)
    colon = _peek(toks, 2, eob)
    if colon.kind != ":":
        raise ParseError("expected ':'", colon.start, colon.end)
    statement, i = parse_prop_tokens(toks, 3, eob)
    _expect_end(toks, i, eob)
    if word == "Lemma":
        return Lemma(name.text, statement)
    return Parameter(name.text, statement)


def _parse_require(toks: list[Token], eob: int) -> RequireImport:
    kw = _peek(toks, 1, eob)
    if kw.kind != "ident" or kw.text != "Import":
        raise ParseError("expected 'Import'", kw.start, kw.end)
    parts = [_expect_name(toks, 2, eob).text]
    i = 3
    while _peek(toks, i, eob).kind == ".":
        parts.append(_expect_name(toks, i + 1, eob).text)
        i += 2
    _expect_end(toks, i, eob)
    return RequireImport(tuple(parts))


def _parse_tactic(word: str, toks: list[Token], eob: int) -> Tactic:
    if word == "intro":
        nxt = _peek(toks, 1, eob)
        if nxt.kind == "eof":
            return Intro()
        name = _expect_name(toks, 1, eob)
        _expect_end(toks, 2, eob)
        return Intro(name.text)
    if word in ("exact", "apply", "destruct"):
        name = _expect_name(toks, 1, eob)
        _expect_end(toks, 2, eob)
        if word == "exact":
            return Exact(name.text)
        if word == "apply":
            return Apply(name.text)
        return Destruct(name.text)
    _expect_end(toks, 1, eob)
    return {
        "assumption": Assumption,
        "split": Split,
        "left": Left,
        "right": Right,
        "exfalso": Exfalso,
        "contradiction": Contradiction,
    }[word]()

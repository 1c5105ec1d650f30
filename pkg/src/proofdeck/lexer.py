"""Sentence lexer: splits script text into terminator-delimited sentences.

A sentence ends at a ``.`` followed by whitespace or end of input. Comments
``(* ... *)`` nest and never terminate a sentence; string literals ``"..."``
(with ``""`` as the escaped quote) shield dots as well. Comment bodies are
scanned only for ``(*``/``*)``: a quote inside a comment is an ordinary byte.

A sentence starts at the first byte that is neither whitespace nor part of a
comment; whitespace and comments before that point are inter-sentence gap.
Comments opened after a sentence has started belong to the sentence.

All offsets are byte offsets into the UTF-8 encoding of the source, and
whitespace means ASCII whitespace; that keeps scanning exact on multi-byte
text. Concatenating the sentences and the gaps between them reconstructs the
source byte for byte.
"""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator

__all__ = ["Sentence", "LexError", "split", "split_prefix", "invalidate_from", "scan"]


@dataclass(frozen=True)
class Sentence:
    text: str
    start: int
    end: int  # one past the terminator


class LexError(Exception):
    """Unterminated construct; offset points at the construct's first byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


_WS = frozenset(b" \t\r\n\f\v")
_SOLID = re.compile(rb"[^ \t\r\n\f\v]")
_COMMENT_DELIM = re.compile(rb"\(\*|\*\)")
_SENTENCE_DELIM = re.compile(rb'\(\*|[."]')
_QUOTE = re.compile(rb'"')


def scan(src: str) -> Iterator[tuple[str, int, int, str]]:
    """Yield ("ws" | "comment" | "sentence", start, end, text) covering src."""
    data = src.encode("utf-8")
    pos, n = 0, len(data)
    while pos < n:
        m = _SOLID.search(data, pos)
        if m is None:
            yield "ws", pos, n, data[pos:n].decode("utf-8")
            return
        if m.start() > pos:
            yield "ws", pos, m.start(), data[pos:m.start()].decode("utf-8")
        pos = m.start()
        if data.startswith(b"(*", pos):
            end = _skip_comment(data, pos)
            yield "comment", pos, end, data[pos:end].decode("utf-8")
        else:
            end = _scan_sentence(data, pos)
            yield "sentence", pos, end, data[pos:end].decode("utf-8")
        pos = end


def _scan_sentence(data: bytes, start: int) -> int:
    pos, n = start, len(data)
    while True:
        m = _SENTENCE_DELIM.search(data, pos)
        if m is None:
            raise LexError("unterminated sentence", start)
        tok = m.group()
        if tok == b".":
            if m.end() >= n or data[m.end()] in _WS:
                return m.end()
            pos = m.end()
        elif tok == b"(*":
            pos = _skip_comment(data, m.start())
        else:
            pos = _skip_string(data, m.start())


def _skip_comment(data: bytes, start: int) -> int:
    depth, pos = 1, start + 2
    while depth:
        m = _COMMENT_DELIM.search(data, pos)
        if m is None:
            raise LexError("unterminated comment", start)
        depth += 1 if m.group() == b"(*" else -1
        pos = m.end()
    return pos


def _skip_string(data: bytes, start: int) -> int:
    pos = start + 1
    while True:
        m = _QUOTE.search(data, pos)
        if m is None:
            raise LexError("unterminated string", start)
        if data[m.end():m.end() + 1] == b'"':
            pos = m.end() + 1
        else:
            return m.end()


def split(src: str) -> list[Sentence]:
    """All sentences of a complete source; raises LexError when it is not."""
    return [Sentence(text, s, e) for kind, s, e, text in scan(src) if kind == "sentence"]


def split_prefix(src: str) -> tuple[list[Sentence], int]:
    """Complete sentences plus the offset where the unconsumed remainder starts.

    Never raises: an unterminated construct simply ends the complete prefix.
    """
    out: list[Sentence] = []
    end = 0
    try:
        for kind, s, e, text in scan(src):
            if kind == "sentence":
                out.append(Sentence(text, s, e))
                end = e
    except LexError:
        pass
    return out, end


def invalidate_from(sentences: list[Sentence], edit_offset: int) -> int:
    """Index of the first sentence whose span ends at or after edit_offset.

    Returns len(sentences) when the edit is past every sentence; sentences at
    smaller indices are unaffected by an edit at that offset.
    """
    ends = [s.end for s in sentences]
    return bisect_left(ends, edit_offset)

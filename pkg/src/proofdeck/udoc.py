"""Literate document generator.

Turns an annotated proof script into a self-contained HTML page: doc
comments `(** ... *)` become prose, everything else becomes code snippets
wired to the interactive loader. Code between `(* begin static *)` and
`(* end static *)` renders read-only.
"""

from __future__ import annotations

import html
import json
from dataclasses import dataclass
from typing import Union

from . import lexer

__all__ = [
    "Text", "InlineCode", "Heading", "Paragraph", "Prose", "Code",
    "DocError", "chunk", "emit_html", "render_doc",
]


@dataclass(frozen=True)
class Text:
    text: str


@dataclass(frozen=True)
class InlineCode:
    text: str


Inline = Union[Text, InlineCode]


@dataclass(frozen=True)
class Heading:
    level: int
    inline: tuple[Inline, ...]


@dataclass(frozen=True)
class Paragraph:
    inline: tuple[Inline, ...]


Block = Union[Heading, Paragraph]


@dataclass(frozen=True)
class Prose:
    blocks: tuple[Block, ...]


@dataclass(frozen=True)
class Code:
    element_id: str
    text: str
    editable: bool


DocChunk = Union[Prose, Code]


class DocError(Exception):
    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.message = message
        self.offset = offset


def _is_doc_comment(text: str) -> bool:
    return text.startswith("(**")


def _directive(text: str) -> str | None:
    inner = text[2:-2].strip()
    if inner in ("begin static", "end static"):
        return inner
    return None


def chunk(src: str) -> tuple[DocChunk, ...]:
    """Split a script into alternating prose and code chunks."""
    chunks: list[DocChunk] = []
    run: list[tuple[int, int]] = []
    static = False
    static_at = 0
    snippet = 0
    data = src.encode("utf-8")

    def flush() -> None:
        nonlocal snippet
        if not run:
            return
        start = run[0][0]
        end = run[-1][1]
        text = data[start:end].decode("utf-8")
        chunks.append(Code(f"pd-snippet-{snippet}", text, not static))
        snippet += 1
        run.clear()

    for kind, start, end, text in lexer.scan(src):
        if kind == "ws":
            continue
        if kind == "comment":
            if _is_doc_comment(text):
                flush()
                blocks = _parse_prose(text[3:-2] if len(text) >= 5 else "")
                if blocks:
                    chunks.append(Prose(blocks))
                continue
            directive = _directive(text)
            if directive == "begin static":
                if static:
                    raise DocError("nested begin static", start)
                flush()
                static = True
                static_at = start
                continue
            if directive == "end static":
                if not static:
                    raise DocError("end static without begin", start)
                flush()
                static = False
                continue
        run.append((start, end))
    flush()
    if static:
        raise DocError("unmatched begin static", static_at)
    return tuple(chunks)


def _parse_prose(body: str) -> tuple[Block, ...]:
    blocks: list[Block] = []
    paragraph: list[str] = []

    def flush_paragraph() -> None:
        if paragraph:
            blocks.append(Paragraph(_parse_inline("\n".join(paragraph))))
            paragraph.clear()

    for raw in body.split("\n"):
        line = raw.strip()
        if not line:
            flush_paragraph()
        elif line.startswith("** "):
            flush_paragraph()
            blocks.append(Heading(2, _parse_inline(line[3:].strip())))
        elif line.startswith("* "):
            flush_paragraph()
            blocks.append(Heading(1, _parse_inline(line[2:].strip())))
        else:
            paragraph.append(line)
    flush_paragraph()
    return tuple(blocks)


def _parse_inline(text: str) -> tuple[Inline, ...]:
    parts: list[Inline] = []
    plain: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        if text[i] == "[":
            depth = 1
            j = i + 1
            while j < n and depth:
                if text[j] == "[":
                    depth += 1
                elif text[j] == "]":
                    depth -= 1
                j += 1
            if depth:
                plain.append(text[i:])
                i = n
            else:
                if plain:
                    parts.append(Text("".join(plain)))
                    plain.clear()
                parts.append(InlineCode(text[i + 1:j - 1]))
                i = j
        else:
            plain.append(text[i])
            i += 1
    if plain:
        parts.append(Text("".join(plain)))
    return tuple(parts)


_PAGE_HEAD = """\
<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>{title}</title>
<style>
body {{ max-width: 50rem; margin: 2rem auto; padding: 0 1rem; font-family: sans-serif; line-height: 1.5; }}
textarea.snippet {{ width: 100%; font-family: monospace; font-size: 0.9rem; border: 1px solid #bbb; padding: 0.5rem; box-sizing: border-box; resize: vertical; }}
pre.snippet {{ background: #f4f4f4; border: 1px solid #ddd; padding: 0.5rem; overflow-x: auto; }}
pre.snippet code {{ font-family: monospace; font-size: 0.9rem; }}
</style>
</head>
<body>
<main id="document">
"""

_PAGE_TAIL = """\
</main>
{loader_script}
<script>
loadProofdeck('./').then(function () {{
  new ProofdeckManager({ids}, {{}});
}});
</script>
</body>
</html>
"""


def _render_inline(inline: tuple[Inline, ...]) -> str:
    out = []
    for part in inline:
        if isinstance(part, InlineCode):
            out.append(f"<code>{html.escape(part.text, quote=True)}</code>")
        else:
            out.append(html.escape(part.text, quote=True))
    return "".join(out)


def emit_html(
    chunks: tuple[DocChunk, ...],
    title: str = "Proof document",
    loader: str = "proofdeck-loader.js",
    loader_source: str | None = None,
) -> str:
    """Render chunks as a complete page.

    loader_source, when given, is inlined verbatim in place of a script
    src reference (the single-file deployment mode).
    """
    body: list[str] = []
    ids: list[str] = []
    for c in chunks:
        if isinstance(c, Prose):
            for block in c.blocks:
                if isinstance(block, Heading):
                    tag = f"h{block.level}"
                    body.append(f"<{tag}>{_render_inline(block.inline)}</{tag}>")
                else:
                    body.append(f"<p>{_render_inline(block.inline)}</p>")
        else:
            ids.append(c.element_id)
            escaped = html.escape(c.text, quote=True)
            eid = html.escape(c.element_id, quote=True)
            if c.editable:
                rows = c.text.count("\n") + 1
                body.append(
                    f'<textarea class="snippet" id="{eid}" rows="{rows}" '
                    f'spellcheck="false">{escaped}</textarea>'
                )
            else:
                body.append(f'<pre class="snippet"><code id="{eid}">{escaped}</code></pre>')
    if loader_source is not None:
        loader_script = f"<script>\n{loader_source}\n</script>"
    else:
        loader_script = f'<script src="{html.escape(loader, quote=True)}"></script>'
    head = _PAGE_HEAD.format(title=html.escape(title, quote=True))
    tail = _PAGE_TAIL.format(loader_script=loader_script, ids=json.dumps(ids))
    return head + "\n".join(body) + ("\n" if body else "") + tail


def render_doc(
    src: str,
    title: str = "Proof document",
    loader: str = "proofdeck-loader.js",
    loader_source: str | None = None,
) -> str:
    return emit_html(chunk(src), title=title, loader=loader, loader_source=loader_source)

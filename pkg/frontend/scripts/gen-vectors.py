"""Exports conformance vectors for the frontend test suite.

The frontend re-implements sentence splitting and the wire codec; these
fixtures pin both to the engine's behavior. Regenerate with:

    python3 frontend/scripts/gen-vectors.py

and commit the result. The files are deterministic for a given seed.
"""

import json
import random
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent.parent
sys.path.insert(0, str(REPO / "tests"))

import gen  # noqa: E402
from proofdeck import lexer  # noqa: E402
from proofdeck.wire import protocol as p  # noqa: E402

OUT = Path(__file__).resolve().parent.parent / "test" / "vectors"

HAND_SOURCES = [
    "",
    ".",
    "Check 1.",
    "Check a. Check b",
    "Lemma a : True. Proof. exact I. Qed.",
    "Check (* inline (* nested *) *) x.",
    'Check "a string with "" a dot. inside".',
    "Check 1.5. Check A.B.C.",
    "(* only a comment *)",
    "(* unterminated",
    'Check "unterminated',
    "Check x.Check y.",
    "Check x.\nCheck y.\n",
    "  \t\n  ",
    "Check ⊢.",
    "Lemma séance : True.",
]


def lexer_vectors(rng: random.Random) -> list[dict]:
    sources = list(HAND_SOURCES)
    for _ in range(400):
        sources.append(gen.compose_source(rng, allow_broken=True))
    vectors = []
    for src in sources:
        vec: dict = {"source": src}
        try:
            vec["split"] = {
                "ok": [[s.text, s.start, s.end] for s in lexer.split(src)]
            }
        except lexer.LexError as e:
            vec["split"] = {"error": {"reason": e.message, "offset": e.offset}}
        sents, end = lexer.split_prefix(src)
        vec["prefix"] = {
            "sentences": [[s.text, s.start, s.end] for s in sents],
            "end": end,
        }
        try:
            vec["segments"] = [list(seg) for seg in lexer.scan(src)]
        except lexer.LexError:
            vec["segments"] = None
        vectors.append(vec)
    return vectors


def wire_vectors(rng: random.Random) -> list[dict]:
    vectors = []
    for _ in range(300):
        vectors.append({"role": "command", "line": p.encode(gen.gen_command(rng))})
    for _ in range(300):
        vectors.append({"role": "answer", "line": p.encode(gen.gen_answer(rng))})
    return vectors


def malformed_vectors(rng: random.Random) -> list[dict]:
    vectors = []
    seen = set()
    while len(vectors) < 150:
        line = gen.gen_malformed(rng)
        if line in seen:
            continue
        seen.add(line)
        as_cmd = p.decode(line)
        as_ans = p.decode_answer(line)
        if not isinstance(as_cmd, p.JsonExn) or not isinstance(as_ans, p.JsonExn):
            continue
        vectors.append(
            {"line": line, "command": as_cmd.message, "answer": as_ans.message}
        )
    return vectors


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(77_001)
    files = {
        "lexer.json": lexer_vectors(rng),
        "wire.json": wire_vectors(rng),
        "malformed.json": malformed_vectors(rng),
    }
    for name, data in files.items():
        path = OUT / name
        path.write_text(
            json.dumps(data, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
        )
        print(f"wrote {path} ({len(data)} vectors)")


if __name__ == "__main__":
    main()

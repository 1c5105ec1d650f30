"""Independent checkers the test suite trusts.

Both are deliberately naive: the truth-table evaluator enumerates every
assignment, and the reference splitter walks the input one byte at a time
with no regex jumps. They share no code with the package beyond the
proposition AST itself.
"""

from __future__ import annotations

import itertools

from proofdeck.kernel import And, Atom, Falsity, Imp, Or, Prop, Truth

MAX_ATOMS = 12


def atoms_of(p: Prop) -> frozenset[str]:
    if isinstance(p, Atom):
        return frozenset((p.name,))
    if isinstance(p, (Truth, Falsity)):
        return frozenset()
    return atoms_of(p.left) | atoms_of(p.right)


def eval_prop(p: Prop, env: dict[str, bool]) -> bool:
    if isinstance(p, Atom):
        return env[p.name]
    if isinstance(p, Truth):
        return True
    if isinstance(p, Falsity):
        return False
    if isinstance(p, And):
        return eval_prop(p.left, env) and eval_prop(p.right, env)
    if isinstance(p, Or):
        return eval_prop(p.left, env) or eval_prop(p.right, env)
    if isinstance(p, Imp):
        return (not eval_prop(p.left, env)) or eval_prop(p.right, env)
    raise TypeError(f"not a proposition: {p!r}")


def truth_table_entails(hyps: list[Prop], concl: Prop) -> bool:
    """Classical entailment by exhaustive enumeration."""
    atoms = sorted(frozenset().union(atoms_of(concl), *map(atoms_of, hyps)))
    if len(atoms) > MAX_ATOMS:
        raise ValueError(f"too many atoms for enumeration: {len(atoms)}")
    for values in itertools.product((False, True), repeat=len(atoms)):
        env = dict(zip(atoms, values))
        if all(eval_prop(h, env) for h in hyps) and not eval_prop(concl, env):
            return False
    return True


class ModelLexError(Exception):
    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.message = message
        self.offset = offset


_WS_BYTES = frozenset(b" \t\r\n\f\v")


def _model_skip_comment(data: bytes, start: int) -> int:
    i = start + 2
    depth = 1
    n = len(data)
    while depth:
        if i >= n:
            raise ModelLexError("unterminated comment", start)
        if data[i : i + 2] == b"(*":
            depth += 1
            i += 2
        elif data[i : i + 2] == b"*)":
            depth -= 1
            i += 2
        else:
            i += 1
    return i


def _model_skip_string(data: bytes, start: int) -> int:
    i = start + 1
    n = len(data)
    while True:
        if i >= n:
            raise ModelLexError("unterminated string", start)
        if data[i] == 0x22:
            if data[i + 1 : i + 2] == b'"':
                i += 2
            else:
                return i + 1
        else:
            i += 1


def reference_split(src: str) -> list[tuple[str, int, int]]:
    """Split into sentences, one byte at a time. Offsets are byte offsets."""
    data = src.encode("utf-8")
    n = len(data)
    out: list[tuple[str, int, int]] = []
    i = 0
    while True:
        while i < n:
            if data[i] in _WS_BYTES:
                i += 1
            elif data[i : i + 2] == b"(*":
                i = _model_skip_comment(data, i)
            else:
                break
        if i >= n:
            return out
        start = i
        while True:
            if i >= n:
                raise ModelLexError("unterminated sentence", start)
            if data[i : i + 2] == b"(*":
                i = _model_skip_comment(data, i)
            elif data[i] == 0x22:
                i = _model_skip_string(data, i)
            elif data[i] == 0x2E and (i + 1 >= n or data[i + 1] in _WS_BYTES):
                i += 1
                out.append((data[start:i].decode("utf-8"), start, i))
                break
            else:
                i += 1

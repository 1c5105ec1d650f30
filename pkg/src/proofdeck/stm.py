"""Incremental document engine: a linear chain of sentence states.

Each added sentence becomes a state in a chain rooted at the initial state
(id 1). add parses eagerly and never executes; observe executes the pending
prefix, emitting feedback per state; cancel drops a state and everything
after it. Every processed state keeps a full (env, proof state) snapshot, so
any prefix can be inspected without re-execution.

State ids are allocated strictly monotonically and never reused within one
init epoch; re-init resets the chain, the ids, and the option table.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

from . import kernel, lexer

__all__ = [
    "Loc", "ProcessingStarted", "Processed", "Message", "Feedback",
    "OptionValue", "CoqError", "DocState", "StmEngine",
    "PARSED", "PROCESSING", "PROCESSED", "ERRORED", "INITIAL_STATE_ID",
]

INITIAL_STATE_ID = 1

PARSED, PROCESSING, PROCESSED, ERRORED = "parsed", "processing", "processed", "errored"


@dataclass(frozen=True)
class Loc:
    start: int
    end: int


@dataclass(frozen=True)
class ProcessingStarted:
    pass


@dataclass(frozen=True)
class Processed:
    pass


@dataclass(frozen=True)
class Message:
    level: str  # "Info" | "Warning" | "Error"
    text: str


@dataclass(frozen=True)
class Feedback:
    id: int
    contents: object  # ProcessingStarted | Processed | Message


@dataclass(frozen=True)
class OptionValue:
    kind: str  # "Bool" | "Int" | "String"
    value: object


class CoqError(Exception):
    """Engine-level failure; carries the wire error payload."""

    def __init__(
        self,
        message: str,
        loc: Optional[Loc] = None,
        pair: Optional[tuple[int, int]] = None,
    ):
        super().__init__(message)
        self.message = message
        self.loc = loc
        self.pair = pair


@dataclass
class DocState:
    id: int
    parent: int
    text: str
    vernac: object = None
    status: str = PARSED
    child: Optional[int] = None
    snapshot: Optional[tuple] = None  # (ProofEnv, ProofState | None)
    error: Optional[tuple] = None  # (loc, pair, message) as first recorded


class StmEngine:
    """One document chain over one package manager."""

    def __init__(self, packages, emit: Optional[Callable[[Feedback], None]] = None):
        self._packages = packages
        self._emit = emit or (lambda fb: None)
        self._states: dict[int, DocState] = {}
        self._next_id = INITIAL_STATE_ID
        self._options = kernel.default_options()
        self._prefixes: list[tuple[str, ...]] = []

    # -- lifecycle ----------------------------------------------------------

    def init(self, loadpath, init_mods) -> int:
        """Start a fresh epoch; returns the initial state id.

        loadpath entries are the logical prefixes under which requires may
        load module files lazily; init_mods are required into the initial
        environment. On failure the engine is left untouched.
        """
        options = kernel.default_options()
        prefixes = [tuple(p) for p in loadpath]
        env = kernel.ProofEnv(lemmas={}, options=dict(options), required=frozenset())
        ps = None
        for mod in init_mods:
            req = kernel.RequireImport(tuple(mod))
            try:
                env, ps, _ = kernel.exec_vernac(env, ps, req, resolve=self._resolver(prefixes))
            except kernel.ExecError as e:
                raise CoqError(e.message) from None
        self._options = options
        self._prefixes = prefixes
        self._states = {
            INITIAL_STATE_ID: DocState(
                id=INITIAL_STATE_ID,
                parent=0,
                text="",
                status=PROCESSED,
                snapshot=(env, None),
            )
        }
        self._next_id = INITIAL_STATE_ID + 1
        return INITIAL_STATE_ID

    def _resolver(self, prefixes):
        def resolve(path):
            return self._packages.require(path, lazy_prefixes=prefixes)

        return resolve

    # -- document edits -------------------------------------------------------

    def add(self, sid: int, eid: int, cmd: str) -> int:
        """Parse one sentence on top of state sid; never executes."""
        st = self._states.get(sid)
        if st is None:
            raise CoqError(f"unknown state: {sid}", pair=(sid, eid))
        if st.status == ERRORED:
            raise CoqError("cannot add on an errored state", pair=(sid, eid))
        if st.child is not None:
            raise CoqError("not at tip", pair=(sid, eid))
        try:
            sentences = lexer.split(cmd)
        except lexer.LexError as e:
            loc = Loc(e.offset, len(cmd.encode("utf-8")))
            raise CoqError(e.message, loc=loc, pair=(sid, eid)) from None
        if len(sentences) != 1:
            raise CoqError(
                f"expected exactly one sentence, got {len(sentences)}", pair=(sid, eid)
            )
        try:
            v = kernel.parse_vernac(sentences[0].text)
        except kernel.ParseError as e:
            base = sentences[0].start
            loc = Loc(base + e.start, base + e.end)
            raise CoqError(e.message, loc=loc, pair=(sid, eid)) from None
        new_id = self._next_id
        self._next_id += 1
        self._states[new_id] = DocState(id=new_id, parent=sid, text=cmd, vernac=v)
        st.child = new_id
        return new_id

    def observe(self, sid: int) -> int:
        """Execute every pending ancestor of sid, then sid itself.

        Emits ProcessingStarted/Processed (and Message unless Silent) per
        newly executed state. An already-errored state in the chain replays
        its stored error without re-execution.
        """
        if sid not in self._states:
            raise CoqError(f"unknown state: {sid}")
        chain = self._chain_to(sid)
        for s_id in chain:
            st = self._states[s_id]
            if st.status == ERRORED:
                loc, pair, msg = st.error
                raise CoqError(msg, loc=loc, pair=pair)
        last_good = INITIAL_STATE_ID
        for s_id in chain:
            st = self._states[s_id]
            if st.status == PROCESSED:
                last_good = s_id
                continue
            parent_env, parent_ps = self._states[st.parent].snapshot
            st.status = PROCESSING
            self._feedback(s_id, ProcessingStarted())
            env = replace(parent_env, options=dict(self._options))
            try:
                env2, ps2, msgs = kernel.exec_vernac(
                    env, parent_ps, st.vernac, resolve=self._resolver(self._prefixes)
                )
            except kernel.ExecError as e:
                st.status = ERRORED
                st.error = (None, (last_good, s_id), e.message)
                raise CoqError(e.message, pair=(last_good, s_id)) from None
            st.snapshot = (env2, ps2)
            st.status = PROCESSED
            for m in msgs:
                self._feedback(s_id, Message("Info", m))
            self._feedback(s_id, Processed())
            last_good = s_id
        return sid

    def cancel(self, sid: int) -> tuple[int, ...]:
        """Remove sid and its descendants; returns the removed ids ascending."""
        if sid == INITIAL_STATE_ID:
            raise CoqError("cannot cancel initial state")
        st = self._states.get(sid)
        if st is None:
            raise CoqError(f"unknown state: {sid}")
        parent_id = st.parent
        removed: list[int] = []
        cur: Optional[int] = sid
        while cur is not None:
            removed.append(cur)
            cur = self._states[cur].child
        for r in removed:
            del self._states[r]
        self._states[parent_id].child = None
        return tuple(removed)

    # -- inspection -----------------------------------------------------------

    def goals(self, sid: int) -> tuple[str, int]:
        """Render a processed state's goals under the current option table."""
        st = self._states.get(sid)
        if st is None:
            raise CoqError(f"unknown state: {sid}")
        if st.status != PROCESSED:
            raise CoqError("state not evaluated; observe first")
        _env, ps = st.snapshot
        compact = bool(self._options.get(("Printing", "Compact"), False))
        text = kernel.pretty_proof_state(ps, compact=compact)
        count = len(ps.goals) if ps is not None else 0
        return text, count

    def set_opt(self, path, value: OptionValue, glob: Optional[bool] = None) -> None:
        key = tuple(path)
        kind = kernel.option_kind(key)
        if kind is None:
            raise CoqError(f"unknown option: {'.'.join(path)}")
        if value.kind != kind:
            raise CoqError(f"option {'.'.join(path)} expects {kind}, got {value.kind}")
        self._options[key] = value.value

    def get_opt(self, path) -> OptionValue:
        key = tuple(path)
        kind = kernel.option_kind(key)
        if kind is None:
            raise CoqError(f"unknown option: {'.'.join(path)}")
        return OptionValue(kind, self._options[key])

    # -- helpers (also the test surface) ---------------------------------------

    def tip(self) -> int:
        cur = INITIAL_STATE_ID
        while self._states[cur].child is not None:
            cur = self._states[cur].child
        return cur

    def state_ids(self) -> tuple[int, ...]:
        return tuple(self._chain_to(self.tip()))

    def status_of(self, sid: int) -> str:
        return self._states[sid].status

    def snapshot_of(self, sid: int):
        return self._states[sid].snapshot

    def text_of(self, sid: int) -> str:
        return self._states[sid].text

    def _chain_to(self, sid: int) -> list[int]:
        chain = []
        cur = sid
        while cur != 0:
            chain.append(cur)
            cur = self._states[cur].parent
        chain.reverse()
        return chain

    def _feedback(self, sid: int, contents) -> None:
        if isinstance(contents, Message) and self._options.get(("Silent",), False):
            return
        self._emit(Feedback(sid, contents))

"""Protocol messages and their tagged-array JSON codec.

Every message is a JSON array whose first element names the constructor:
["Add", 2, 101, "exact I."], nullary constructors as ["GetInfo"]. Records
(Loc, Feedback, ProgressInfo, Bundle) are JSON objects with named fields,
optional values are null or the value, and logical paths are string arrays.

decode never raises: anything that fails to parse comes back as a JsonExn
answer carrying the parser's complaint.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Optional

from .. import pkg as pkgmod
from ..stm import Feedback, Loc, Message, OptionValue, Processed, ProcessingStarted

__all__ = [
    "Command", "Init", "Add", "Cancel", "Observe", "Goals", "SetOpt", "GetOpt",
    "InfoPkg", "LoadPkg", "GetInfo",
    "Answer", "Added", "Cancelled", "Observed", "GoalInfo", "FeedbackAnswer",
    "CoqOpt", "CoqExn", "JsonExn", "LibInfo", "LibProgress", "LibLoaded",
    "encode", "decode", "decode_answer",
]


class Command:
    __slots__ = ()


@dataclass(frozen=True)
class Init(Command):
    loadpath: tuple[tuple[str, ...], ...]
    init_mods: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class Add(Command):
    sid: int
    eid: int
    text: str


@dataclass(frozen=True)
class Cancel(Command):
    sid: int


@dataclass(frozen=True)
class Observe(Command):
    sid: int


@dataclass(frozen=True)
class Goals(Command):
    sid: int


@dataclass(frozen=True)
class SetOpt(Command):
    glob: Optional[bool]
    path: tuple[str, ...]
    value: OptionValue


@dataclass(frozen=True)
class GetOpt(Command):
    path: tuple[str, ...]


@dataclass(frozen=True)
class InfoPkg(Command):
    base: str
    names: tuple[str, ...]


@dataclass(frozen=True)
class LoadPkg(Command):
    base: str
    name: str


@dataclass(frozen=True)
class GetInfo(Command):
    pass


class Answer:
    __slots__ = ()


@dataclass(frozen=True)
class Added(Answer):
    sid: int


@dataclass(frozen=True)
class Cancelled(Answer):
    sids: tuple[int, ...]


@dataclass(frozen=True)
class Observed(Answer):
    sid: int


@dataclass(frozen=True)
class GoalInfo(Answer):
    sid: int
    text: str
    goal_count: int


@dataclass(frozen=True)
class FeedbackAnswer(Answer):
    """Wire constructor "Feedback"."""

    feedback: Feedback


@dataclass(frozen=True)
class CoqOpt(Answer):
    value: OptionValue


@dataclass(frozen=True)
class CoqExn(Answer):
    loc: Optional[Loc]
    pair: Optional[tuple[int, int]]
    message: str


@dataclass(frozen=True)
class JsonExn(Answer):
    message: str


@dataclass(frozen=True)
class LibInfo(Answer):
    name: str
    bundle: pkgmod.Bundle


@dataclass(frozen=True)
class LibProgress(Answer):
    info: pkgmod.ProgressInfo


@dataclass(frozen=True)
class LibLoaded(Answer):
    name: str


class CodecError(Exception):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class _Int:
    def enc(self, v):
        return v

    def dec(self, j):
        if isinstance(j, bool) or not isinstance(j, int):
            raise CodecError("expected an integer")
        return j


class _Str:
    def enc(self, v):
        return v

    def dec(self, j):
        if not isinstance(j, str):
            raise CodecError("expected a string")
        return j


class _Bool:
    def enc(self, v):
        return v

    def dec(self, j):
        if not isinstance(j, bool):
            raise CodecError("expected a boolean")
        return j


class _List:
    def __init__(self, inner):
        self.inner = inner

    def enc(self, v):
        return [self.inner.enc(x) for x in v]

    def dec(self, j):
        if not isinstance(j, list):
            raise CodecError("expected an array")
        return tuple(self.inner.dec(x) for x in j)


class _Opt:
    def __init__(self, inner):
        self.inner = inner

    def enc(self, v):
        return None if v is None else self.inner.enc(v)

    def dec(self, j):
        return None if j is None else self.inner.dec(j)


class _Pair:
    """Two integers encoded as a two-element array."""

    def enc(self, v):
        return [v[0], v[1]]

    def dec(self, j):
        if not isinstance(j, list) or len(j) != 2:
            raise CodecError("expected a two-element array")
        if any(isinstance(x, bool) or not isinstance(x, int) for x in j):
            raise CodecError("expected integers")
        return (j[0], j[1])


_OPTION_KINDS = {"Bool": bool, "Int": int, "String": str}


class _OptionValue:
    def enc(self, v: OptionValue):
        return [v.kind, v.value]

    def dec(self, j):
        if not isinstance(j, list) or len(j) != 2 or not isinstance(j[0], str):
            raise CodecError("expected [kind, value]")
        kind, value = j
        want = _OPTION_KINDS.get(kind)
        if want is None:
            raise CodecError(f"unknown option kind {kind}")
        if want is int:
            if isinstance(value, bool) or not isinstance(value, int):
                raise CodecError("Int option expects an integer")
        elif not isinstance(value, want):
            raise CodecError(f"{kind} option expects a {want.__name__}")
        return OptionValue(kind, value)


class _Loc:
    def enc(self, v: Loc):
        return {"start": v.start, "end": v.end}

    def dec(self, j):
        if not isinstance(j, dict) or set(j) != {"start", "end"}:
            raise CodecError("expected {start, end}")
        start, end = j["start"], j["end"]
        for x in (start, end):
            if isinstance(x, bool) or not isinstance(x, int):
                raise CodecError("expected integer offsets")
        if not 0 <= start <= end:
            raise CodecError("expected 0 <= start <= end")
        return Loc(start, end)


_LEVELS = ("Info", "Warning", "Error")


class _FeedbackCodec:
    def enc(self, fb: Feedback):
        c = fb.contents
        if isinstance(c, ProcessingStarted):
            contents = ["ProcessingStarted"]
        elif isinstance(c, Processed):
            contents = ["Processed"]
        elif isinstance(c, Message):
            contents = ["Message", [c.level], c.text]
        else:
            raise CodecError(f"unsupported feedback contents {c!r}")
        return {"id": fb.id, "contents": contents}

    def dec(self, j):
        if not isinstance(j, dict) or set(j) != {"id", "contents"}:
            raise CodecError("expected {id, contents}")
        sid = j["id"]
        if isinstance(sid, bool) or not isinstance(sid, int) or sid < 1:
            raise CodecError("feedback id must be a positive integer")
        c = j["contents"]
        if not isinstance(c, list) or not c or not isinstance(c[0], str):
            raise CodecError("feedback contents must be a tagged array")
        tag = c[0]
        if tag == "ProcessingStarted" and len(c) == 1:
            return Feedback(sid, ProcessingStarted())
        if tag == "Processed" and len(c) == 1:
            return Feedback(sid, Processed())
        if tag == "Message":
            if (
                len(c) == 3
                and isinstance(c[1], list)
                and len(c[1]) == 1
                and c[1][0] in _LEVELS
                and isinstance(c[2], str)
            ):
                return Feedback(sid, Message(c[1][0], c[2]))
            raise CodecError("malformed Message contents")
        raise CodecError(f"unknown feedback contents {tag}")


class _BundleCodec:
    def enc(self, b: pkgmod.Bundle):
        return pkgmod.bundle_to_json(b)

    def dec(self, j):
        try:
            return pkgmod.bundle_from_json(j)
        except pkgmod.ManifestError as e:
            raise CodecError(e.message) from None


class _ProgressCodec:
    _KEYS = ("bundle", "pkg_id", "files_loaded", "files_total")

    def enc(self, p: pkgmod.ProgressInfo):
        return {
            "bundle": p.bundle,
            "pkg_id": list(p.pkg_id),
            "files_loaded": p.files_loaded,
            "files_total": p.files_total,
        }

    def dec(self, j):
        if not isinstance(j, dict) or set(j) != set(self._KEYS):
            raise CodecError("expected {bundle, pkg_id, files_loaded, files_total}")
        if not isinstance(j["bundle"], str):
            raise CodecError("bundle must be a string")
        pkg_id = j["pkg_id"]
        if not isinstance(pkg_id, list) or any(not isinstance(x, str) for x in pkg_id):
            raise CodecError("pkg_id must be a string array")
        loaded, total = j["files_loaded"], j["files_total"]
        for x in (loaded, total):
            if isinstance(x, bool) or not isinstance(x, int):
                raise CodecError("file counts must be integers")
        if not 0 <= loaded <= total:
            raise CodecError("expected 0 <= files_loaded <= files_total")
        return pkgmod.ProgressInfo(j["bundle"], tuple(pkg_id), loaded, total)


INT = _Int()
STR = _Str()
BOOL = _Bool()
PATH = _List(STR)
PATHS = _List(PATH)
OPTVAL = _OptionValue()
LOC = _Loc()
PAIR = _Pair()
FEEDBACK = _FeedbackCodec()
BUNDLE = _BundleCodec()
PROGRESS = _ProgressCodec()

_COMMANDS = {
    "Init": (Init, (PATHS, PATHS)),
    "Add": (Add, (INT, INT, STR)),
    "Cancel": (Cancel, (INT,)),
    "Observe": (Observe, (INT,)),
    "Goals": (Goals, (INT,)),
    "SetOpt": (SetOpt, (_Opt(BOOL), PATH, OPTVAL)),
    "GetOpt": (GetOpt, (PATH,)),
    "InfoPkg": (InfoPkg, (STR, _List(STR))),
    "LoadPkg": (LoadPkg, (STR, STR)),
    "GetInfo": (GetInfo, ()),
}

_ANSWERS = {
    "Added": (Added, (INT,)),
    "Cancelled": (Cancelled, (_List(INT),)),
    "Observed": (Observed, (INT,)),
    "GoalInfo": (GoalInfo, (INT, STR, INT)),
    "Feedback": (FeedbackAnswer, (FEEDBACK,)),
    "CoqOpt": (CoqOpt, (OPTVAL,)),
    "CoqExn": (CoqExn, (_Opt(LOC), _Opt(PAIR), STR)),
    "JsonExn": (JsonExn, (STR,)),
    "LibInfo": (LibInfo, (STR, BUNDLE)),
    "LibProgress": (LibProgress, (PROGRESS,)),
    "LibLoaded": (LibLoaded, (STR,)),
}

_SPEC_BY_CLASS = {
    cls: (tag, codecs)
    for registry in (_COMMANDS, _ANSWERS)
    for tag, (cls, codecs) in registry.items()
}


def encode(msg) -> str:
    """Encode a Command or Answer as one line of JSON."""
    tag, codecs = _SPEC_BY_CLASS[type(msg)]
    values = [getattr(msg, f.name) for f in dataclasses.fields(msg)]
    payload = [tag, *(c.enc(v) for c, v in zip(codecs, values))]
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def decode(text: str):
    """Decode one command; malformed input comes back as JsonExn."""
    return _decode(text, _COMMANDS, _ANSWERS, "a command")


def decode_answer(text: str):
    """Decode one answer; malformed input comes back as JsonExn."""
    return _decode(text, _ANSWERS, _COMMANDS, "an answer")


def _decode(text: str, registry: dict, other: dict, role: str):
    try:
        arr = json.loads(text)
    except ValueError as e:
        return JsonExn(f"invalid JSON: {e}")
    if not isinstance(arr, list) or not arr:
        return JsonExn("message must be a non-empty JSON array")
    tag = arr[0]
    if not isinstance(tag, str):
        return JsonExn("constructor tag must be a string")
    spec = registry.get(tag)
    if spec is None:
        if tag in other:
            return JsonExn(f"{tag} is not {role}")
        return JsonExn(f"unknown constructor {tag}")
    cls, codecs = spec
    args = arr[1:]
    if len(args) != len(codecs):
        return JsonExn(f"{tag} expects {len(codecs)} argument(s), got {len(args)}")
    try:
        values = [c.dec(a) for c, a in zip(codecs, args)]
    except CodecError as e:
        return JsonExn(f"{tag}: {e.message}")
    return cls(*values)

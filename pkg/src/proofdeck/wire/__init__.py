"""JSON wire protocol: message types, codec, and servers."""

from .protocol import (
    Add,
    Added,
    Answer,
    Cancel,
    Cancelled,
    Command,
    CoqExn,
    CoqOpt,
    FeedbackAnswer,
    GetInfo,
    GetOpt,
    GoalInfo,
    Goals,
    InfoPkg,
    Init,
    JsonExn,
    LibInfo,
    LibLoaded,
    LibProgress,
    LoadPkg,
    Observe,
    Observed,
    SetOpt,
    decode,
    decode_answer,
    encode,
)
from .server import Session, serve_listen, serve_stdio

__all__ = [
    "Command", "Init", "Add", "Cancel", "Observe", "Goals", "SetOpt", "GetOpt",
    "InfoPkg", "LoadPkg", "GetInfo",
    "Answer", "Added", "Cancelled", "Observed", "GoalInfo", "FeedbackAnswer",
    "CoqOpt", "CoqExn", "JsonExn", "LibInfo", "LibProgress", "LibLoaded",
    "encode", "decode", "decode_answer",
    "Session", "serve_stdio", "serve_listen",
]

"""Session dispatch and the line-delimited stdio/socket servers.

One Session owns one document engine plus its package store. Each incoming
line holds one command; each command produces one or more answer lines, sent
in order, with Feedback lines preceding the final answer to the command that
caused them.
"""

from __future__ import annotations

import socket
import sys
from typing import Callable, Optional

from .. import __version__
from ..pkg import LoadError, ManifestError, PackageManager
from ..stm import CoqError, Feedback, Message, StmEngine
from . import protocol as p

__all__ = ["Session", "serve_stdio", "serve_listen"]


class Session:
    def __init__(self, roots: tuple[str, ...] = (), send: Optional[Callable[[str], None]] = None):
        self._roots = roots
        self._send = send if send is not None else (lambda line: None)
        self._packages = PackageManager(roots)
        self._engine: Optional[StmEngine] = None

    def handle_line(self, line: str) -> None:
        self.handle(p.decode(line))

    def handle(self, cmd) -> None:
        if isinstance(cmd, p.JsonExn):
            self._reply(cmd)
            return
        try:
            self._dispatch(cmd)
        except CoqError as e:
            self._reply(p.CoqExn(e.loc, e.pair, e.message))

    def _reply(self, answer) -> None:
        self._send(p.encode(answer))

    def _emit_feedback(self, fb: Feedback) -> None:
        self._reply(p.FeedbackAnswer(fb))

    def _require_engine(self) -> StmEngine:
        if self._engine is None:
            raise CoqError("engine not initialized")
        return self._engine

    def _dispatch(self, cmd) -> None:
        if isinstance(cmd, p.Init):
            engine = StmEngine(self._packages, self._emit_feedback)
            engine.init(cmd.loadpath, cmd.init_mods)
            self._engine = engine
            self._reply(p.Observed(1))
        elif isinstance(cmd, p.Add):
            sid = self._require_engine().add(cmd.sid, cmd.eid, cmd.text)
            self._reply(p.Added(sid))
        elif isinstance(cmd, p.Cancel):
            removed = self._require_engine().cancel(cmd.sid)
            self._reply(p.Cancelled(removed))
        elif isinstance(cmd, p.Observe):
            sid = self._require_engine().observe(cmd.sid)
            self._reply(p.Observed(sid))
        elif isinstance(cmd, p.Goals):
            text, count = self._require_engine().goals(cmd.sid)
            self._reply(p.GoalInfo(cmd.sid, text, count))
        elif isinstance(cmd, p.SetOpt):
            engine = self._require_engine()
            engine.set_opt(cmd.path, cmd.value)
            self._reply(p.CoqOpt(engine.get_opt(cmd.path)))
        elif isinstance(cmd, p.GetOpt):
            self._reply(p.CoqOpt(self._require_engine().get_opt(cmd.path)))
        elif isinstance(cmd, p.InfoPkg):
            self._info_pkg(cmd)
        elif isinstance(cmd, p.LoadPkg):
            self._load_pkg(cmd)
        elif isinstance(cmd, p.GetInfo):
            roots = ", ".join(self._roots) if self._roots else "(none)"
            text = f"proofdeck {__version__}; roots: {roots}"
            self._emit_feedback(Feedback(1, Message("Info", text)))
        else:
            raise CoqError(f"unhandled command {type(cmd).__name__}")

    def _info_pkg(self, cmd: p.InfoPkg) -> None:
        for name in cmd.names:
            try:
                bundle = self._packages.bundle_info(cmd.base, name)
            except (ManifestError, LoadError) as e:
                self._reply(p.CoqExn(None, None, e.message))
            else:
                self._reply(p.LibInfo(name, bundle))

    def _load_pkg(self, cmd: p.LoadPkg) -> None:
        fb_id = self._engine.tip() if self._engine is not None else 1

        def on_event(event) -> None:
            kind, payload = event
            if kind == "progress":
                self._reply(p.LibProgress(payload))
            elif kind == "warning":
                self._emit_feedback(Feedback(fb_id, Message("Warning", payload)))
            elif kind == "loaded":
                self._reply(p.LibLoaded(payload))

        try:
            self._packages.load_bundle(cmd.base, cmd.name, on_event)
        except (ManifestError, LoadError) as e:
            self._reply(p.CoqExn(None, None, e.message))


def serve_stdio(roots: tuple[str, ...] = (), log: Optional[Callable[[str], None]] = None) -> None:
    """Read commands from stdin, write answers to stdout, until EOF."""
    out = sys.stdout

    def send(line: str) -> None:
        out.write(line + "\n")
        out.flush()
        if log is not None:
            log(">> " + line)

    session = Session(roots, send)
    for raw in sys.stdin:
        line = raw.strip()
        if not line:
            continue
        if log is not None:
            log("<< " + line)
        session.handle_line(line)


def serve_listen(addr: str, roots: tuple[str, ...] = (), log: Optional[Callable[[str], None]] = None) -> None:
    """Accept TCP connections on host:port, one session at a time."""
    host, _, port_s = addr.rpartition(":")
    if not host or not port_s.isdigit():
        raise ValueError(f"invalid listen address {addr!r}; expected host:port")
    port = int(port_s)

    with socket.create_server((host, port)) as server:
        if log is not None:
            log(f"listening on {host}:{port}")
        while True:
            conn, peer = server.accept()
            if log is not None:
                log(f"connection from {peer[0]}:{peer[1]}")
            with conn, conn.makefile("r", encoding="utf-8") as rx:

                def send(line: str) -> None:
                    conn.sendall(line.encode("utf-8") + b"\n")
                    if log is not None:
                        log(">> " + line)

                session = Session(roots, send)
                for raw in rx:
                    line = raw.strip()
                    if not line:
                        continue
                    if log is not None:
                        log("<< " + line)
                    session.handle_line(line)
            if log is not None:
                log("connection closed")

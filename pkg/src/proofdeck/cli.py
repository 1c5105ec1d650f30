"""Command line entry points: serve, pkg build, doc."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__, udoc
from .lexer import LexError
from .pkg import build_tree
from .wire.server import serve_listen, serve_stdio


def _loadpath_roots(flags: list[str] | None) -> tuple[str, ...]:
    roots = list(flags or [])
    env = os.environ.get("PROOFDECK_LOADPATH")
    if env:
        roots.extend(p for p in env.split(os.pathsep) if p)
    return tuple(roots)


def _cmd_serve(args: argparse.Namespace) -> int:
    roots = _loadpath_roots(args.loadpath)
    log = None
    log_file = None
    if args.log:
        log_file = open(args.log, "a", encoding="utf-8")

        def log(line: str) -> None:
            log_file.write(line + "\n")
            log_file.flush()

    try:
        if args.stdio:
            serve_stdio(roots, log)
        else:
            serve_listen(args.listen, roots, log)
    except KeyboardInterrupt:
        pass
    finally:
        if log_file is not None:
            log_file.close()
    return 0


def _cmd_pkg_build(args: argparse.Namespace) -> int:
    try:
        names = build_tree(Path(args.srcdir), Path(args.output))
    except Exception as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    for name in names:
        print(f"built bundle {name}")
    return 0


def _cmd_doc(args: argparse.Namespace) -> int:
    src_path = Path(args.input)
    try:
        src = src_path.read_text(encoding="utf-8")
    except OSError as e:
        print(f"error: cannot read {args.input}: {e}", file=sys.stderr)
        return 1
    loader_source = None
    if args.standalone:
        try:
            loader_source = Path(args.loader).read_text(encoding="utf-8")
        except OSError as e:
            print(f"error: cannot read loader {args.loader}: {e}", file=sys.stderr)
            return 1
    title = args.title if args.title is not None else src_path.stem
    try:
        page = udoc.render_doc(src, title=title, loader=args.loader, loader_source=loader_source)
    except (udoc.DocError, LexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        Path(args.output).write_text(page, encoding="utf-8")
    except OSError as e:
        print(f"error: cannot write {args.output}: {e}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="proofdeck", description="Interactive proof document engine")
    parser.add_argument("--version", action="version", version=f"proofdeck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the protocol server")
    mode = serve.add_mutually_exclusive_group(required=True)
    mode.add_argument("--stdio", action="store_true", help="serve over stdin/stdout")
    mode.add_argument("--listen", metavar="ADDR", help="serve over TCP on host:port")
    serve.add_argument(
        "--loadpath", metavar="DIR", action="append",
        help="package root directory (repeatable; PROOFDECK_LOADPATH adds more)",
    )
    serve.add_argument("--log", metavar="FILE", help="append a protocol trace to FILE")
    serve.set_defaults(func=_cmd_serve)

    pkg = sub.add_parser("pkg", help="package bundle tools")
    pkg_sub = pkg.add_subparsers(dest="pkg_command", required=True)
    build = pkg_sub.add_parser("build", help="build bundles from a source tree")
    build.add_argument("srcdir", help="source tree with one directory per bundle")
    build.add_argument("-o", "--output", required=True, help="destination package root")
    build.set_defaults(func=_cmd_pkg_build)

    doc = sub.add_parser("doc", help="generate an interactive HTML page from a script")
    doc.add_argument("input", help="annotated .v source file")
    doc.add_argument("-o", "--output", required=True, help="output HTML file")
    doc.add_argument("--title", help="page title (default: input file stem)")
    doc.add_argument("--loader", default="proofdeck-loader.js", help="loader script path")
    doc.add_argument("--standalone", action="store_true", help="inline the loader script")
    doc.set_defaults(func=_cmd_doc)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

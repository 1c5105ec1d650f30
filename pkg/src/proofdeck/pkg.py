"""Package and bundle management: manifests, loading, lazy requires.

A bundle manifest lives at ``<root>/<name>.json`` and holds exactly the keys
``desc``, ``deps``, ``pkgs``; each package entry holds exactly ``pkg_id``,
``vo_files``, ``cma_files``. Logical paths map to physical paths one to one:
package ``A.B.C`` keeps its files under ``<root>/A/B/C/``.

Module files are plain-text proof scripts; executing one through a fresh
kernel pass yields its lemma map. ``cma_files`` are carried through the
manifest round-trip but never executed.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional

from . import kernel, lexer

__all__ = [
    "Package", "Bundle", "ProgressInfo", "LoadedModule",
    "ManifestError", "LoadError",
    "parse_bundle", "bundle_from_json", "bundle_to_json",
    "package_from_json", "package_to_json",
    "physical_path", "PackageManager", "build_tree",
]


class ManifestError(Exception):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class LoadError(Exception):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


@dataclass(frozen=True)
class Package:
    pkg_id: tuple[str, ...]
    vo_files: tuple[str, ...]
    cma_files: tuple[str, ...]


@dataclass(frozen=True)
class Bundle:
    desc: str
    deps: tuple[str, ...]
    pkgs: tuple[Package, ...]


@dataclass(frozen=True)
class ProgressInfo:
    bundle: str
    pkg_id: tuple[str, ...]
    files_loaded: int
    files_total: int


@dataclass(frozen=True)
class LoadedModule:
    name: str  # dotted logical name
    lemmas: dict[str, kernel.Prop]


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def _expect_keys(obj: object, keys: tuple[str, ...], what: str) -> dict:
    if not isinstance(obj, dict):
        raise ManifestError(f"{what} must be a JSON object")
    for k in keys:
        if k not in obj:
            raise ManifestError(f"missing key: {k}")
    for k in obj:
        if k not in keys:
            raise ManifestError(f"unknown key: {k}")
    return obj


def _string_list(obj: dict, key: str) -> tuple[str, ...]:
    val = obj[key]
    if not isinstance(val, list) or any(not isinstance(x, str) for x in val):
        raise ManifestError(f"key {key!r}: expected a list of strings")
    return tuple(val)


def _check_file_name(name: str, extensions: tuple[str, ...]) -> None:
    if "/" in name or "\\" in name:
        raise ManifestError(f"file name {name!r} contains a path separator")
    if not name.endswith(extensions):
        wanted = " or ".join(extensions)
        raise ManifestError(f"file name {name!r} must end in {wanted}")


def package_from_json(obj: object) -> Package:
    rec = _expect_keys(obj, ("pkg_id", "vo_files", "cma_files"), "package")
    pkg_id = _string_list(rec, "pkg_id")
    if not pkg_id:
        raise ManifestError("pkg_id must be non-empty")
    for part in pkg_id:
        if not _IDENT.match(part):
            raise ManifestError(f"pkg_id component {part!r} is not an identifier")
    vo_files = _string_list(rec, "vo_files")
    for f in vo_files:
        _check_file_name(f, (".v", ".vo"))
    cma_files = _string_list(rec, "cma_files")
    for f in cma_files:
        _check_file_name(f, (".cma",))
    return Package(pkg_id, vo_files, cma_files)


def bundle_from_json(obj: object) -> Bundle:
    rec = _expect_keys(obj, ("desc", "deps", "pkgs"), "bundle")
    desc = rec["desc"]
    if not isinstance(desc, str):
        raise ManifestError("key 'desc': expected a string")
    deps = _string_list(rec, "deps")
    pkgs_val = rec["pkgs"]
    if not isinstance(pkgs_val, list):
        raise ManifestError("key 'pkgs': expected a list")
    return Bundle(desc, deps, tuple(package_from_json(p) for p in pkgs_val))


def parse_bundle(text: str) -> Bundle:
    """Parse and validate a bundle manifest; rejects unknown keys."""
    try:
        obj = json.loads(text)
    except ValueError as e:
        raise ManifestError(f"invalid JSON: {e}") from None
    return bundle_from_json(obj)


def package_to_json(pkg: Package) -> dict:
    return {
        "pkg_id": list(pkg.pkg_id),
        "vo_files": list(pkg.vo_files),
        "cma_files": list(pkg.cma_files),
    }


def bundle_to_json(bundle: Bundle) -> dict:
    return {
        "desc": bundle.desc,
        "deps": list(bundle.deps),
        "pkgs": [package_to_json(p) for p in bundle.pkgs],
    }


def physical_path(pkg_id: Iterable[str]) -> str:
    """Directory (relative, trailing slash) holding a package's files."""
    parts = tuple(pkg_id)
    if not parts:
        raise ValueError("empty logical path")
    return "/".join(parts) + "/"


# Events streamed out of load_bundle, in emission order:
#   ("progress", ProgressInfo) | ("warning", str) | ("loaded", bundle_name)
LoadEvent = tuple
EmitFn = Callable[[LoadEvent], None]


class PackageManager:
    """Owns the physical roots and everything loaded from them.

    The module store is append-only: the first load of a logical name wins
    and later duplicates are skipped with a warning.
    """

    def __init__(self, roots: Iterable[str | Path] = ()):
        self.roots = [Path(r) for r in roots]
        self._modules: dict[str, LoadedModule] = {}
        self._bundles: set[str] = set()

    # -- querying ---------------------------------------------------------

    def loaded_modules(self) -> list[str]:
        return sorted(self._modules)

    def bundle_info(self, base: str | Path, name: str) -> Bundle:
        """Parse <base>/<name>.json without loading anything."""
        path = self._bundle_path(base, name)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise LoadError(f"cannot read bundle {name}: {e}") from None
        bundle = parse_bundle(text)
        if bundle.desc != name:
            raise ManifestError(
                f"bundle {name}: desc {bundle.desc!r} does not match the manifest name"
            )
        return bundle

    # -- loading ----------------------------------------------------------

    def load_bundle(self, base: str | Path, name: str, on_event: Optional[EmitFn] = None) -> None:
        """Load a bundle and its deps (deps first, each bundle once)."""
        emit = on_event or (lambda ev: None)
        self._load_rec(base, name, emit, [])

    def _load_rec(self, base: str | Path, name: str, emit: EmitFn, loading: list[str]) -> None:
        if name in self._bundles:
            return
        if name in loading:
            cycle = loading[loading.index(name):]
            raise LoadError("dependency cycle: " + ", ".join(cycle))
        bundle = self.bundle_info(base, name)
        loading.append(name)
        for dep in bundle.deps:
            self._load_rec(base, dep, emit, loading)
        loading.pop()
        root = self._bundle_path(base, name).parent
        for pkg in bundle.pkgs:
            total = len(pkg.vo_files)
            for i, fname in enumerate(pkg.vo_files, start=1):
                modname = ".".join(pkg.pkg_id + (Path(fname).stem,))
                if modname in self._modules:
                    emit(("warning", f"module {modname} already loaded; keeping the first"))
                else:
                    fpath = root.joinpath(*pkg.pkg_id) / fname
                    if not fpath.is_file():
                        raise LoadError(f"module {modname}: missing file {fname}")
                    source = fpath.read_text(encoding="utf-8")
                    self._modules[modname] = self._execute_module(modname, source)
                emit(("progress", ProgressInfo(name, pkg.pkg_id, i, total)))
        self._bundles.add(name)
        emit(("loaded", name))

    def require(
        self,
        path: Iterable[str],
        lazy_prefixes: Iterable[tuple[str, ...]] = (),
    ) -> Optional[dict[str, kernel.Prop]]:
        """Lemma map for a logical module name, or None when unknown.

        Bundle-loaded modules resolve unconditionally. Otherwise the module
        file is loaded lazily from the roots, but only under a registered
        loadpath prefix.
        """
        parts = tuple(path)
        key = ".".join(parts)
        mod = self._modules.get(key)
        if mod is not None:
            return mod.lemmas
        if not any(parts[:len(p)] == tuple(p) for p in lazy_prefixes):
            return None
        prefixes = [tuple(p) for p in lazy_prefixes]
        for root in self.roots:
            f = root.joinpath(*parts[:-1]) / (parts[-1] + ".v")
            if f.is_file():
                source = f.read_text(encoding="utf-8")
                mod = self._execute_module(key, source, lazy_prefixes=prefixes)
                self._modules[key] = mod
                return mod.lemmas
        return None

    def _execute_module(
        self,
        name: str,
        source: str,
        lazy_prefixes: Iterable[tuple[str, ...]] = (),
    ) -> LoadedModule:
        """Run a module file through a fresh kernel pass.

        Only declarations, proofs, and requires are allowed in module files.
        The resulting lemma map holds the module's own definitions; names
        brought in by its requires are not re-exported.
        """
        env = kernel.ProofEnv()
        ps = None
        imported: set[str] = set()

        def resolve(path: tuple[str, ...]):
            m = self.require(path, lazy_prefixes=lazy_prefixes)
            if m is not None:
                imported.update(m)
            return m

        try:
            sentences = lexer.split(source)
        except lexer.LexError as e:
            raise LoadError(f"module {name}: {e.message} at offset {e.offset}") from None
        for s in sentences:
            try:
                v = kernel.parse_vernac(s.text)
            except kernel.ParseError as e:
                raise LoadError(
                    f"module {name}: parse error at offset {s.start + e.start}: {e.message}"
                ) from None
            if isinstance(v, kernel.Check):
                raise LoadError(f"module {name}: Check is not allowed in module files")
            try:
                env, ps, _msgs = kernel.exec_vernac(env, ps, v, resolve=resolve)
            except kernel.ExecError as e:
                raise LoadError(f"module {name}: {e.message}") from None
        if ps is not None:
            raise LoadError(f"module {name}: unfinished proof")
        own = {k: p for k, p in env.lemmas.items() if k not in imported}
        return LoadedModule(name, own)

    # -- paths ------------------------------------------------------------

    def _search_roots(self, base: str | Path) -> list[Path]:
        if str(base):
            return [Path(base)]
        return list(self.roots)

    def _bundle_path(self, base: str | Path, name: str) -> Path:
        for root in self._search_roots(base):
            p = root / f"{name}.json"
            if p.is_file():
                return p
        raise LoadError(f"cannot find bundle {name}")


def build_tree(srcdir: str | Path, out: str | Path) -> list[str]:
    """Build bundle manifests from a source tree.

    Every top-level directory of srcdir becomes one bundle; each directory
    containing .v files becomes a package whose pkg_id is the directory's
    path parts. An optional deps.txt (one bundle name per line, '#' comments)
    declares dependencies. Sources are copied under the output root so the
    root serves on its own. Returns the bundle names written.
    """
    srcdir, out = Path(srcdir), Path(out)
    if not srcdir.is_dir():
        raise LoadError(f"not a directory: {srcdir}")
    out.mkdir(parents=True, exist_ok=True)
    names: list[str] = []
    for bdir in sorted(d for d in srcdir.iterdir() if d.is_dir()):
        desc = bdir.name
        deps: list[str] = []
        deps_file = bdir / "deps.txt"
        if deps_file.is_file():
            for line in deps_file.read_text(encoding="utf-8").splitlines():
                line = line.strip()
                if line and not line.startswith("#"):
                    deps.append(line)
        groups: dict[Path, list[str]] = {}
        for f in sorted(bdir.rglob("*.v")):
            groups.setdefault(f.parent, []).append(f.name)
        pkgs = []
        for d in sorted(groups):
            rel = d.relative_to(srcdir)
            dest = out.joinpath(*rel.parts)
            dest.mkdir(parents=True, exist_ok=True)
            for fname in groups[d]:
                src_file = d / fname
                dst_file = dest / fname
                if src_file.resolve() != dst_file.resolve():
                    dst_file.write_text(src_file.read_text(encoding="utf-8"), encoding="utf-8")
            pkgs.append(Package(rel.parts, tuple(groups[d]), ()))
        manifest = bundle_to_json(Bundle(desc, tuple(deps), tuple(pkgs)))
        (out / f"{desc}.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
        names.append(desc)
    return names

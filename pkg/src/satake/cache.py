"""Persistent append-only cache of KL polynomials.

One JSON-lines file per (datum, lattice).  The first line is a header
``{"format": "satake-kl-cache", "version": 1, "datum": ..., "lattice": ...}``;
every later line is one record

    {"x": key, "y": key, "p": {exp: coeff}, "sha256": hex}

where keys are the canonical element serializations of :mod:`satake.weyl` and
the checksum covers the canonical JSON of ``[x, y, p]``.  A truncated last line
(interrupted append) is dropped and cut off before the next write; records
with a bad checksum are skipped with a warning.  Files with an unknown format
or version are refused.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import CacheError
from .polys import IntPoly

log = logging.getLogger(__name__)

FORMAT = "satake-kl-cache"
VERSION = 1
ENV_VAR = "SATAKE_CACHE"


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "satake"


def _checksum(x: str, y: str, p: dict) -> str:
    blob = json.dumps([x, y, p], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def encode_record(x: str, y: str, poly: IntPoly) -> str:
    p = poly.to_json()
    rec = {"x": x, "y": y, "p": p, "sha256": _checksum(x, y, p)}
    return json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n"


class KLCache:
    """Store interface for :class:`satake.klhecke.KLEngine`."""

    def __init__(self, path, datum_label: str = "", lattice: str = ""):
        self.path = Path(path)
        self.datum_label = datum_label
        self.lattice = lattice
        self.table: Dict[Tuple[str, str], IntPoly] = {}
        self.warnings: List[str] = []
        self._lock = threading.Lock()
        self._good_end = 0
        self._load()

    # --- loading -------------------------------------------------------------
    def _warn(self, msg: str) -> None:
        self.warnings.append(msg)
        log.warning("%s: %s", self.path, msg)

    def _load(self) -> None:
        if not self.path.exists():
            return
        data = self.path.read_bytes()
        if not data:
            return
        lines = data.split(b"\n")
        complete = lines[:-1]        # the piece after the final newline is partial
        tail = lines[-1]
        if tail:
            self._warn("truncated trailing record ignored")
        offset = 0
        for lineno, raw in enumerate(complete):
            end = offset + len(raw) + 1
            if lineno == 0:
                self._check_header(raw)
            else:
                self._load_record(raw, lineno + 1)
            offset = end
        self._good_end = offset
        if not complete:
            # header itself was cut off
            self._good_end = 0

    def _check_header(self, raw: bytes) -> None:
        try:
            head = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CacheError(f"{self.path}: unreadable cache header") from exc
        if not isinstance(head, dict) or head.get("format") != FORMAT:
            raise CacheError(f"{self.path}: not a {FORMAT} file")
        if head.get("version") != VERSION:
            raise CacheError(f"{self.path}: unsupported cache version {head.get('version')!r} "
                             f"(this build reads version {VERSION})")

    def _load_record(self, raw: bytes, lineno: int) -> None:
        try:
            rec = json.loads(raw)
            x, y, p = rec["x"], rec["y"], rec["p"]
            ok = rec["sha256"] == _checksum(x, y, p)
        except (json.JSONDecodeError, KeyError, TypeError):
            ok = False
        if not ok:
            self._warn(f"line {lineno}: corrupted record skipped")
            return
        self.table[(x, y)] = IntPoly.from_json(p)

    # --- engine interface ------------------------------------------------------
    def items(self, group) -> Iterator[Tuple[str, str, IntPoly]]:
        for (x, y), poly in sorted(self.table.items()):
            yield x, y, poly

    def record(self, group, x, y, poly: IntPoly) -> None:
        xk, yk = group.serialize(x), group.serialize(y)
        line = encode_record(xk, yk, poly).encode()
        with self._lock:
            if (xk, yk) in self.table:
                return
            self.table[(xk, yk)] = poly
            self._append(line)

    def _append(self, line: bytes) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fresh = not self.path.exists() or self._good_end == 0
        if not fresh and self.path.stat().st_size != self._good_end:
            # drop a partial record left by an interrupted writer
            os.truncate(self.path, self._good_end)
        with open(self.path, "wb" if fresh else "ab") as fh:
            if fresh:
                header = json.dumps({"format": FORMAT, "version": VERSION,
                                     "datum": self.datum_label, "lattice": self.lattice},
                                    sort_keys=True, separators=(",", ":")) + "\n"
                fh.write(header.encode())
            # one write per record; a crash leaves at most a partial last line
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())
            self._good_end = fh.tell()

    def __len__(self) -> int:
        return len(self.table)


def cache_path(datum, directory: Optional[Path] = None) -> Path:
    base = Path(directory) if directory is not None else default_dir()
    return base / f"kl-{datum.label}-{datum.lattice}.jsonl"


def open_cache(datum, directory: Optional[Path] = None) -> KLCache:
    return KLCache(cache_path(datum, directory), datum.label, datum.lattice)


def attach_cache(datum, directory: Optional[Path] = None):
    """Fresh shared KL engine for ``datum`` backed by the on-disk cache."""
    from .klhecke import kl_engine

    store = open_cache(datum, directory)
    return kl_engine(datum, store), store

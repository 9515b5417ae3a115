"""Run manifest, atomic file writes, and the per-directory run lock."""

from __future__ import annotations

import contextlib
import hashlib
import json
import os
import tempfile
from pathlib import Path

VERSION = "0.1.0"
MANIFEST_NAME = "manifest.json"
LOCK_NAME = ".bibnet.lock"


class LockError(RuntimeError):
    """Another run owns the output directory."""


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write-then-rename so a crash never leaves a partial file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


@contextlib.contextmanager
def output_lock(out_dir: str | Path):
    """One process per output directory."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lock = out_dir / LOCK_NAME
    try:
        fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise LockError(
            f"output directory {out_dir} is locked by another run ({lock})"
        ) from None
    try:
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        yield
    finally:
        with contextlib.suppress(OSError):
            os.unlink(lock)


class RunManifest:
    """Config echo, per-stage info and timings, and file digests."""

    def __init__(self, data: dict | None = None):
        self.data = data or {
            "version": VERSION,
            "config": {},
            "stages": {},
            "graphs": {},
            "files": {},
        }

    @classmethod
    def load(cls, out_dir: str | Path) -> "RunManifest":
        path = Path(out_dir) / MANIFEST_NAME
        if not path.exists():
            raise FileNotFoundError(f"no manifest at {path}")
        return cls(json.loads(path.read_text(encoding="utf-8")))

    @classmethod
    def load_or_new(cls, out_dir: str | Path) -> "RunManifest":
        try:
            return cls.load(out_dir)
        except FileNotFoundError:
            return cls()

    def record_stage(self, name: str, seconds: float, info: dict) -> None:
        self.data["stages"][name] = {"seconds": round(seconds, 6), **info}

    def refresh_files(self, out_dir: str | Path) -> None:
        """Re-digest every output file so the inventory stays complete."""
        out_dir = Path(out_dir)
        files = {}
        for path in sorted(out_dir.rglob("*")):
            if not path.is_file():
                continue
            rel = path.relative_to(out_dir).as_posix()
            if rel in (MANIFEST_NAME, LOCK_NAME):
                continue
            files[rel] = sha256_file(path)
        self.data["files"] = files

    def save(self, out_dir: str | Path) -> None:
        text = json.dumps(self.data, indent=2, sort_keys=True) + "\n"
        atomic_write_text(Path(out_dir) / MANIFEST_NAME, text)

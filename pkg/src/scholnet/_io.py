from __future__ import annotations

import csv
import gzip
import io
import json
import os
from pathlib import Path
from typing import IO, Any, Iterable, Iterator, Sequence

from .exceptions import CorpusParseError


def open_text(path: str | os.PathLike, mode: str = "r") -> IO[str]:
    """Open a text file, transparently handling ``.gz`` compression."""
    path = Path(path)
    if path.suffix == ".gz":
        if "w" in mode:
            # mtime=0 keeps compressed output byte-reproducible
            raw = gzip.GzipFile(path, mode="wb", mtime=0)
            return io.TextIOWrapper(raw, encoding="utf-8", newline="\n")
        return gzip.open(path, mode + "t", encoding="utf-8")
    return open(path, mode, encoding="utf-8", newline="\n" if "w" in mode else None)


def iter_jsonl(path: str | os.PathLike) -> Iterator[tuple[int, dict[str, Any]]]:
    """Yield ``(line_number, object)`` pairs, skipping blank lines."""
    with open_text(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusParseError(f"invalid JSON ({exc.msg})", str(path), lineno) from None
            if not isinstance(obj, dict):
                raise CorpusParseError("record is not a JSON object", str(path), lineno)
            yield lineno, obj


def write_jsonl(path: str | os.PathLike, records: Iterable[dict[str, Any]]) -> None:
    with open_text(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")


def resolve_input(directory: str | os.PathLike, stem: str) -> Path | None:
    """Find ``stem.jsonl`` or ``stem.jsonl.gz`` inside ``directory``."""
    directory = Path(directory)
    for name in (f"{stem}.jsonl", f"{stem}.jsonl.gz"):
        candidate = directory / name
        if candidate.exists():
            return candidate
    return None


def fmt_float(x: float) -> str:
    """Render a float with 12 significant digits (the byte-stable output format)."""
    return f"{x:.12g}"


def write_csv(path: str | os.PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)

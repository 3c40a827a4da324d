"""Tab-separated file helpers with atomic writes.

Every artifact the pipeline emits is plain TSV with a header row, written
via temp-file-plus-rename so a crashed stage never leaves partial output.
"""

from __future__ import annotations

import csv
import hashlib
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import DataError


def read_tsv_rows(path, expected_header: Sequence[str]) -> Iterator[tuple[int, list[str]]]:
    """Yield (line_number, fields) for each data row, validating the header.

    Line numbers are 1-based file lines, so error messages point at the
    actual offending row. Rows with the wrong field count raise DataError.
    """
    path = Path(path)
    ncols = len(expected_header)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("empty file, header row required", path=str(path)) from None
        if [h.strip() for h in header] != list(expected_header):
            raise DataError(
                f"bad header {header!r}, expected {list(expected_header)!r}",
                path=str(path),
                line=1,
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != ncols:
                raise DataError(
                    f"expected {ncols} tab-separated fields, got {len(row)}",
                    path=str(path),
                    line=lineno,
                )
            yield lineno, row


@contextmanager
def atomic_open(path, mode="w"):
    """Open a temp file next to ``path``; rename over it only on clean exit."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, mode, encoding="utf-8", newline="") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_tsv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write a TSV atomically. Cell values are stringified with :func:`fmt_cell`."""
    with atomic_open(path) as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt_cell(c) for c in row])


def fmt_cell(value) -> str:
    """Stable text form: floats at 12 significant digits, everything else str()."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()

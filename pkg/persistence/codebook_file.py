"""CSV codebook format.

    vqc,1,<M>,4
    <c0>,<c1>,<c2>,<c3>      (M rows, one centroid each)

Reals are written in the shortest positional decimal form that parses back to
the identical double, '.' as separator, "\\n" line terminators.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import List

import numpy as np

from pixelgrid.image import BLOCK_DIM
from quantizer.codebook import Codebook

CODEBOOK_TAG = "vqc"
CODEBOOK_VERSION = 1


class CodebookFormatError(ValueError):
    pass


class CodebookTagError(CodebookFormatError):
    pass


class CodebookVersionError(CodebookFormatError):
    pass


class CodebookSizeMismatchError(CodebookFormatError):
    pass


class CodebookValueError(CodebookFormatError):
    pass


class CodebookDimensionError(CodebookFormatError):
    pass


class CodebookRangeError(CodebookFormatError):
    pass


def format_real(value: float) -> str:
    return np.format_float_positional(float(value), unique=True, trim="-")


def save_codebook(codebook: Codebook) -> bytes:
    lines = [f"{CODEBOOK_TAG},{CODEBOOK_VERSION},{codebook.size},{BLOCK_DIM}"]
    for centroid in codebook.centroids:
        lines.append(",".join(format_real(v) for v in centroid))
    return ("\n".join(lines) + "\n").encode("ascii")


def _parse_int(token: str, field: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise CodebookValueError(f"{field}: expected an integer, got {token!r}") from None


def _parse_row(row: str, line_no: int) -> List[float]:
    fields = row.split(",")
    if len(fields) != BLOCK_DIM:
        raise CodebookDimensionError(f"line {line_no}: expected {BLOCK_DIM} components, got {len(fields)}")
    values = []
    for token in fields:
        try:
            value = float(token)
        except ValueError:
            raise CodebookValueError(f"line {line_no}: non-numeric component {token!r}") from None
        if not 0.0 <= value <= 255.0:
            raise CodebookRangeError(f"line {line_no}: component {token} outside [0, 255]")
        values.append(value)
    return values


def load_codebook(data: bytes) -> Codebook:
    """Parse a codebook file produced by save_codebook."""
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as exc:
        raise CodebookValueError(f"codebook file is not ASCII text: {exc}") from None
    lines = [line.rstrip("\r") for line in text.split("\n")]
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CodebookTagError("empty codebook file")

    header = lines[0].split(",")
    if header[0] != CODEBOOK_TAG:
        raise CodebookTagError(f"expected tag {CODEBOOK_TAG!r}, got {header[0]!r}")
    if len(header) != 4:
        raise CodebookTagError(f"header must have 4 fields, got {len(header)}")
    version = _parse_int(header[1], "version")
    if version != CODEBOOK_VERSION:
        raise CodebookVersionError(f"unsupported codebook version {version}")
    size = _parse_int(header[2], "size")
    dimension = _parse_int(header[3], "dimension")
    if dimension != BLOCK_DIM:
        raise CodebookDimensionError(f"dimension must be {BLOCK_DIM}, got {dimension}")
    rows = lines[1:]
    if size < 1 or len(rows) != size:
        raise CodebookSizeMismatchError(f"header declares {size} centroids, file has {len(rows)} rows")

    centroids = [_parse_row(row, i + 2) for i, row in enumerate(rows)]
    return Codebook(np.asarray(centroids, dtype=np.float64))


def codebook_overhead_bytes(codebook: Codebook) -> int:
    """Size of the serialized codebook, i.e. what the decoder must receive besides the indices."""
    return len(save_codebook(codebook))


def read_codebook_file(path: str | Path) -> Codebook:
    path = Path(path)
    codebook = load_codebook(path.read_bytes())
    logging.info("Loaded %d-word codebook from %s", codebook.size, path)
    return codebook


def write_codebook_file(path: str | Path, codebook: Codebook) -> None:
    path = Path(path)
    path.write_bytes(save_codebook(codebook))
    logging.info("Saved %d-word codebook to %s", codebook.size, path)

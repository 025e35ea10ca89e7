"""Netpbm PGM reader/writer.

Reads P5 (binary) and P2 (ASCII) with maxval <= 255; header comments starting
with '#' are skipped. Writes P5 only, with the fixed header
"P5\\n<width> <height>\\n255\\n".
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Tuple

import numpy as np

from pixelgrid.image import GrayImage

_WHITESPACE = b" \t\r\n\v\f"


class PGMFormatError(ValueError):
    """Malformed PGM input. `field` names the offending part of the file."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field


class PGMMagicError(PGMFormatError):
    pass


class PGMHeaderError(PGMFormatError):
    pass


class PGMMaxvalError(PGMFormatError):
    pass


class PGMTruncatedError(PGMFormatError):
    pass


def _next_token(data: bytes, pos: int) -> Tuple[bytes, int]:
    """Return the next whitespace-delimited token at or after pos, skipping comments."""
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch[0] in _WHITESPACE:
            pos += 1
        elif ch == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, field: str) -> Tuple[int, int]:
    token, pos = _next_token(data, pos)
    if not token:
        raise PGMHeaderError(field, "missing value")
    if not token.isdigit():
        raise PGMHeaderError(field, f"expected a decimal integer, got {token[:16]!r}")
    return int(token), pos


def load_pgm(data: bytes) -> GrayImage:
    """Parse a P5 or P2 PGM image.

    Raises:
        PGMMagicError: magic is not P5/P2 (color and bitmap formats included).
        PGMHeaderError: missing or non-numeric width/height/maxval, or zero size.
        PGMMaxvalError: maxval outside [1, 255].
        PGMTruncatedError: fewer pixels than width * height.
    """
    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise PGMMagicError("magic", f"unsupported magic {magic!r}")
    pos = 2
    if pos < len(data) and data[pos] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        raise PGMMagicError("magic", f"unsupported magic {data[:3]!r}")

    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    if width < 1 or height < 1:
        raise PGMHeaderError("dimensions", f"image dimensions must be positive, got {width}x{height}")
    maxval, pos = _header_int(data, pos, "maxval")
    if maxval < 1 or maxval > 255:
        raise PGMMaxvalError("maxval", f"maxval must be in [1, 255], got {maxval}")

    count = width * height
    if magic == b"P5":
        # Exactly one whitespace byte separates maxval from the raster.
        if pos >= len(data):
            raise PGMTruncatedError("pixels", f"expected {count} bytes, got 0")
        raster = data[pos + 1 : pos + 1 + count]
        if len(raster) < count:
            raise PGMTruncatedError("pixels", f"expected {count} bytes, got {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        values: List[int] = []
        while len(values) < count:
            token, pos = _next_token(data, pos)
            if not token:
                raise PGMTruncatedError("pixels", f"expected {count} values, got {len(values)}")
            if not token.isdigit():
                raise PGMFormatError("pixels", f"non-numeric sample {token[:16]!r}")
            values.append(int(token))
        pixels = np.asarray(values, dtype=np.int64)

    if pixels.size and int(pixels.max()) > maxval:
        raise PGMFormatError("pixels", f"sample exceeds maxval {maxval}")
    return GrayImage(width=width, height=height, pixels=pixels.astype(np.uint8))


def save_pgm(image: GrayImage) -> bytes:
    """Encode as binary P5 with maxval 255."""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.tobytes()


def read_pgm_file(path: str | Path) -> GrayImage:
    path = Path(path)
    image = load_pgm(path.read_bytes())
    logging.debug("Loaded %s (%dx%d)", path, image.width, image.height)
    return image


def write_pgm_file(path: str | Path, image: GrayImage) -> None:
    path = Path(path)
    path.write_bytes(save_pgm(image))
    logging.debug("Wrote %s (%dx%d)", path, image.width, image.height)

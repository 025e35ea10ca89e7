"""VQI1 binary index-map format.

All integers big-endian unsigned:

    magic "VQI1" | orig_width u32 | orig_height u32 | block_w u8 (=2) |
    block_h u8 (=2) | codebook_size u32 | indices u16 * blocks_w * blocks_h
"""
from __future__ import annotations

import logging
import struct
from pathlib import Path

import numpy as np

from codec.vq_codec import IndexMap, IndexOutOfRangeError
from pixelgrid.image import BLOCK_SIDE, block_grid_shape

INDEX_MAGIC = b"VQI1"
_HEADER = struct.Struct(">4sIIBBI")
HEADER_SIZE = _HEADER.size


class IndexFileFormatError(ValueError):
    pass


class IndexMagicError(IndexFileFormatError):
    pass


class IndexTruncatedError(IndexFileFormatError):
    pass


def save_index_file(index_map: IndexMap) -> bytes:
    header = _HEADER.pack(
        INDEX_MAGIC,
        index_map.orig_width,
        index_map.orig_height,
        BLOCK_SIDE,
        BLOCK_SIDE,
        index_map.codebook_size,
    )
    return header + index_map.indices.astype(">u2").tobytes()


def load_index_file(data: bytes) -> IndexMap:
    """Parse a VQI1 file.

    Raises:
        IndexMagicError: magic is not VQI1.
        IndexTruncatedError: header or payload shorter than declared.
        IndexOutOfRangeError: an index is >= codebook_size.
        IndexFileFormatError: other structural problems (block dims, trailing bytes).
    """
    if data[:4] != INDEX_MAGIC:
        raise IndexMagicError(f"expected magic {INDEX_MAGIC!r}, got {bytes(data[:4])!r}")
    if len(data) < HEADER_SIZE:
        raise IndexTruncatedError(f"header needs {HEADER_SIZE} bytes, got {len(data)}")
    _, width, height, block_w, block_h, codebook_size = _HEADER.unpack_from(data)
    if (block_w, block_h) != (BLOCK_SIDE, BLOCK_SIDE):
        raise IndexFileFormatError(f"unsupported block size {block_w}x{block_h}")
    if width < 1 or height < 1:
        raise IndexFileFormatError(f"image dimensions must be positive, got {width}x{height}")
    if codebook_size < 1:
        raise IndexFileFormatError("codebook_size must be positive")

    blocks_w, blocks_h = block_grid_shape(width, height)
    expected = 2 * blocks_w * blocks_h
    payload = data[HEADER_SIZE:]
    if len(payload) < expected:
        raise IndexTruncatedError(f"payload declares {expected} bytes, got {len(payload)}")
    if len(payload) > expected:
        raise IndexFileFormatError(f"{len(payload) - expected} trailing bytes after payload")

    indices = np.frombuffer(payload, dtype=">u2").astype(np.int64)
    if indices.size and indices.max() >= codebook_size:
        raise IndexOutOfRangeError(f"index {int(indices.max())} >= codebook_size {codebook_size}")
    return IndexMap(orig_width=width, orig_height=height, codebook_size=codebook_size, indices=indices)


def read_index_file(path: str | Path) -> IndexMap:
    path = Path(path)
    index_map = load_index_file(path.read_bytes())
    logging.info("Loaded %d indices from %s", index_map.indices.size, path)
    return index_map


def write_index_file(path: str | Path, index_map: IndexMap) -> None:
    path = Path(path)
    path.write_bytes(save_index_file(index_map))
    logging.info("Saved %d indices to %s", index_map.indices.size, path)

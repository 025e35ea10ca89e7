"""Grayscale images and their 2x2 block-vector view.

Block (r, c) covers pixel rows 2r..2r+1 and columns 2c..2c+1. Its four
components are ordered top-left, top-right, bottom-left, bottom-right, and
blocks are emitted row-major. Odd widths/heights are padded on the right and
bottom by edge replication; blocks_to_image crops the padding away again.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

BLOCK_SIDE = 2
BLOCK_DIM = BLOCK_SIDE * BLOCK_SIDE

BlockArray = npt.NDArray[np.float64]


class ImageInvariantError(ValueError):
    """Raised when a GrayImage would violate its shape or range invariants."""


class BlockDimensionError(ValueError):
    """Raised when a block sequence does not tile the requested image size."""


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit grayscale image.

    Attributes:
        width: Columns, >= 1.
        height: Rows, >= 1.
        pixels: Row-major uint8 values, length width * height.
    """

    width: int
    height: int
    pixels: npt.NDArray[np.uint8]

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ImageInvariantError(f"image dimensions must be positive, got {self.width}x{self.height}")
        raw = np.asarray(self.pixels)
        if raw.size != self.width * self.height:
            raise ImageInvariantError(
                f"expected {self.width * self.height} pixels for {self.width}x{self.height}, got {raw.size}"
            )
        if raw.dtype.kind not in "biuf":
            raise ImageInvariantError(f"pixel values must be integers, got dtype {raw.dtype}")
        if raw.dtype.kind == "f" and not np.all(np.isfinite(raw) & (raw == np.floor(raw))):
            raise ImageInvariantError("pixel values must be whole numbers")
        if raw.size and (raw.min() < 0 or raw.max() > 255):
            raise ImageInvariantError("pixel values must lie in [0, 255]")
        flat = raw.reshape(-1).astype(np.uint8)
        flat.setflags(write=False)
        object.__setattr__(self, "pixels", flat)

    @classmethod
    def from_grid(cls, grid: npt.ArrayLike) -> "GrayImage":
        """Build from a (height, width) array."""
        arr = np.asarray(grid)
        if arr.ndim != 2:
            raise ImageInvariantError(f"expected a 2-D grid, got shape {arr.shape}")
        return cls(width=arr.shape[1], height=arr.shape[0], pixels=arr.reshape(-1))

    @property
    def grid(self) -> npt.NDArray[np.uint8]:
        """Pixels as a (height, width) view."""
        return self.pixels.reshape(self.height, self.width)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


def block_grid_shape(width: int, height: int) -> tuple[int, int]:
    """Return (blocks_w, blocks_h) for an image of the given size."""
    return -(-width // BLOCK_SIDE), -(-height // BLOCK_SIDE)


def image_to_blocks(image: GrayImage) -> BlockArray:
    """Split an image into row-major 2x2 block vectors.

    Returns:
        float64 array of shape (ceil(w/2) * ceil(h/2), 4).
    """
    blocks_w, blocks_h = block_grid_shape(image.width, image.height)
    pad_w = blocks_w * BLOCK_SIDE - image.width
    pad_h = blocks_h * BLOCK_SIDE - image.height
    grid = np.pad(image.grid, ((0, pad_h), (0, pad_w)), mode="edge")
    # (bh, 2, bw, 2) -> (bh, bw, 2, 2) keeps [tl, tr, bl, br] order per block.
    tiles = grid.reshape(blocks_h, BLOCK_SIDE, blocks_w, BLOCK_SIDE).transpose(0, 2, 1, 3)
    return tiles.reshape(-1, BLOCK_DIM).astype(np.float64)


def round_to_pixels(values: npt.ArrayLike) -> npt.NDArray[np.uint8]:
    """Clamp to [0, 255] and round half away from zero."""
    clipped = np.clip(np.asarray(values, dtype=np.float64), 0.0, 255.0)
    whole = np.floor(clipped)
    rounded = whole + ((clipped - whole) >= 0.5)
    return rounded.astype(np.uint8)


def blocks_to_image(blocks: npt.ArrayLike, width: int, height: int) -> GrayImage:
    """Reassemble block vectors into an image of the given true size.

    Components are rounded (ties away from zero) and clamped to [0, 255];
    padded rows and columns are discarded.
    """
    if width < 1 or height < 1:
        raise BlockDimensionError(f"image dimensions must be positive, got {width}x{height}")
    blocks_w, blocks_h = block_grid_shape(width, height)
    arr = np.asarray(blocks, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != BLOCK_DIM:
        raise BlockDimensionError(f"expected blocks of shape (N, {BLOCK_DIM}), got {arr.shape}")
    if arr.shape[0] != blocks_w * blocks_h:
        raise BlockDimensionError(
            f"{width}x{height} needs {blocks_w * blocks_h} blocks, got {arr.shape[0]}"
        )
    tiles = round_to_pixels(arr).reshape(blocks_h, blocks_w, BLOCK_SIDE, BLOCK_SIDE)
    grid = tiles.transpose(0, 2, 1, 3).reshape(blocks_h * BLOCK_SIDE, blocks_w * BLOCK_SIDE)
    return GrayImage.from_grid(grid[:height, :width])

"""Image <-> index map conversion with a trained codebook."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from pixelgrid.image import GrayImage, block_grid_shape, blocks_to_image, image_to_blocks
from quantizer.codebook import Codebook
from quantizer.lbg import nearest_centroids
from schemas.models import MAX_CODEBOOK_SIZE


class CodecError(ValueError):
    pass


class CodebookTooLargeError(CodecError):
    pass


class CodebookMismatchError(CodecError):
    pass


class IndexOutOfRangeError(CodecError):
    pass


@dataclass(frozen=True, eq=False)
class IndexMap:
    """Compressed image: one codeword index per 2x2 block, row-major.

    Attributes:
        orig_width: True image width in pixels.
        orig_height: True image height in pixels.
        codebook_size: Size M of the codebook the indices refer to.
        indices: uint16 array of length blocks_w * blocks_h.
    """

    orig_width: int
    orig_height: int
    codebook_size: int
    indices: npt.NDArray[np.uint16]

    def __post_init__(self) -> None:
        if self.orig_width < 1 or self.orig_height < 1:
            raise CodecError(f"image dimensions must be positive, got {self.orig_width}x{self.orig_height}")
        if not 1 <= self.codebook_size <= MAX_CODEBOOK_SIZE:
            raise CodebookTooLargeError(
                f"codebook size must be in [1, {MAX_CODEBOOK_SIZE}], got {self.codebook_size}"
            )
        raw = np.asarray(self.indices).reshape(-1)
        expected = self.blocks_w * self.blocks_h
        if raw.size != expected:
            raise CodecError(f"expected {expected} indices, got {raw.size}")
        if raw.size and (raw.min() < 0 or raw.max() >= self.codebook_size):
            raise IndexOutOfRangeError(f"indices must lie in [0, {self.codebook_size})")
        arr = raw.astype(np.uint16)
        arr.setflags(write=False)
        object.__setattr__(self, "indices", arr)

    @property
    def blocks_w(self) -> int:
        return block_grid_shape(self.orig_width, self.orig_height)[0]

    @property
    def blocks_h(self) -> int:
        return block_grid_shape(self.orig_width, self.orig_height)[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexMap):
            return NotImplemented
        return (
            self.orig_width == other.orig_width
            and self.orig_height == other.orig_height
            and self.codebook_size == other.codebook_size
            and np.array_equal(self.indices, other.indices)
        )

    def __repr__(self) -> str:
        return f"IndexMap({self.orig_width}x{self.orig_height}, M={self.codebook_size})"


def compress_image(image: GrayImage, codebook: Codebook) -> IndexMap:
    """Replace every 2x2 block with the index of its nearest codeword."""
    if codebook.size > MAX_CODEBOOK_SIZE:
        raise CodebookTooLargeError(f"codebook has {codebook.size} words; at most {MAX_CODEBOOK_SIZE} are indexable")
    owner, _ = nearest_centroids(image_to_blocks(image), codebook.centroids)
    logging.info("Compressed %dx%d image into %d indices", image.width, image.height, owner.size)
    return IndexMap(
        orig_width=image.width,
        orig_height=image.height,
        codebook_size=codebook.size,
        indices=owner,
    )


def decompress_image(index_map: IndexMap, codebook: Codebook) -> GrayImage:
    """Look up every index and reassemble the image at its original size."""
    if index_map.codebook_size != codebook.size:
        raise CodebookMismatchError(
            f"index map expects a {index_map.codebook_size}-word codebook, got {codebook.size} words"
        )
    indices = index_map.indices.astype(np.int64)
    if indices.size and indices.max() >= codebook.size:
        raise IndexOutOfRangeError(f"index {int(indices.max())} outside codebook of size {codebook.size}")
    return blocks_to_image(codebook.centroids[indices], index_map.orig_width, index_map.orig_height)

"""Pixel grids: PGM I/O and the 2x2 block-vector view."""
from pixelgrid.image import (
    BLOCK_DIM,
    BLOCK_SIDE,
    BlockDimensionError,
    GrayImage,
    ImageInvariantError,
    block_grid_shape,
    blocks_to_image,
    image_to_blocks,
)
from pixelgrid.pgm import (
    PGMFormatError,
    PGMHeaderError,
    PGMMagicError,
    PGMMaxvalError,
    PGMTruncatedError,
    load_pgm,
    read_pgm_file,
    save_pgm,
    write_pgm_file,
)

__all__ = [
    "BLOCK_DIM",
    "BLOCK_SIDE",
    "BlockDimensionError",
    "GrayImage",
    "ImageInvariantError",
    "PGMFormatError",
    "PGMHeaderError",
    "PGMMagicError",
    "PGMMaxvalError",
    "PGMTruncatedError",
    "block_grid_shape",
    "blocks_to_image",
    "image_to_blocks",
    "load_pgm",
    "read_pgm_file",
    "save_pgm",
    "write_pgm_file",
]

"""Tests for compress_image / decompress_image."""
import tracemalloc

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from codec.vq_codec import (
    CodebookMismatchError,
    CodebookTooLargeError,
    IndexMap,
    IndexOutOfRangeError,
    compress_image,
    decompress_image,
)
from pixelgrid.image import GrayImage, blocks_to_image, image_to_blocks
from quantizer.codebook import Codebook
from quantizer.lbg import assign_members
from quantizer.trainer import train_codebook
from schemas.models import TrainerConfig
from tests.conftest import constant_image


@pytest.fixture
def photo_codebook(train_photo):
    codebook, _ = train_codebook(image_to_blocks(train_photo), TrainerConfig(target_size=64))
    return codebook


def test_single_centroid_maps_everything_to_zero(eval_photo):
    index_map = compress_image(eval_photo, Codebook([[128, 128, 128, 128]]))
    assert index_map.codebook_size == 1
    assert not index_map.indices.any()


def test_blocks_equal_to_centroids_map_to_their_positions():
    centroids = [[0, 0, 0, 0], [10, 20, 30, 40], [200, 100, 50, 25], [255, 255, 255, 255]]
    order = [2, 0, 3, 1, 1, 2]
    image = blocks_to_image([centroids[k] for k in order], 6, 4)
    index_map = compress_image(image, Codebook(centroids))
    assert index_map.indices.tolist() == order
    assert (index_map.blocks_w, index_map.blocks_h) == (3, 2)


def test_200x200_image_gives_10000_indices(eval_photo, photo_codebook):
    index_map = compress_image(eval_photo, photo_codebook)
    assert index_map.indices.shape == (10000,)
    assert index_map.indices.max() < 64
    assert (index_map.orig_width, index_map.orig_height) == (200, 200)


def test_compress_rejects_oversized_codebook():
    codebook = Codebook(np.zeros((65537, 4)))
    with pytest.raises(CodebookTooLargeError):
        compress_image(constant_image(2, 2), codebook)


def test_decompress_keeps_dimensions(photo_codebook):
    image = GrayImage.from_grid(np.arange(35, dtype=np.uint8).reshape(5, 7))
    restored = decompress_image(compress_image(image, photo_codebook), photo_codebook)
    assert (restored.width, restored.height) == (7, 5)


def test_constant_image_reconstructs_exactly():
    image = constant_image(30, 30, 93)
    codebook, _ = train_codebook(image_to_blocks(image), TrainerConfig(target_size=8))
    assert decompress_image(compress_image(image, codebook), codebook) == image


def test_all_zero_indices_tile_centroid_zero():
    codebook = Codebook([[10.4, 20.5, 30.6, 40.0], [0, 0, 0, 0]])
    index_map = IndexMap(orig_width=4, orig_height=2, codebook_size=2, indices=[0, 0])
    image = decompress_image(index_map, codebook)
    assert image.grid.tolist() == [[10, 21, 10, 21], [31, 40, 31, 40]]


def test_decompress_rejects_codebook_size_mismatch():
    index_map = IndexMap(orig_width=2, orig_height=2, codebook_size=64, indices=[5])
    with pytest.raises(CodebookMismatchError):
        decompress_image(index_map, Codebook([[0, 0, 0, 0], [1, 1, 1, 1]]))


def test_index_map_rejects_out_of_range_index():
    with pytest.raises(IndexOutOfRangeError):
        IndexMap(orig_width=2, orig_height=2, codebook_size=4, indices=[4])


def test_index_map_rejects_wrong_length():
    with pytest.raises(ValueError):
        IndexMap(orig_width=4, orig_height=4, codebook_size=4, indices=[0, 1, 2])


@given(
    st.lists(st.integers(0, 31), min_size=1, max_size=16, unique=True),
    arrays(np.float64, (16, 4), elements=st.floats(0.0, 0.9)),
    arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12))),
)
@settings(max_examples=60, deadline=None)
def test_round_trip_is_a_fixed_point(levels, jitter, grid):
    # Centroids on an 8-step lattice: rounding never crosses a decision boundary.
    centroids = np.array(levels, dtype=np.float64)[:, None] * 8.0 + jitter[: len(levels)]
    codebook = Codebook(centroids)
    image = GrayImage.from_grid(grid)
    once = decompress_image(compress_image(image, codebook), codebook)
    twice = decompress_image(compress_image(once, codebook), codebook)
    assert twice == once


def test_unrounded_reconstruction_error_equals_assignment_distortion(eval_photo, photo_codebook):
    blocks = image_to_blocks(eval_photo)
    index_map = compress_image(eval_photo, photo_codebook)
    unrounded = photo_codebook.centroids[index_map.indices.astype(np.int64)]
    _, distortion = assign_members(blocks, photo_codebook)
    assert float(np.mean((unrounded - blocks) ** 2)) == pytest.approx(distortion, rel=1e-9)
    reconstructed = decompress_image(index_map, photo_codebook)
    assert reconstructed == blocks_to_image(unrounded, 200, 200)


def test_large_codebook_keeps_memory_flat():
    # 8192 distinct words: four base-16 digits scaled to [0, 240].
    words = np.arange(8192)
    centroids = np.stack([(words >> s) & 15 for s in (12, 8, 4, 0)], axis=1).astype(np.float64) * 16.0
    order = (np.arange(4096) * 7919) % 8192
    image = blocks_to_image(centroids[order], 128, 128)
    tracemalloc.start()
    try:
        index_map = compress_image(image, Codebook(centroids))
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    assert index_map.indices.tolist() == order.tolist()
    assert peak < 256 * 2**20

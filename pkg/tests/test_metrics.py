"""Tests for mse, psnr, entropy and rate figures."""
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from codec.vq_codec import IndexMap
from metrics.quality import (
    DimensionMismatchError,
    EmptyIndexStreamError,
    NegativeMSEError,
    build_quality_report,
    index_bits,
    mse,
    psnr,
    rate_report,
    shannon_entropy,
)
from pixelgrid.image import GrayImage
from tests.conftest import constant_image


def _index_map(codebook_size: int, indices=None) -> IndexMap:
    return IndexMap(
        orig_width=200,
        orig_height=200,
        codebook_size=codebook_size,
        indices=np.zeros(10000, dtype=np.int64) if indices is None else indices,
    )


# ---------- mse ----------

def test_mse_of_identical_images_is_zero(eval_photo):
    assert mse(eval_photo, eval_photo) == 0.0


def test_mse_examples():
    assert mse(GrayImage(2, 2, [0, 0, 0, 0]), GrayImage(2, 2, [10, 10, 10, 10])) == 100.0
    assert mse(GrayImage(2, 1, [0, 10]), GrayImage(2, 1, [5, 10])) == 12.5


def test_mse_rejects_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        mse(constant_image(2, 2), constant_image(2, 3))


# ---------- psnr ----------

@pytest.mark.parametrize("mse_value, expected", [(165.0547, 25.9545), (164.5081, 25.9689), (65025.0, 0.0)])
def test_psnr_anchors(mse_value, expected):
    assert psnr(mse_value) == pytest.approx(expected, abs=0.005)


def test_psnr_of_zero_mse_is_infinite():
    assert psnr(0.0) == math.inf


def test_psnr_rejects_negative_mse():
    with pytest.raises(NegativeMSEError):
        psnr(-1.0)


def test_psnr_decreases_as_mse_grows():
    values = [psnr(m) for m in np.linspace(0.5, 65025.0, 200)]
    assert all(a > b for a, b in zip(values, values[1:]))


# ---------- shannon_entropy ----------

def test_entropy_of_constant_stream_is_zero():
    assert shannon_entropy([3] * 50, 64) == 0.0


def test_entropy_of_uniform_stream_is_log2_m():
    assert shannon_entropy(np.repeat(np.arange(64), 10), 64) == 6.0


def test_entropy_example_one_and_a_half_bits():
    assert shannon_entropy([0, 0, 1, 2], 4) == pytest.approx(1.5, abs=1e-12)


def test_entropy_rejects_empty_stream():
    with pytest.raises(EmptyIndexStreamError):
        shannon_entropy([], 4)


def test_entropy_rejects_out_of_range_index():
    with pytest.raises(ValueError):
        shannon_entropy([0, 4], 4)


@given(st.integers(1, 10).flatmap(lambda b: st.tuples(st.just(2**b), st.lists(st.integers(0, 2**b - 1), min_size=1))))
@settings(max_examples=100, deadline=None)
def test_entropy_is_bounded_by_log2_m(case):
    m, indices = case
    entropy = shannon_entropy(indices, m)
    assert 0.0 <= entropy <= math.log2(m)


# ---------- rate_report ----------

def test_index_bits():
    assert [index_bits(m) for m in (1, 2, 3, 64, 65536)] == [0, 1, 2, 6, 16]


def test_rates_for_64_word_codebook():
    rates = rate_report(_index_map(64), 4.6031)
    assert rates.raw_index_bpp == 1.5
    assert rates.compression_ratio == pytest.approx(5.3333, abs=1e-4)
    assert rates.compression_ratio == pytest.approx(8.0 / 1.5, abs=1e-9)
    assert rates.entropy_bpp == pytest.approx(1.150775, abs=1e-9)
    assert rates.original_bpp == 8.0


def test_rates_for_2_word_codebook():
    rates = rate_report(_index_map(2), 1.0)
    assert rates.raw_index_bpp == 0.25
    assert rates.compression_ratio == 32.0


def test_one_word_codebook_needs_no_index_bits():
    rates = rate_report(_index_map(1), 0.0)
    assert rates.raw_index_bpp == 0.0
    assert rates.compression_ratio == math.inf


@given(st.integers(1, 16), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_entropy_rate_never_exceeds_raw_rate(bits, seed):
    m = 2**bits
    indices = np.random.default_rng(seed).integers(0, m, size=10000)
    rates = rate_report(_index_map(m, indices), shannon_entropy(indices, m))
    assert rates.entropy_bpp <= rates.raw_index_bpp


# ---------- build_quality_report ----------

def test_quality_report_for_lossless_reconstruction():
    image = constant_image(200, 200, 40)
    report = build_quality_report(image, image, _index_map(64))
    assert report.mse == 0.0
    assert report.psnr_db == math.inf
    assert report.entropy_bits == 0.0
    assert report.raw_index_bpp == 1.5
    payload = json.loads(report.model_dump_json())
    assert payload["psnr_db"] == "Infinity"
    assert "psnr_db = inf" in report.as_text()


def test_quality_report_keys(eval_photo):
    reconstructed = constant_image(200, 200, 128)
    report = build_quality_report(eval_photo, reconstructed, _index_map(64, np.arange(10000) % 64))
    assert list(report.model_dump()) == [
        "mse",
        "psnr_db",
        "entropy_bits",
        "raw_index_bpp",
        "entropy_bpp",
        "original_bpp",
        "compression_ratio",
    ]
    assert report.psnr_db == pytest.approx(psnr(report.mse))
    assert report.entropy_bits == pytest.approx(6.0, abs=1e-3)

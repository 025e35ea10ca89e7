"""Reconstruction quality and rate figures for a compression run."""
from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt

from codec.vq_codec import IndexMap
from pixelgrid.image import BLOCK_DIM, GrayImage
from schemas.models import ORIGINAL_BPP, QualityReport, RateReport

PEAK = 255.0


class DimensionMismatchError(ValueError):
    pass


class NegativeMSEError(ValueError):
    pass


class EmptyIndexStreamError(ValueError):
    pass


def mse(a: GrayImage, b: GrayImage) -> float:
    """Mean squared pixel difference between two equally sized images."""
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatchError(f"cannot compare {a.width}x{a.height} with {b.width}x{b.height}")
    diff = a.pixels.astype(np.float64) - b.pixels.astype(np.float64)
    return float(np.mean(diff * diff))


def psnr(mse_value: float) -> float:
    """10 * log10(255^2 / mse) in dB; +inf when mse is 0."""
    if mse_value < 0:
        raise NegativeMSEError(f"mse must be non-negative, got {mse_value}")
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse_value)


def shannon_entropy(indices: npt.ArrayLike, m: int) -> float:
    """Empirical entropy of an index stream in bits per index.

    The result is clamped to [0, log2 m] to absorb floating-point residue.
    """
    arr = np.asarray(indices, dtype=np.int64).reshape(-1)
    if arr.size == 0:
        raise EmptyIndexStreamError("entropy of an empty index stream is undefined")
    if arr.min() < 0 or arr.max() >= m:
        raise ValueError(f"indices must lie in [0, {m})")
    counts = np.bincount(arr, minlength=m)
    p = counts[counts > 0] / arr.size
    entropy = float(-np.sum(p * np.log2(p)))
    return min(max(entropy, 0.0), math.log2(m))


def index_bits(m: int) -> int:
    """Fixed-width bits needed per index for an m-word codebook."""
    return math.ceil(math.log2(m)) if m > 1 else 0


def rate_report(index_map: IndexMap, entropy_bits: float) -> RateReport:
    """Bits per pixel of the raw and entropy-bounded index streams.

    A one-word codebook needs zero bits per index, so its ratio is +inf.
    """
    raw_bpp = index_bits(index_map.codebook_size) / BLOCK_DIM
    ratio = ORIGINAL_BPP / raw_bpp if raw_bpp > 0 else math.inf
    return RateReport(
        raw_index_bpp=raw_bpp,
        entropy_bpp=entropy_bits / BLOCK_DIM,
        original_bpp=ORIGINAL_BPP,
        compression_ratio=ratio,
    )


def build_quality_report(original: GrayImage, reconstructed: GrayImage, index_map: IndexMap) -> QualityReport:
    """Assemble mse, psnr, entropy and rates for one compression run."""
    error = mse(original, reconstructed)
    entropy = shannon_entropy(index_map.indices, index_map.codebook_size)
    rates = rate_report(index_map, entropy)
    return QualityReport(
        mse=error,
        psnr_db=psnr(error),
        entropy_bits=entropy,
        **rates.model_dump(),
    )

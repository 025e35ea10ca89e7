"""Single-step operations of the splitting vector quantizer.

The squared error between a training vector x_i and a centroid c_j is
e_ij = (x_i - c_j)'(x_i - c_j). Every argmin over centroids breaks ties by
the lowest centroid index. Distortions are mean squared error per pixel
component, i.e. sum_i min_j e_ij / (4N).
"""
from __future__ import annotations

import logging
from typing import Tuple

import numpy as np
import numpy.typing as npt

from pixelgrid.image import BLOCK_DIM, BlockArray
from quantizer.codebook import Codebook, Membership
from quantizer.prng import SplitMix64
from schemas.models import DEFAULT_DELTA

# Upper bound on elements of the (rows, M, 4) distance temporary per batch.
_ELEMENT_BUDGET = 1 << 22


class EmptyTrainingSetError(ValueError):
    """Raised when training or initialization receives no vectors."""


def as_vectors(vectors: npt.ArrayLike) -> BlockArray:
    """Coerce to a float64 (N, 4) array."""
    arr = np.asarray(vectors, dtype=np.float64)
    if arr.size == 0:
        return arr.reshape(0, BLOCK_DIM)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != BLOCK_DIM:
        raise ValueError(f"expected vectors of shape (N, {BLOCK_DIM}), got {arr.shape}")
    return arr


def _squared_error(diff: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    # Fixed left-to-right component order: e_ij is bit-identical whatever M is.
    sq = diff * diff
    return ((sq[..., 0] + sq[..., 1]) + sq[..., 2]) + sq[..., 3]


def batch_rows(size: int, max_elements: int = _ELEMENT_BUDGET) -> int:
    """Vectors per batch so that a batch against size centroids stays within max_elements."""
    return max(1, max_elements // (size * BLOCK_DIM))


def nearest_centroids(
    vectors: BlockArray,
    centroids: npt.NDArray[np.float64],
    max_elements: int = _ELEMENT_BUDGET,
) -> Tuple[npt.NDArray[np.int64], npt.NDArray[np.float64]]:
    """Return (owner index, minimum squared error) for every vector.

    Vectors are processed in batches whose (rows, M, 4) temporary holds at
    most max_elements values, so memory stays flat as M grows. Each row is
    evaluated independently; the batch size never changes the result.
    """
    n = vectors.shape[0]
    owner = np.empty(n, dtype=np.int64)
    best = np.empty(n, dtype=np.float64)
    rows = batch_rows(centroids.shape[0], max_elements)
    for start in range(0, n, rows):
        batch = vectors[start : start + rows]
        errors = _squared_error(batch[:, None, :] - centroids[None, :, :])
        idx = np.argmin(errors, axis=1)
        owner[start : start + batch.shape[0]] = idx
        best[start : start + batch.shape[0]] = errors[np.arange(batch.shape[0]), idx]
    return owner, best


def init_codebook(vectors: npt.ArrayLike) -> Codebook:
    """Size-1 codebook holding the component-wise mean of all vectors."""
    arr = as_vectors(vectors)
    if arr.shape[0] == 0:
        raise EmptyTrainingSetError("cannot initialize a codebook from an empty training set")
    mean = np.clip(arr.mean(axis=0), 0.0, 255.0)
    return Codebook(mean.reshape(1, BLOCK_DIM))


def perturb_center(
    center: npt.ArrayLike, rng: SplitMix64, delta: float = DEFAULT_DELTA
) -> npt.NDArray[np.float64]:
    """Mutate a centroid by uniform noise on [-delta, +delta] per component.

    Consumes exactly four draws from rng, in component order. The result is
    clamped to [0, 255]; the input is left untouched.
    """
    if delta < 0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    base = np.asarray(center, dtype=np.float64).reshape(BLOCK_DIM)
    noise = np.array([rng.uniform_range(-delta, delta) for _ in range(BLOCK_DIM)])
    return np.clip(base + noise, 0.0, 255.0) + 0.0


def double_codebook(codebook: Codebook, rng: SplitMix64, delta: float = DEFAULT_DELTA) -> Codebook:
    """Originals first, unchanged and in order, then one mutant per original."""
    mutants = [perturb_center(c, rng, delta) for c in codebook.centroids]
    return Codebook(np.vstack([codebook.centroids, np.asarray(mutants)]))


def assign_members(vectors: npt.ArrayLike, codebook: Codebook) -> Tuple[Membership, float]:
    """Assign each vector to its nearest centroid.

    Returns:
        The membership vector and the per-component distortion.
    """
    arr = as_vectors(vectors)
    if arr.shape[0] == 0:
        raise EmptyTrainingSetError("cannot assign an empty training set")
    owner, best = nearest_centroids(arr, codebook.centroids)
    distortion = float(best.sum()) / (BLOCK_DIM * arr.shape[0])
    return Membership(owner), distortion


def recalc_centroids(
    vectors: npt.ArrayLike,
    membership: Membership,
    codebook: Codebook,
    rng: SplitMix64,
    delta: float = DEFAULT_DELTA,
) -> Codebook:
    """Migrate every centroid to the mean of its members.

    A centroid left without members is re-seeded with perturb_center applied
    to the migrated centroid of the cell carrying the largest summed error
    (measured against the input codebook, ties to the lowest index). Every
    empty cell draws from that same donor, in ascending index order. A donor
    whose cell has zero error is copied without perturbation.
    """
    arr = as_vectors(vectors)
    owner = membership.owner
    size = codebook.size
    if owner.size != arr.shape[0]:
        raise ValueError(f"membership covers {owner.size} vectors, training set has {arr.shape[0]}")
    if owner.size and (owner.min() < 0 or owner.max() >= size):
        raise ValueError(f"membership references centroids outside [0, {size})")

    counts = np.bincount(owner, minlength=size)
    sums = np.stack(
        [np.bincount(owner, weights=arr[:, k], minlength=size) for k in range(BLOCK_DIM)],
        axis=1,
    )
    filled = counts > 0
    updated = np.array(codebook.centroids, dtype=np.float64)
    updated[filled] = sums[filled] / counts[filled, None]
    updated = np.clip(updated, 0.0, 255.0)

    empty = np.flatnonzero(~filled)
    if empty.size:
        errors = _squared_error(arr - codebook.centroids[owner])
        cell_error = np.bincount(owner, weights=errors, minlength=size)
        cell_error[~filled] = -np.inf
        donor = int(np.argmax(cell_error))
        for j in empty:
            if cell_error[donor] > 0:
                updated[j] = perturb_center(updated[donor], rng, delta)
            else:
                # Nothing left to split: copy exactly, no draws.
                updated[j] = updated[donor]
            logging.info("Re-seeded empty centroid %d from cell %d", j, donor)
    return Codebook(updated)


def find_match(vector: npt.ArrayLike, codebook: Codebook) -> int:
    """Index of the centroid with the smallest squared error to vector."""
    owner, _ = nearest_centroids(as_vectors(vector), codebook.centroids)
    return int(owner[0])

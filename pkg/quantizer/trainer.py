"""Codebook training by repeated splitting and Lloyd passes.

Starting from the global mean, the codebook is doubled log2(M) times. Every
doubling is followed by `inner_iters` Lloyd passes (assignment, then
migration), and `refine_iters` further passes run after the last doubling.
"""
from __future__ import annotations

import logging
import time
from typing import List, Tuple

import numpy.typing as npt

from quantizer.codebook import Codebook
from quantizer.lbg import (
    EmptyTrainingSetError,
    as_vectors,
    assign_members,
    double_codebook,
    init_codebook,
    recalc_centroids,
)
from quantizer.prng import SplitMix64
from schemas.models import TrainerConfig, TrainerReport, TrainingRound


def _lloyd_pass(vectors, codebook: Codebook, rng: SplitMix64, delta: float) -> Tuple[Codebook, float]:
    membership, distortion = assign_members(vectors, codebook)
    return recalc_centroids(vectors, membership, codebook, rng, delta), distortion


def train_codebook(vectors: npt.ArrayLike, config: TrainerConfig) -> Tuple[Codebook, TrainerReport]:
    """Train a codebook of exactly config.target_size centroids.

    Args:
        vectors: Training block vectors, shape (N, 4).
        config: Validated trainer settings.

    Returns:
        The trained codebook and a report with one distortion entry per Lloyd
        pass. Output is fully determined by (vectors, config); only the
        elapsed time varies between runs.
    """
    arr = as_vectors(vectors)
    if arr.shape[0] == 0:
        raise EmptyTrainingSetError("training set is empty")

    start = time.perf_counter()
    rng = SplitMix64(config.seed)
    rounds: List[TrainingRound] = []

    codebook = init_codebook(arr)
    for r in range(config.rounds):
        codebook = double_codebook(codebook, rng, config.delta)
        for _ in range(config.inner_iters):
            codebook, distortion = _lloyd_pass(arr, codebook, rng, config.delta)
            rounds.append(TrainingRound(codebook_size=codebook.size, distortion=distortion))
        logging.info("Round %d/%d: %d centroids, distortion %.4f", r + 1, config.rounds, codebook.size, distortion)

    for _ in range(config.refine_iters):
        codebook, distortion = _lloyd_pass(arr, codebook, rng, config.delta)
        rounds.append(TrainingRound(codebook_size=codebook.size, distortion=distortion))

    _, final_distortion = assign_members(arr, codebook)
    elapsed = time.perf_counter() - start
    logging.info(
        "Trained %d-word codebook from %d vectors in %.3fs (distortion %.4f)",
        codebook.size,
        arr.shape[0],
        elapsed,
        final_distortion,
    )
    report = TrainerReport(rounds=rounds, final_distortion=final_distortion, elapsed=elapsed)
    return codebook, report

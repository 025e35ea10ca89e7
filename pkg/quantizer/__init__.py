"""Codebook training (splitting + Lloyd passes) and nearest-codeword search."""
from quantizer.codebook import Codebook, Membership
from quantizer.lbg import (
    EmptyTrainingSetError,
    assign_members,
    double_codebook,
    find_match,
    init_codebook,
    perturb_center,
    recalc_centroids,
)
from quantizer.prng import SplitMix64
from quantizer.trainer import train_codebook

__all__ = [
    "Codebook",
    "EmptyTrainingSetError",
    "Membership",
    "SplitMix64",
    "assign_members",
    "double_codebook",
    "find_match",
    "init_codebook",
    "perturb_center",
    "recalc_centroids",
    "train_codebook",
]

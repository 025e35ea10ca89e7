"""Codebook and membership containers."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from pixelgrid.image import BLOCK_DIM


@dataclass(frozen=True, eq=False)
class Codebook:
    """Ordered centroids c_0..c_{M-1}, each a 4-component vector in [0, 255].

    Centroids are stored as a read-only float64 array of shape (M, 4).
    """

    centroids: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        arr = np.array(self.centroids, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != BLOCK_DIM:
            raise ValueError(f"centroids must have shape (M, {BLOCK_DIM}), got {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("codebook must hold at least one centroid")
        if not np.all((arr >= 0.0) & (arr <= 255.0)):
            raise ValueError("centroid components must lie in [0, 255]")
        arr.setflags(write=False)
        object.__setattr__(self, "centroids", arr)

    @property
    def size(self) -> int:
        return int(self.centroids.shape[0])

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Codebook):
            return NotImplemented
        return self.centroids.shape == other.centroids.shape and self.centroids.tobytes() == other.centroids.tobytes()

    def __repr__(self) -> str:
        return f"Codebook(size={self.size})"


@dataclass(frozen=True, eq=False)
class Membership:
    """owner[i] is the index of the centroid that owns training vector i."""

    owner: npt.NDArray[np.int64]

    def __post_init__(self) -> None:
        arr = np.array(self.owner, dtype=np.int64).reshape(-1)
        arr.setflags(write=False)
        object.__setattr__(self, "owner", arr)

    def __len__(self) -> int:
        return int(self.owner.size)

    def populations(self, size: int) -> npt.NDArray[np.int64]:
        """Member count per centroid for a codebook of the given size."""
        return np.bincount(self.owner, minlength=size)

"""Shared fixtures: synthetic images and PGM files on disk."""
from __future__ import annotations

from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from pixelgrid.image import GrayImage
from pixelgrid.pgm import write_pgm_file

DATA_DIR = Path(__file__).parent / "data"


def smooth_photo(width: int, height: int, scale: float = 1.0) -> GrayImage:
    """Deterministic photo-like image: smooth shading over the full 8-bit range."""
    y, x = np.mgrid[0:height, 0:width].astype(np.float64) * scale
    values = (
        128.0
        + 70.0 * np.sin(x / 13.0) * np.cos(y / 17.0)
        + 40.0 * np.sin((x + 2.0 * y) / 29.0)
        + 15.0 * np.cos(x / 5.0 - y / 7.0)
    )
    return GrayImage.from_grid(np.clip(np.rint(values), 0, 255).astype(np.uint8))


def constant_image(width: int, height: int, value: int = 128) -> GrayImage:
    return GrayImage.from_grid(np.full((height, width), value, dtype=np.uint8))


@pytest.fixture
def train_photo() -> GrayImage:
    """100x100 training image (2500 blocks), the half-resolution view of eval_photo."""
    return smooth_photo(100, 100, scale=2.0)


@pytest.fixture
def eval_photo() -> GrayImage:
    """200x200 test image (10000 blocks)."""
    return smooth_photo(200, 200)


@pytest.fixture
def pgm_file(tmp_path: Path) -> Callable[[str, GrayImage], Path]:
    def _write(name: str, image: GrayImage) -> Path:
        path = tmp_path / name
        write_pgm_file(path, image)
        return path

    return _write


@pytest.fixture
def teapot_files() -> tuple[Path, Path]:
    """Natural photograph: 100x100 training image and its 200x200 source crop."""
    return DATA_DIR / "teapot100.pgm", DATA_DIR / "teapot200.pgm"

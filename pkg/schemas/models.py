"""
Pydantic data models for the vector quantization toolkit.

These schemas define the configuration objects accepted by the trainer and
the command-line front end, and the reports written to disk next to the
compressed artifacts.

Requires: Python 3.10+, Pydantic v2.
"""
from __future__ import annotations

import math
from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

MAX_CODEBOOK_SIZE = 65536
DEFAULT_DELTA = 1.0
ORIGINAL_BPP = 8.0


def is_power_of_two(value: int) -> bool:
    return value >= 1 and (value & (value - 1)) == 0


class TrainerConfig(BaseModel):
    """Knobs for codebook training.

    Attributes:
        target_size: Final codebook size M; a power of two. The number of
            doubling rounds is log2(target_size).
        delta: Half-width of the uniform perturbation applied when a centroid
            is split, in intensity units.
        seed: splitmix64 seed; identical seeds give identical codebooks.
        inner_iters: Lloyd passes after each doubling.
        refine_iters: Extra Lloyd passes after the final doubling.
    """

    model_config = ConfigDict(frozen=True)

    target_size: int = Field(ge=2, le=MAX_CODEBOOK_SIZE, description="Codebook size, power of two")
    delta: float = Field(default=DEFAULT_DELTA, gt=0.0, description="Perturbation half-width")
    seed: int = Field(default=0, ge=0, le=2**64 - 1, description="splitmix64 seed")
    inner_iters: int = Field(default=1, ge=1, description="Lloyd passes per doubling")
    refine_iters: int = Field(default=0, ge=0, description="Lloyd passes after the last doubling")

    @field_validator("target_size")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if not is_power_of_two(value):
            raise ValueError(f"target_size must be a power of two, got {value}")
        return value

    @field_validator("delta")
    @classmethod
    def _finite_delta(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("delta must be finite")
        return value

    @property
    def rounds(self) -> int:
        """Number of doubling rounds T."""
        return self.target_size.bit_length() - 1


class TrainingRound(BaseModel):
    """Distortion observed at the assignment step of one Lloyd pass."""

    codebook_size: int = Field(ge=1)
    distortion: float = Field(ge=0.0)


class TrainerReport(BaseModel):
    """Trace of a training run.

    Attributes:
        rounds: One entry per Lloyd pass, in execution order.
        final_distortion: Per-component MSE of the returned codebook over the
            training vectors.
        elapsed: Wall-clock seconds spent in training.
    """

    rounds: List[TrainingRound] = Field(default_factory=list)
    final_distortion: float = Field(default=0.0, ge=0.0)
    elapsed: float = Field(default=0.0, ge=0.0)


class RateReport(BaseModel):
    """Bit-rate figures derived from an index map."""

    raw_index_bpp: float = Field(ge=0.0, description="ceil(log2 M) / 4 bits per pixel")
    entropy_bpp: float = Field(ge=0.0, description="Index entropy / 4 bits per pixel")
    original_bpp: float = Field(default=ORIGINAL_BPP)
    compression_ratio: float = Field(gt=0.0, description="original_bpp / raw_index_bpp")


class QualityReport(BaseModel):
    """Evaluation quantities for one compression run.

    psnr_db (and compression_ratio for a one-word codebook) may be +infinity;
    JSON output renders those as the string "Infinity".
    """

    model_config = ConfigDict(ser_json_inf_nan="strings")

    mse: float = Field(ge=0.0)
    psnr_db: float
    entropy_bits: float = Field(ge=0.0, description="Bits per index")
    raw_index_bpp: float = Field(ge=0.0)
    entropy_bpp: float = Field(ge=0.0)
    original_bpp: float = Field(default=ORIGINAL_BPP)
    compression_ratio: float = Field(gt=0.0)

    def as_text(self) -> str:
        """Render as "key = value" lines in field order."""
        lines = []
        for key, value in self.model_dump().items():
            lines.append(f"{key} = {format_number(value)}")
        return "\n".join(lines)


class RunReport(QualityReport):
    """QualityReport plus the train/compress timings of a roundtrip run."""

    train_seconds: float = Field(ge=0.0)
    compress_seconds: float = Field(ge=0.0)


class RunConfig(BaseModel):
    """Parsed command line for one invocation of the toolkit."""

    command: Literal["train", "compress", "decompress", "roundtrip", "metrics", "inspect"]
    inputs: List[str] = Field(default_factory=list, description="Input paths in flag order")
    output: str | None = Field(default=None, description="Output file or directory")
    trainer: TrainerConfig | None = None
    report_format: Literal["text", "json"] = "text"


def format_number(value: float) -> str:
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)

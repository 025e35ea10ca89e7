"""
End-to-end compression experiment.

Implements the linear pipeline:
train (training image) -> compress (test image) -> decompress -> evaluate

and persists the codebook, index map, reconstruction and report into an
output directory. Timings cover the train and compress calls only.
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path

from codec.vq_codec import IndexMap, compress_image, decompress_image
from metrics.quality import build_quality_report
from persistence.codebook_file import codebook_overhead_bytes, write_codebook_file
from persistence.index_file import write_index_file
from pixelgrid.image import GrayImage, image_to_blocks
from pixelgrid.pgm import write_pgm_file
from quantizer.codebook import Codebook
from quantizer.trainer import train_codebook
from schemas.models import RunReport, TrainerConfig, TrainerReport

CODEBOOK_NAME = "codebook.cbk.csv"
INDEX_NAME = "test.vqi"
IMAGE_NAME = "reconstructed.pgm"
REPORT_NAME = "report.json"


@dataclass
class RoundtripResult:
    """Everything one roundtrip run produced."""

    codebook: Codebook
    trainer_report: TrainerReport
    index_map: IndexMap
    reconstructed: GrayImage
    report: RunReport
    codebook_overhead_bytes: int


class RoundtripRunner:
    """Runs the train/compress/decompress experiment and persists artifacts."""

    def __init__(self, out_dir: str | Path) -> None:
        self.out_dir = Path(out_dir)

    def run(self, train_image: GrayImage, test_image: GrayImage, config: TrainerConfig) -> RoundtripResult:
        """Execute a roundtrip run.

        Args:
            train_image: Image the codebook is trained on.
            test_image: Image compressed with the trained codebook.
            config: Trainer settings.

        Returns:
            The run's artifacts and its RunReport, already written to out_dir.
        """
        vectors = image_to_blocks(train_image)
        logging.info("Extracted %d training vectors from %dx%d image", len(vectors), train_image.width, train_image.height)

        start = time.perf_counter()
        codebook, trainer_report = train_codebook(vectors, config)
        train_seconds = time.perf_counter() - start

        start = time.perf_counter()
        index_map = compress_image(test_image, codebook)
        compress_seconds = time.perf_counter() - start

        reconstructed = decompress_image(index_map, codebook)
        quality = build_quality_report(test_image, reconstructed, index_map)
        report = RunReport(
            **quality.model_dump(),
            train_seconds=train_seconds,
            compress_seconds=compress_seconds,
        )
        result = RoundtripResult(
            codebook=codebook,
            trainer_report=trainer_report,
            index_map=index_map,
            reconstructed=reconstructed,
            report=report,
            codebook_overhead_bytes=codebook_overhead_bytes(codebook),
        )
        self._persist(result)
        return result

    # -------- Persistence --------
    def _persist(self, result: RoundtripResult) -> None:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        write_codebook_file(self.out_dir / CODEBOOK_NAME, result.codebook)
        write_index_file(self.out_dir / INDEX_NAME, result.index_map)
        write_pgm_file(self.out_dir / IMAGE_NAME, result.reconstructed)
        report_path = self.out_dir / REPORT_NAME
        with report_path.open("w", encoding="utf-8") as f:
            f.write(result.report.model_dump_json(indent=2))

    # -------- Loaders --------
    def load_report(self) -> RunReport | None:
        path = self.out_dir / REPORT_NAME
        if not path.exists():
            return None
        with path.open("r", encoding="utf-8") as f:
            data = json.load(f)
        return RunReport.model_validate(data)

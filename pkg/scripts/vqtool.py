"""Command-line front end for the vector quantization toolkit.

Usage:
    python -m scripts.vqtool train --image photo100.pgm --size 64 --out photo.cbk.csv
    python -m scripts.vqtool compress --image photo200.pgm --codebook photo.cbk.csv --out photo.vqi
    python -m scripts.vqtool decompress --indices photo.vqi --codebook photo.cbk.csv --out photo_q.pgm
    python -m scripts.vqtool roundtrip --train photo100.pgm --test photo200.pgm --size 64 --out-dir run/
    python -m scripts.vqtool metrics --original photo200.pgm --reconstructed photo_q.pgm
    python -m scripts.vqtool inspect --codebook photo.cbk.csv [--indices photo.vqi]

Exit codes: 0 on success, 1 on I/O or validation failure, 2 on usage errors.
"""
import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from pydantic import ValidationError

from codec.vq_codec import compress_image, decompress_image
from metrics.quality import mse, psnr, shannon_entropy
from orchestrator.roundtrip import RoundtripRunner
from persistence.codebook_file import codebook_overhead_bytes, read_codebook_file, write_codebook_file
from persistence.index_file import read_index_file, write_index_file
from pixelgrid.image import image_to_blocks
from pixelgrid.pgm import read_pgm_file, write_pgm_file
from quantizer.trainer import train_codebook
from schemas.models import MAX_CODEBOOK_SIZE, RunConfig, TrainerConfig, format_number, is_power_of_two

_TABLE_COLUMNS = 8


def codebook_size(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid codebook size {text!r}") from None
    if not 2 <= value <= MAX_CODEBOOK_SIZE or not is_power_of_two(value):
        raise argparse.ArgumentTypeError(
            f"codebook size must be a power of two in [2, {MAX_CODEBOOK_SIZE}], got {value}"
        )
    return value


def unsigned_64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {value}")
    return value


def _add_trainer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--size", type=codebook_size, required=True, help="Codebook size M (power of two)")
    parser.add_argument("--seed", type=unsigned_64, default=0, help="PRNG seed (default: 0)")
    parser.add_argument("--delta", type=float, default=1.0, help="Perturbation half-width (default: 1.0)")
    parser.add_argument("--inner-iters", type=int, default=1, help="Lloyd passes per doubling (default: 1)")
    parser.add_argument("--refine-iters", type=int, default=0, help="Lloyd passes after the last doubling (default: 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vqtool",
        description="Lossy grayscale image compression with a splitting vector quantizer",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="Enable verbose logging")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", parents=[common], help="Train a codebook from a PGM image")
    train.add_argument("--image", required=True, help="Training image (PGM)")
    train.add_argument("--out", required=True, help="Output codebook file (.cbk.csv)")
    _add_trainer_flags(train)

    compress = sub.add_parser("compress", parents=[common], help="Compress a PGM image to an index file")
    compress.add_argument("--image", required=True, help="Image to compress (PGM)")
    compress.add_argument("--codebook", required=True, help="Codebook file (.cbk.csv)")
    compress.add_argument("--out", required=True, help="Output index file (.vqi)")

    decompress = sub.add_parser("decompress", parents=[common], help="Reconstruct a PGM image from an index file")
    decompress.add_argument("--indices", required=True, help="Index file (.vqi)")
    decompress.add_argument("--codebook", required=True, help="Codebook file (.cbk.csv)")
    decompress.add_argument("--out", required=True, help="Output image (PGM)")

    roundtrip = sub.add_parser("roundtrip", parents=[common], help="Train, compress, decompress and report")
    roundtrip.add_argument("--train", required=True, help="Training image (PGM)")
    roundtrip.add_argument("--test", required=True, help="Test image (PGM)")
    roundtrip.add_argument("--out-dir", required=True, help="Directory for the run's artifacts")
    roundtrip.add_argument("--report", choices=["text", "json"], default="text", help="Report format (default: text)")
    _add_trainer_flags(roundtrip)

    metrics = sub.add_parser("metrics", parents=[common], help="Compare an original and a reconstructed image")
    metrics.add_argument("--original", required=True, help="Original image (PGM)")
    metrics.add_argument("--reconstructed", required=True, help="Reconstructed image (PGM)")

    inspect = sub.add_parser("inspect", parents=[common], help="Describe a codebook and optionally an index file")
    inspect.add_argument("--codebook", required=True, help="Codebook file (.cbk.csv)")
    inspect.add_argument("--indices", help="Index file (.vqi) to summarize")
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    """Validate the parsed flags into a RunConfig."""
    inputs = [
        getattr(args, name)
        for name in ("image", "train", "test", "indices", "codebook", "original", "reconstructed")
        if getattr(args, name, None)
    ]
    trainer = None
    if args.command in ("train", "roundtrip"):
        trainer = TrainerConfig(
            target_size=args.size,
            delta=args.delta,
            seed=args.seed,
            inner_iters=args.inner_iters,
            refine_iters=args.refine_iters,
        )
    return RunConfig(
        command=args.command,
        inputs=inputs,
        output=getattr(args, "out", None) or getattr(args, "out_dir", None),
        trainer=trainer,
        report_format=getattr(args, "report", "text"),
    )


def cmd_train(config: RunConfig) -> int:
    image = read_pgm_file(config.inputs[0])
    vectors = image_to_blocks(image)
    start = time.perf_counter()
    codebook, report = train_codebook(vectors, config.trainer)
    elapsed = time.perf_counter() - start
    write_codebook_file(config.output, codebook)
    print(f"vectors = {len(vectors)}")
    print(f"train_seconds = {elapsed:.6f}")
    print(f"distortion = {report.final_distortion!r}")
    return 0


def cmd_compress(config: RunConfig) -> int:
    image_path, codebook_path = config.inputs
    image = read_pgm_file(image_path)
    codebook = read_codebook_file(codebook_path)
    start = time.perf_counter()
    index_map = compress_image(image, codebook)
    elapsed = time.perf_counter() - start
    write_index_file(config.output, index_map)
    print(f"indices = {index_map.indices.size}")
    print(f"compress_seconds = {elapsed:.6f}")
    return 0


def cmd_decompress(config: RunConfig) -> int:
    indices_path, codebook_path = config.inputs
    index_map = read_index_file(indices_path)
    codebook = read_codebook_file(codebook_path)
    image = decompress_image(index_map, codebook)
    write_pgm_file(config.output, image)
    print(f"width = {image.width}")
    print(f"height = {image.height}")
    return 0


def cmd_roundtrip(config: RunConfig) -> int:
    train_path, test_path = config.inputs
    train_image = read_pgm_file(train_path)
    test_image = read_pgm_file(test_path)
    result = RoundtripRunner(config.output).run(train_image, test_image, config.trainer)
    if config.report_format == "json":
        print(result.report.model_dump_json())
    else:
        print(result.report.as_text())
    print(f"codebook overhead: {result.codebook_overhead_bytes} bytes", file=sys.stderr)
    return 0


def cmd_metrics(config: RunConfig) -> int:
    original_path, reconstructed_path = config.inputs
    error = mse(read_pgm_file(original_path), read_pgm_file(reconstructed_path))
    print(f"mse = {error!r}")
    print(f"psnr_db = {format_number(psnr(error))}")
    return 0


def cmd_inspect(config: RunConfig) -> int:
    codebook_path = config.inputs[-1]
    codebook = read_codebook_file(codebook_path)
    print(f"size = {codebook.size}")
    print(f"dimension = {codebook.centroids.shape[1]}")
    print(f"overhead_bytes = {codebook_overhead_bytes(codebook)}")
    # One column per codeword, components down the rows.
    for start in range(0, codebook.size, _TABLE_COLUMNS):
        block = codebook.centroids[start : start + _TABLE_COLUMNS]
        print()
        print("      " + "".join(f"{f'c{start + j}':>10}" for j in range(block.shape[0])))
        for k in range(block.shape[1]):
            print(f"x{k:<5}" + "".join(f"{v:>10.4f}" for v in block[:, k]))
    if len(config.inputs) == 2:
        index_map = read_index_file(config.inputs[0])
        print()
        print(f"image = {index_map.orig_width}x{index_map.orig_height}")
        print(f"blocks = {index_map.blocks_w}x{index_map.blocks_h}")
        print(f"codebook_size = {index_map.codebook_size}")
        print(f"entropy_bits = {shannon_entropy(index_map.indices, index_map.codebook_size)!r}")
    return 0


COMMANDS = {
    "train": cmd_train,
    "compress": cmd_compress,
    "decompress": cmd_decompress,
    "roundtrip": cmd_roundtrip,
    "metrics": cmd_metrics,
    "inspect": cmd_inspect,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    # Setup logging
    log_level = logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(
        level=log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    try:
        config = run_config(args)
        logging.info("Running %s with inputs %s", config.command, config.inputs)
        return COMMANDS[config.command](config)
    except (OSError, ValueError, ValidationError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        print("\n\nInterrupted by user", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

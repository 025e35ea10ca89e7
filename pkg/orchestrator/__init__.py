"""End-to-end compression runs: train, compress, decompress and evaluate."""

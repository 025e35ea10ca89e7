"""Command-line utilities for the vector quantization toolkit."""

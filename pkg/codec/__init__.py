"""Vector-quantization codec: images to index maps and back."""

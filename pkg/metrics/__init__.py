"""Quality metrics: MSE, PSNR, index entropy and bit rates."""

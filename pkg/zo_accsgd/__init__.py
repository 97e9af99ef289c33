"""Zero-order accelerated SGD with kernel-smoothed gradient estimates."""

__version__ = "0.1.0"

"""Unbiased libraries of connected k-regular graphs binned by clustering coefficient."""

__version__ = "0.1.0"

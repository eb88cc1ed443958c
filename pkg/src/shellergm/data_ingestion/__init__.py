"""Bundled datasets."""

from .datasets import load_sampson, read_bundled

__all__ = ["load_sampson", "read_bundled"]

"""Exact computer algebra for type C Kazhdan-Lusztig ideals on small patches."""

__version__ = "0.1.0"

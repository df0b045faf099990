"""Compression-based behavioral complexity and programmability toolkit."""

__version__ = "0.1.0"

"""Exact fused R-matrices, tableau projectors and fusion idempotents."""

__version__ = "0.1.0"

"""Stopping sets, redundant parity-check matrices and automorphism-group erasure decoding."""

__version__ = "0.1.0"

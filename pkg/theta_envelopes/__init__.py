"""Exact arithmetic for theta-parallelogram envelopes and their elliptic curves."""

__version__ = "0.1.0"

"""Exact-arithmetic mirror identities for minuscule flag varieties."""

__version__ = "0.1.0"

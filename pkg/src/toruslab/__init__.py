"""Exact arithmetic for unitary tori in groups of type A2, G2 and F4 over the rationals."""

__version__ = "0.1.0"

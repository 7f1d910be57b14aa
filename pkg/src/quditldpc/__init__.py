"""Qudit LDPC codes over GF(p^s)."""

__version__ = "0.1.0"

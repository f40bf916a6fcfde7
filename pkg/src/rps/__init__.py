"""Automatic solution of word-counting problems with linear constraints on
factor-occurrence counts."""

__version__ = "0.1.0"

"""Exact computation of Nash blowups of polynomial singular foliations."""

__version__ = "0.1.0"

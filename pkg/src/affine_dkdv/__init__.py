"""Affine dKdV: carrier dynamics on infinite reduced words in the affine
symmetric group, and their soliton solutions via tau-functions."""

__version__ = "0.1.0"

"""Separable vs. equatable k-hypergraph classification with exact certificates."""

__version__ = "0.1.0"

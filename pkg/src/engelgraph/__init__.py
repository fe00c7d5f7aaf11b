"""Engel graphs, commuting graphs and prime graphs of finite permutation groups."""

__version__ = "0.1.0"

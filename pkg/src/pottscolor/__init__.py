"""Potts-model graph coloring: relaxed GNN training, local search, exact oracles."""

__version__ = "0.1.0"

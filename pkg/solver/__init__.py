"""Exact solvers for split-to-block and split-to-threshold vertex deletion."""

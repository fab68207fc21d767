"""Exact computation of r-spin intersection numbers by topological recursion
and Givental reconstruction, with cross-checks between the two pipelines."""

__version__ = "0.1.0"

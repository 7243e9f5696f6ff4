"""Exact computations in linear categories of partitions."""

__version__ = "0.1.0"

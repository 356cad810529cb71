"""Metric Poissonian pair correlation toolkit."""

__version__ = "0.1.0"

"""Unsupervised normalization of noisy corpora through clustering of morphological variants."""

__version__ = "0.1.0"

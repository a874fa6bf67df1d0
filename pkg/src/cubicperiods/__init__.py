"""Exact period geometry of stable cubic surfaces and CM abelian five-folds with order-3 symmetry."""

__version__ = "0.1.0"

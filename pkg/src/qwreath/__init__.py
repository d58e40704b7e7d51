"""Exact symbolic engine for quantum wreath products of polynomial type
and the Schur-type convolution algebras built from them."""

__version__ = "0.1.0"

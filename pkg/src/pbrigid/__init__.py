"""Rigidity of Pham-Brieskorn rings B_S = C[X_0, ..., X_n] / (X_0^a_0 + ... + X_n^a_n)."""

__version__ = "0.1.0"

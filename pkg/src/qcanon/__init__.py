"""Exact computations with canonical and dual canonical bases of U_q(n)."""

__version__ = "0.1.0"

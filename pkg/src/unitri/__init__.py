"""Counting small-degree irreducible characters of unitriangular groups U_n(q)."""

__version__ = "0.1.0"

"""Plurigenera of quotients of products of curves by abelian groups."""

__version__ = "0.1.0"

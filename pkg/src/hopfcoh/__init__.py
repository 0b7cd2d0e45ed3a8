"""Exact homological algebra for finite-dimensional Hopf algebras and Hopf bimodules."""

__version__ = "0.1.0"

"""Finite pointed lattices, residuated lattices and the decision procedures relating them."""
__version__ = "0.1.0"

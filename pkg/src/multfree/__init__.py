"""Multiplicity-free actions and the moment map, checked two independent ways."""
__version__ = "0.1.0"

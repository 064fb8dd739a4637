"""Grüss-type inequalities in inner product spaces: library and CLI."""

__version__ = "0.1.0"

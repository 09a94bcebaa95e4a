"""Exact verification toolkit for characteristic-2 Enriques surface geometry."""

__version__ = "0.1.0"

"""Exact verification toolkit for the finite structures behind the Monster."""

__version__ = "0.1.0"

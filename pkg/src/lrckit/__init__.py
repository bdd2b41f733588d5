"""Locally repairable codes from parity-check matrices."""

__version__ = "0.1.0"

"""Secrecy wireless information and power transfer simulator."""

__version__ = "0.1.0"

"""Exact string parametrizations, highest-term valuations and Newton-Okounkov bodies."""

__version__ = "0.1.0"

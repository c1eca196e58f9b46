"""Sense-type enrichment pipeline (under construction)."""
__version__ = "0.1.0"

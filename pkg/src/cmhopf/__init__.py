"""Exact symbolic engine for the Hopf algebra of transverse frame-bundle symmetries."""

__version__ = "0.1.0"

"""Scattering resonances and determinant growth for the exterior of a ball in even dimensions."""

__version__ = "0.1.0"

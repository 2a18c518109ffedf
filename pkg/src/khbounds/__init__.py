"""Khovanov homology, its Lee and Bar-Natan deformations, and knot bounds."""

__version__ = "0.1.0"

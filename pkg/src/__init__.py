"""Numerical simulator of a photonic conditional-phase gate mediated by an atomic V-system"""

__version__ = "1.0.0"

"""Singular points of rational plane curves read from the syzygies of a
parameterization (g1, g2, g3)."""

__version__ = "0.1.0"

"""Exact verification engine for K3 surfaces with maximal symplectic symmetry
and a centralizing antisymplectic involution."""

__version__ = "0.1.0"

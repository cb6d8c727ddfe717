"""Exact verification of split-octonion cross products, projective tractor
calculus, and the curved-orbit geometry of holonomy-reduced projective
6-manifolds."""

__version__ = "0.1.0"

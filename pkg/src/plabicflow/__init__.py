"""Exact combinatorics of dimer models on the disc.

Perfect matchings, partition functions and flow polynomials of plabic graphs,
cluster seeds with Plucker labels, kappa-invariants via skew Young diagrams,
Gelfand-Tsetlin cones, superpotentials and their tropicalizations.  All
arithmetic is exact (integers and integer lattice vectors; no floats).
"""

__version__ = "0.1.0"

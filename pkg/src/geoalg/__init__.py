"""Exact symbolic engine for Poisson algebras of geodesic length functions.

Subpackages
-----------
poly_core   exact Laurent polynomial ring and matrices over it
fatgraph    fat graphs, SL(2) matrix words, geodesic functions, Goldman bracket
ks_calculus Korotkin-Samtleben bracket (symbolic trace calculus + numeric oracle)
dn_algebra  structure-constant engines for the A_n / frak-D_n algebras
braid       braid-group actions (componentwise, matrix form, relation checks)
reductions  level-p and D_n reductions
centers     central-element generating functions and independence counts
frobenius   Stokes-matrix / monodromy realization
cli         verification command line front end
"""

__all__ = [
    "poly_core",
    "fatgraph",
    "ks_calculus",
    "dn_algebra",
    "braid",
    "reductions",
    "centers",
    "frobenius",
    "cli",
]

__version__ = "0.1.0"

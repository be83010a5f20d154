"""Exact-arithmetic engine for Z_p^l actions of quadrangular type.

Classifies the elementary-abelian actions on closed Riemann surfaces
whose quotient is a sphere with four cone points, through the
generalized-Fermat-curve model: free-subgroup enumeration, automorphism
group structure, quotient signatures, Jacobian isogeny bookkeeping, and
finite-field certification of explicit automorphism formulas.

Everything is exact: prime fields, rationals, and Q(sqrt(-3)).
"""

__version__ = "0.1.0"

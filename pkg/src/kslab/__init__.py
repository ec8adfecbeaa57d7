"""kslab: a computational workbench for Khovanov-Springer varieties.

The package implements, cross-checks and brute-force-verifies the effective
constructions surrounding the varieties X(n): sparse subsets and non-crossing
matchings, the ring R(n) with its sparse-monomial normal form, graph foldings
and graph rings S(G), the Mayer-Vietoris double complex, a combinatorial
simplicial model of Y(G) with integral cohomology, and a finite-field flag
laboratory for the module-theoretic lemmas.
"""

__version__ = "0.1.0"

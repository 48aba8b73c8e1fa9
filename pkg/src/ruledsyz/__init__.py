"""Property N_p for line bundles on elliptic ruled surfaces: a numerical
oracle and a finite-field Koszul cohomology engine."""

__version__ = "0.1.0"

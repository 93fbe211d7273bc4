"""Exact-arithmetic toolkit for involutions on Hilbert squares of K3
surfaces: Pell solvers, integral quadratic lattices and decision reports.
"""

__version__ = "0.1.0"

from . import hilb2, k3pic, pell, zlattice  # noqa: F401

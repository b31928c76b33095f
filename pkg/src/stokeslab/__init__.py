"""Numerical laboratory for 1D Schrodinger operators y'' = lam^2 q(x) y with
polynomial q: Stokes graphs, complex WKB actions, spectra, complex zeros of
eigenfunctions and their semiclassical limit distributions."""

__version__ = "0.1.0"

from .poly import Poly, TurningPoint, turning_points, assert_simple
from .action import PathC, ActionValue, action, well_action, barrier_action, agmon_mass

__all__ = [
    "__version__",
    "Poly",
    "TurningPoint",
    "turning_points",
    "assert_simple",
    "PathC",
    "ActionValue",
    "action",
    "well_action",
    "barrier_action",
    "agmon_mass",
]

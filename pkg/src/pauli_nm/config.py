"""Numerical tolerances shared by every module."""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    equality: float = 1e-10
    hermiticity: float = 1e-12
    state: float = 1e-12
    singular: float = 1e-12          # |nu| below this counts as a zero of the map
    negative_eigenvalue: float = -1e-10
    rate_sign: float = -1e-12
    merge_roots: float = 1e-9
    scan_step: float = 1e-3
    bisection: float = 1e-12
    endpoint_inset: float = 1e-9
    quadrature: float = 1e-10


TOL = Tolerances()

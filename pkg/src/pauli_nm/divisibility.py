"""CP- and P-divisibility tests for Pauli dynamical maps.

The intermediate map E(p, s) = E(p) E(s)^-1 of a Pauli family is again a
Pauli map, with eigenvalue ratios r_j = nu_j(p) / nu_j(s).  Its Choi spectrum
is therefore available in closed form, and a negative Choi eigenvalue
certifies CP-indivisibility even where the map is non-invertible and the rate
criterion is only sufficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channels import act, nu
from .config import TOL
from .errors import NonInvertibleAt, OutOfRange
from .generator import DecayRates, p_minus, p_plus, rates_at, singularities
from .qalg import trace_distance


@dataclass(frozen=True)
class IntermediateRatios:
    r1: float
    r2: float
    r3: float
    s: float | None = None
    p: float | None = None

    def __iter__(self):
        return iter((self.r1, self.r2, self.r3))


@dataclass(frozen=True)
class ChoiSpectrum:
    """Choi eigenvalues of an intermediate Pauli map.

    ``values`` is sorted descending.  ``pattern`` keeps the sign-pattern order
    (1 -+ r1 -+ r2 +- r3)/2, i.e. twice the weights of sigma_3, sigma_2,
    sigma_1 and the identity.
    """
    values: tuple
    pattern: tuple

    @property
    def min(self):
        return self.values[-1]

    @property
    def trace(self):
        return sum(self.values)

    def is_cp(self, tol=TOL.negative_eigenvalue):
        return self.min >= tol


def intermediate_ratios(family, s, p):
    s = family.check(s)
    p = family.check(p)
    if p < s:
        raise OutOfRange(p, s, family.valid_range[1], what="p")
    vs = np.asarray(nu(family, s).values)
    if np.any(np.abs(vs) < TOL.singular):
        raise NonInvertibleAt(s)
    vp = np.asarray(nu(family, p).values)
    r = vp / vs
    return IntermediateRatios(*(float(x) for x in r), s=s, p=p)


def bracket_ratio(x, s, p):
    """Singularity-factored ratio (p- - p)(p+ - p) / ((p- - s)(p+ - s)) for a depolarizing nu."""
    if x == 0:
        return (3 - 4 * p) / (3 - 4 * s)
    lo, hi = p_minus(x), p_plus(x)
    return (lo - p) * (hi - p) / ((lo - s) * (hi - s))


def intermediate_choi_spectrum(r):
    r1, r2, r3 = r
    pattern = (
        0.5 * (1 - r1 - r2 + r3),
        0.5 * (1 - r1 + r2 - r3),
        0.5 * (1 + r1 - r2 - r3),
        0.5 * (1 + r1 + r2 + r3),
    )
    return ChoiSpectrum(tuple(sorted(pattern, reverse=True)), pattern)


class WitnessPoint(NamedTuple):
    p: float
    min_eigenvalue: float


def cp_witness_scan(family, s, p_grid):
    """Smallest intermediate Choi eigenvalue for each ``p >= s`` in the grid."""
    out = []
    for p in p_grid:
        if p < s:
            continue
        spec = intermediate_choi_spectrum(intermediate_ratios(family, s, p))
        out.append(WitnessPoint(float(p), spec.min))
    return out


def choi_scan(family, s, p_grid):
    """Full descending intermediate Choi spectra for each ``p >= s``."""
    return [(float(p), intermediate_choi_spectrum(intermediate_ratios(family, s, p)))
            for p in p_grid if p >= s]


def p_div_condition(rates: DecayRates, tol=TOL.rate_sign):
    g1, g2, g3 = rates
    return g1 + g2 >= tol and g2 + g3 >= tol and g3 + g1 >= tol


def cp_rate_condition(rates: DecayRates, tol=TOL.rate_sign):
    return all(g >= tol for g in rates)


def divisibility_report(family, s, p, horizon=None):
    """Both CP verdicts for the step s -> p; the Choi witness is authoritative.

    The rate verdict uses the rates at ``p`` and is flagged sufficient-only
    when the family has generator singularities.
    """
    rates = rates_at(family, p)
    spec = intermediate_choi_spectrum(intermediate_ratios(family, s, p))
    singular = len(singularities(family, horizon=horizon)) > 0
    return {
        "s": s,
        "p": p,
        "cp_witness": spec.is_cp(),
        "min_choi_eigenvalue": spec.min,
        "cp_rates": cp_rate_condition(rates),
        "cp_rates_sufficient_only": singular,
        "p_div_rates": p_div_condition(rates),
    }


def td_scan(family, a, b, grid):
    """Trace distance between the two evolved states along the grid."""
    return [(float(p), trace_distance(act(family, p, a), act(family, p, b))) for p in grid]

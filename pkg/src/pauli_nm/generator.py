"""Decay rates of the time-local generator and the singularities where they diverge.

For a Pauli map with eigenvalues ``nu_j`` the canonical rates are

    gamma_i = 1/4 * sum_j H_ij * nu_dot_j / nu_j        (j = 1..3; nu_0 = 1)

and diverge wherever some ``nu_j`` vanishes.  For the depolarizing families
``nu_j`` is a quadratic in ``p`` with a closed-form smaller root; other
families fall back to a bracketing scan.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .channels import AnisoDepol, IsoDepol, PauliEigenvalues, nu
from .config import TOL
from .errors import OutOfRange, SingularPoint
from .numerics import bisect, scan_roots
from .qalg import HADAMARD

# rows 1..3, columns 1..3 of the Hadamard matrix (the nu_0 column carries nu_dot_0 = 0)
_RATE_SIGNS = HADAMARD[1:, 1:]


@dataclass(frozen=True)
class DecayRates:
    g1: float
    g2: float
    g3: float
    domain: str = "p"

    def __iter__(self):
        return iter((self.g1, self.g2, self.g3))

    def __getitem__(self, i):
        return (self.g1, self.g2, self.g3)[i]

    def as_array(self):
        return np.array([self.g1, self.g2, self.g3])


def decay_rates(nu_: PauliEigenvalues, domain="p"):
    if nu_.derivatives is None:
        raise ValueError("decay rates need nu derivatives")
    v = np.asarray(nu_.values)
    small = np.flatnonzero(np.abs(v) < TOL.singular)
    if small.size:
        raise SingularPoint(None, components=tuple(int(j) + 1 for j in small))
    g = 0.25 * _RATE_SIGNS @ (np.asarray(nu_.derivatives) / v)
    return DecayRates(*(float(x) for x in g), domain=domain)


def rates_array(family, xs):
    """Rates on an array of parameters, shape ``(3, len(xs))``; NaN where some nu_j is exactly 0."""
    xs = np.asarray(xs, dtype=float)
    v = family._nu(xs)
    d = family._nu_dot(xs)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(v == 0, np.nan, d / v)
    return 0.25 * np.tensordot(_RATE_SIGNS, ratio, axes=1)


def rates_at(family, x):
    return decay_rates(nu(family, x), domain=family.domain)


class RatePoint(NamedTuple):
    p: float
    rates: DecayRates | None
    singular: bool


def rates_grid(family, grid):
    out = []
    for x in grid:
        try:
            out.append(RatePoint(float(x), rates_at(family, x), False))
        except SingularPoint:
            out.append(RatePoint(float(x), None, True))
    return out


# ---------------------------------------------------------------------------
# singularities

def p_minus(x):
    """Smaller root of nu(p) = 3 - 4p + 6 x p (p - 1) (numerically stable form).

    Equal to (2 + 3x - sqrt(9x^2 - 6x + 4)) / (6x); tends to 3/4 as x -> 0.
    """
    q = math.sqrt(9 * x * x - 6 * x + 4)
    return 3 / (3 * x + 2 + q)


def p_plus(x):
    if x == 0:
        return math.inf
    return (2 + 3 * x + math.sqrt(9 * x * x - 6 * x + 4)) / (6 * x)


@dataclass(frozen=True)
class Singularity:
    j: int
    p_minus: float
    x: float | None
    multiplicity: int = 1
    components: tuple = ()

    def to_dict(self):
        return {"j": self.j, "p_minus": self.p_minus, "x": self.x, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class SingularitySet:
    entries: tuple = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def positions(self):
        return [e.p_minus for e in self.entries]

    def to_list(self):
        return [e.to_dict() for e in self.entries]


def _merge(raw):
    """Merge (j, root, x) triples closer than the merge tolerance."""
    raw = sorted(raw, key=lambda r: (r[1], r[0]))
    groups = []
    for j, r, x in raw:
        if groups and abs(r - groups[-1][0][1]) < TOL.merge_roots:
            groups[-1].append((j, r, x))
        else:
            groups.append([(j, r, x)])
    entries = []
    for g in groups:
        j, r, x = g[0]
        entries.append(Singularity(j, float(r), x, len(g), tuple(e[0] for e in g)))
    return SingularitySet(tuple(entries))


def _span(family, horizon):
    lo, hi = family.valid_range
    if horizon is not None:
        hi = min(hi, horizon)
    if math.isinf(hi):
        raise ValueError(f"{family.family} has an unbounded range; pass a finite horizon")
    return lo, hi


def singularities(family, horizon=None, include_endpoint=False, method="auto"):
    """Zeros of the map eigenvalues in the family's range.

    ``method`` is ``"closed_form"`` (depolarizing families only), ``"scan"``
    (bracketing scan plus bisection on each ``nu_j``) or ``"auto"``.
    Roots sitting exactly on the range end are dropped unless
    ``include_endpoint``.
    """
    lo, hi = _span(family, horizon)
    if method == "auto":
        method = "closed_form" if isinstance(family, AnisoDepol) else "scan"
    raw = []
    if method == "closed_form":
        if not isinstance(family, AnisoDepol):
            raise ValueError("closed form only available for the depolarizing families")
        for j, x in enumerate(family.xbar, start=1):
            root = p_minus(x)
            if root < lo or root > hi:
                continue
            if x == 0 or root >= hi - TOL.merge_roots:
                if include_endpoint and root <= hi:
                    raw.append((j, root, x))
                continue
            raw.append((j, root, x))
    elif method == "scan":
        xbar = family.xbar if isinstance(family, AnisoDepol) else (None, None, None)
        for j in range(3):
            f = lambda t, j=j: float(family._nu(t)[j])
            fp = lambda t, j=j: float(family._nu_dot(t)[j])
            for root, _touch in scan_roots(f, lo, hi, fprime=fp):
                if root <= lo:
                    continue
                if root >= hi - TOL.merge_roots and not include_endpoint:
                    continue
                raw.append((j + 1, root, xbar[j]))
    else:
        raise ValueError(f"unknown method {method!r}")
    return _merge(raw)


def p_tilde(alpha):
    """Zero of the isotropic rate numerator, (1 + 3 alpha) / (6 alpha)."""
    if alpha <= 0:
        raise OutOfRange(alpha, 0.0, 1.0, what="alpha")
    return (1 + 3 * alpha) / (6 * alpha)


# ---------------------------------------------------------------------------
# sign structure

class SignInterval(NamedTuple):
    lo: float
    hi: float
    sign: int


def _rate_j(family, j):
    def g(x):
        return float(rates_array(family, np.array([x]))[j - 1, 0])
    return g


def sign_profile(family, j, grid_step=1e-3, horizon=None, singular=None):
    """Maximal constant-sign intervals of gamma_j over the range, singular points removed."""
    if grid_step > 1e-3:
        raise ValueError("grid_step must be <= 1e-3")
    lo, hi = _span(family, horizon)
    if singular is None:
        singular = singularities(family, horizon=hi, include_endpoint=True).positions
    cuts = [lo] + [s for s in singular if lo < s < hi] + [hi]
    g = _rate_j(family, j)
    eps = TOL.endpoint_inset
    out = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        a_in = a + eps if (a > lo or _singular_at(family, a)) else a
        b_in = b - eps if (b < hi or _singular_at(family, b)) else b
        n = max(2, int(math.ceil((b_in - a_in) / grid_step)) + 1)
        xs = np.linspace(a_in, b_in, n)
        gs = rates_array(family, xs)[j - 1]
        keep = np.isfinite(gs)
        xs, gs = xs[keep], gs[keep]
        n = len(xs)
        if n == 0:
            continue
        signs = _signs(gs)
        start = a
        for i in range(n - 1):
            if signs[i] != signs[i + 1]:
                if gs[i] * gs[i + 1] < 0:
                    z = float(bisect(g, xs[i], xs[i + 1]))
                else:
                    z = float(xs[i + 1] if signs[i + 1] == 0 else xs[i])
                out.append(SignInterval(start, z, signs[i]))
                start = z
        out.append(SignInterval(start, b, signs[-1]))
    return [iv for iv in out if iv.hi > iv.lo]


def _signs(gs):
    s = np.sign(gs).astype(int)
    s[np.abs(gs) < 1e-14] = 0
    return [int(v) for v in s]


def _singular_at(family, x):
    return bool(np.any(np.abs(family._nu(np.array([x]))[:, 0]) < TOL.singular))

"""Parametric families of qubit Pauli dynamical maps.

Every family is a Pauli channel ``E[rho] = sum_j kappa_j sigma_j rho sigma_j``
whose Kraus weights depend on a single evolution parameter.  Depolarizing and
the non-Markovian dephasing families are written in terms of a monotone
mixing parameter ``p``; the oscillatory examples are written directly in time
``t``.  ``family.domain`` says which.

Map eigenvalues are normalized so that ``nu_j = 1`` at the start of the
evolution.  Only ratios ``nu_dot / nu`` enter the decay rates, so the
normalization has no effect on them.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import ClassVar

import numpy as np

from .config import TOL
from .errors import NotCompletelyPositive, OutOfRange, SingularAt
from .qalg import HADAMARD, apply_pauli_map, validate_state


@dataclass(frozen=True)
class KrausWeights:
    k0: float
    k1: float
    k2: float
    k3: float

    def as_array(self):
        return np.array([self.k0, self.k1, self.k2, self.k3], dtype=float)


@dataclass(frozen=True)
class PauliEigenvalues:
    """Eigenvalues of the map on sigma_1..sigma_3, optionally with d/dparameter."""
    values: tuple
    derivatives: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.derivatives is not None:
            object.__setattr__(self, "derivatives", tuple(float(v) for v in self.derivatives))

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def scaled(self, factor):
        d = None if self.derivatives is None else tuple(factor * v for v in self.derivatives)
        return PauliEigenvalues(tuple(factor * v for v in self.values), d)


class ChannelFamily:
    """Base class; subclasses supply ``_kappa`` and ``_kappa_dot`` (array-valued, shape (4, ...))."""

    family: ClassVar[str]
    domain: ClassVar[str] = "p"

    @property
    def valid_range(self):
        raise NotImplementedError

    def check(self, x):
        lo, hi = self.valid_range
        x = float(x)
        if not (lo - TOL.hermiticity <= x <= hi + TOL.hermiticity) or math.isnan(x):
            raise OutOfRange(x, lo, hi, what=self.domain)
        return x

    def _nu(self, x):
        k = self._kappa(x)
        return np.tensordot(HADAMARD[1:], k, axes=1)

    def _nu_dot(self, x):
        k = self._kappa_dot(x)
        return np.tensordot(HADAMARD[1:], k, axes=1)

    def to_dict(self):
        return {"family": self.family, **asdict(self)}


def _unit(name, v):
    if not 0.0 <= v <= 1.0:
        raise OutOfRange(v, 0.0, 1.0, what=name)


@dataclass(frozen=True)
class AnisoDepol(ChannelFamily):
    """Depolarizing channel with independent non-Markovianity strengths on X, Y, Z."""
    l: float
    m: float
    n: float

    family: ClassVar[str] = "aniso_depol"

    def __post_init__(self):
        for name in ("l", "m", "n"):
            _unit(name, getattr(self, name))

    @property
    def valid_range(self):
        return (0.0, 0.75)

    @property
    def strengths(self):
        return (self.l, self.m, self.n)

    @property
    def xbar(self):
        """Sum of the two strengths NOT attached to sigma_j, for j = 1, 2, 3."""
        l, m, n = self.strengths
        return (m + n, l + n, l + m)

    def _kappa(self, p):
        p = np.asarray(p, dtype=float)
        l, m, n = self.strengths
        return np.array([
            (1 - (l + m + n) * p) * (1 - p),
            (1 + 3 * l * (1 - p)) * p / 3,
            (1 + 3 * m * (1 - p)) * p / 3,
            (1 + 3 * n * (1 - p)) * p / 3,
        ])

    def _kappa_dot(self, p):
        p = np.asarray(p, dtype=float)
        l, m, n = self.strengths
        s = l + m + n
        return np.array([
            -(1 + s) + 2 * s * p,
            1 / 3 + l * (1 - 2 * p),
            1 / 3 + m * (1 - 2 * p),
            1 / 3 + n * (1 - 2 * p),
        ])

    # closed-form polynomials (the generic Hadamard route is kept as a check)
    def _nu(self, p):
        p = np.asarray(p, dtype=float)
        return np.array([1 - 4 * p / 3 + 2 * x * p * (p - 1) for x in self.xbar])

    def _nu_dot(self, p):
        p = np.asarray(p, dtype=float)
        return np.array([-4 / 3 + 2 * x * (2 * p - 1) + 0 * p for x in self.xbar])


@dataclass(frozen=True)
class IsoDepol(AnisoDepol):
    """Isotropic special case l = m = n = alpha."""
    alpha: float
    l: float = field(init=False, repr=False)
    m: float = field(init=False, repr=False)
    n: float = field(init=False, repr=False)

    family: ClassVar[str] = "iso_depol"

    def __post_init__(self):
        _unit("alpha", self.alpha)
        for name in ("l", "m", "n"):
            object.__setattr__(self, name, self.alpha)

    def to_dict(self):
        return {"family": self.family, "alpha": self.alpha}


def _dephasing(q):
    """Map eigenvalues (q, q, 1) of a z-dephasing channel with coherence factor q."""
    q = np.asarray(q, dtype=float)
    return np.array([q, q, np.ones_like(q)])


def _dephasing_dot(dq):
    dq = np.asarray(dq, dtype=float)
    return np.array([dq, dq, np.zeros_like(dq)])


@dataclass(frozen=True)
class CosDephasing(ChannelFamily):
    """Dephasing with coherence factor cos(omega t); singular at odd multiples of pi/(2 omega)."""
    omega: float

    family: ClassVar[str] = "cos_dephasing"
    domain: ClassVar[str] = "t"

    @property
    def valid_range(self):
        return (0.0, math.inf)

    def _kappa(self, t):
        c = np.cos(self.omega * np.asarray(t, dtype=float))
        z = np.zeros_like(c)
        return np.array([(1 + c) / 2, z, z, (1 - c) / 2])

    def _kappa_dot(self, t):
        s = -self.omega * np.sin(self.omega * np.asarray(t, dtype=float))
        z = np.zeros_like(s)
        return np.array([s / 2, z, z, -s / 2])

    # eigenvalues directly, avoiding cancellation in the Hadamard transform
    def _nu(self, t):
        return _dephasing(np.cos(self.omega * np.asarray(t, dtype=float)))

    def _nu_dot(self, t):
        return _dephasing_dot(-self.omega * np.sin(self.omega * np.asarray(t, dtype=float)))


@dataclass(frozen=True)
class CosPauli(ChannelFamily):
    """Pauli channel with all three map eigenvalues equal to cos(omega t)."""
    omega: float

    family: ClassVar[str] = "cos_pauli"
    domain: ClassVar[str] = "t"

    @property
    def valid_range(self):
        return (0.0, math.inf)

    def _kappa(self, t):
        c = np.cos(self.omega * np.asarray(t, dtype=float))
        w = (1 - c) / 4
        return np.array([(1 + 3 * c) / 4, w, w, w])

    def _kappa_dot(self, t):
        s = -self.omega * np.sin(self.omega * np.asarray(t, dtype=float))
        return np.array([3 * s / 4, -s / 4, -s / 4, -s / 4])

    def _nu(self, t):
        c = np.cos(self.omega * np.asarray(t, dtype=float))
        return np.array([c, c, c])

    def _nu_dot(self, t):
        s = -self.omega * np.sin(self.omega * np.asarray(t, dtype=float))
        return np.array([s, s, s])


@dataclass(frozen=True)
class ExpDephasing(ChannelFamily):
    """Dephasing with coherence factor q(t) = 1 - t exp(1 - t); q touches zero at t = 1."""

    family: ClassVar[str] = "exp_dephasing"
    domain: ClassVar[str] = "t"

    @property
    def valid_range(self):
        return (0.0, math.inf)

    @staticmethod
    def q(t):
        t = np.asarray(t, dtype=float)
        u = t - 1
        # near the double root the direct form cancels to nothing; use the
        # Taylor series sum_{k>=2} (-1)^k (k-1) u^k / k!
        near = np.abs(u) < 0.1
        series = np.zeros_like(u)
        term = np.ones_like(u)
        for k in range(1, 18):
            term = term * (-u) / k
            if k >= 2:
                series = series + (k - 1) * term
        return np.where(near, series, 1 - t * np.exp(-u))

    @staticmethod
    def q_dot(t):
        t = np.asarray(t, dtype=float)
        return (t - 1) * np.exp(1 - t)

    def _kappa(self, t):
        q = self.q(t)
        z = np.zeros_like(q)
        return np.array([(1 + q) / 2, z, z, (1 - q) / 2])

    def _kappa_dot(self, t):
        d = self.q_dot(t)
        z = np.zeros_like(d)
        return np.array([d / 2, z, z, -d / 2])

    def _nu(self, t):
        return _dephasing(self.q(t))

    def _nu_dot(self, t):
        return _dephasing_dot(self.q_dot(t))

    def to_dict(self):
        return {"family": self.family}


@dataclass(frozen=True)
class AppendixDephasing(ChannelFamily):
    """Non-Markovian dephasing: kappa_Z = [1 + alpha(1-p)] p, with p(t) = (1 - exp(-c t))/2."""
    alpha: float
    c: float = 1.0

    family: ClassVar[str] = "appendix_dephasing"

    def __post_init__(self):
        _unit("alpha", self.alpha)
        if not self.c >= 0:
            raise OutOfRange(self.c, 0.0, math.inf, what="c")

    @property
    def valid_range(self):
        return (0.0, 0.5)

    def _kappa(self, p):
        p = np.asarray(p, dtype=float)
        kz = (1 + self.alpha * (1 - p)) * p
        z = np.zeros_like(p)
        return np.array([(1 - self.alpha * p) * (1 - p), z, z, kz])

    def _kappa_dot(self, p):
        p = np.asarray(p, dtype=float)
        d = 1 + self.alpha - 2 * self.alpha * p
        z = np.zeros_like(p)
        return np.array([-d, z, z, d])

    def _nu(self, p):
        p = np.asarray(p, dtype=float)
        return _dephasing(1 - 2 * (1 + self.alpha * (1 - p)) * p)

    def _nu_dot(self, p):
        p = np.asarray(p, dtype=float)
        return _dephasing_dot(-2 * (1 + self.alpha - 2 * self.alpha * p))


FAMILIES = {cls.family: cls for cls in
            (AnisoDepol, IsoDepol, CosDephasing, CosPauli, ExpDephasing, AppendixDephasing)}


def family_from_dict(d):
    d = dict(d)
    try:
        cls = FAMILIES[d.pop("family")]
    except KeyError as exc:
        raise ValueError(f"unknown or missing channel family in {d!r}") from exc
    return cls(**d)


def family_from_json(text):
    return family_from_dict(json.loads(text))


def family_to_json(family):
    return json.dumps(family.to_dict())


# ---------------------------------------------------------------------------
# Kraus weights and map eigenvalues

def kappa(family, p):
    p = family.check(p)
    return KrausWeights(*(float(v) for v in family._kappa(p)))


def kappa_dot(family, p):
    p = family.check(p)
    return tuple(float(v) for v in family._kappa_dot(p))


def nu_from_kappa(k):
    k = k.as_array() if isinstance(k, KrausWeights) else np.asarray(k, dtype=float)
    full = HADAMARD @ k
    if abs(full[0] - 1) > TOL.hermiticity:
        raise ValueError(f"Kraus weights sum to {full[0]!r}, not 1")
    return PauliEigenvalues(full[1:])


def kappa_from_nu(nu, check=True):
    """Inverse Hadamard transform.

    Raises NotCompletelyPositive if a weight is negative, unless ``check`` is
    false (useful for the Choi matrix of a non-CP intermediate map).
    """
    k = 0.25 * HADAMARD @ np.concatenate(([1.0], np.asarray(tuple(nu), dtype=float)))
    if check and np.any(k < -TOL.hermiticity):
        raise NotCompletelyPositive(f"Kraus weights {k} contain a negative entry")
    return KrausWeights(*(float(v) for v in k))


def nu(family, p):
    p = family.check(p)
    return PauliEigenvalues(family._nu(p), family._nu_dot(p))


def act(family, p, rho):
    """Evolve ``rho`` by the cumulative map at parameter ``p``."""
    rho = validate_state(rho)
    return apply_pauli_map(nu(family, p).values, rho)


def iso_state_entries(alpha, p, a, b):
    """Diagonal (A) and off-diagonal (B) entries of the isotropic channel output.

    Input state is ``[[a, b], [b*, 1 - a]]``.  The off-diagonal entry is linear
    in ``b``.
    """
    A = a + (2 * p / 3) * (1 - 2 * a) + 2 * (2 * a - 1) * (p - 1) * p * alpha
    B = 4 * (p - 1) * p * alpha * b + b * (1 - 4 * p / 3)
    return A, B


# ---------------------------------------------------------------------------
# Closed forms for the time-parametrized dephasing examples

def exp_dephasing_rate(t):
    """Dephasing rate -q'/(2q) of ExpDephasing, written as e(t-1) / (2(et - e^t))."""
    return math.e * (t - 1) / (2 * (math.e * t - math.exp(t)))


def appendix_rate_p(alpha, p):
    return (1 + alpha - 2 * alpha * p) / (1 - 2 * p * (1 + alpha * (1 - p)))


def appendix_p_of_t(c, t):
    return (1 - math.exp(-c * t)) / 2


def appendix_t_minus(alpha, c):
    """Physical time of the singularity, arcsinh(1/alpha)/c (infinite when alpha = 0)."""
    if alpha == 0:
        return math.inf
    return math.asinh(1 / alpha) / c


def appendix_rate_t(alpha, c, t):
    """Dephasing rate c(1 + alpha e^{-ct}) / (2 - 2 alpha sinh(ct)) in physical time."""
    if t < 0:
        raise OutOfRange(t, 0.0, math.inf, what="t")
    den = 2 - 2 * alpha * math.sinh(c * t)
    if abs(den) < TOL.singular or (alpha > 0 and abs(t - appendix_t_minus(alpha, c)) < TOL.singular):
        raise SingularAt(t)
    return c * (1 + alpha * math.exp(-c * t)) / den


# ---------------------------------------------------------------------------
# Exponential clocks p(t) = p_end (1 - exp(-c t)) for the p-domain families

def clock_end(family):
    if family.domain != "p":
        raise ValueError(f"{family.family} is already parametrized by time")
    return family.valid_range[1]


def p_of_t(family, t, c):
    return clock_end(family) * (1 - math.exp(-c * t))


def dp_dt(family, p, c):
    """Clock speed dp/dt expressed as a function of p."""
    return c * (clock_end(family) - np.asarray(p, dtype=float))

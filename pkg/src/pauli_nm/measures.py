"""HCLA and SSS non-Markovianity measures with singularity-taming renormalization.

Rates diverge at generator singularities, so both measures work with bounded
transforms of the rate:

* HCLA integrates ``-gamma / (1 - gamma)`` over the region where a rate is
  negative;
* SSS integrates the L1 distance between ``gamma / (1 + |gamma|)`` (or its
  absolute-value variant) and a constant reference rate, scaled by the
  prefactor 10 and normalized by the horizon, then maps ``N -> N / (1 + N)``.

All integrands stay bounded at singular points.  Quadrature stops 1e-9 short
of each one and the skipped strip is added back as a rectangle.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .channels import IsoDepol, dp_dt
from .config import TOL
from .generator import p_minus, p_tilde, rates_array, sign_profile, singularities
from .numerics import adaptive_simpson, gauss_legendre_nodes, golden_min, weighted_median

# Factor multiplying the SSS integral for the depolarizing family; quoted, not derived here.
SSS_PREFACTOR = 10.0


@dataclass(frozen=True)
class MeasureResult:
    measure: str
    value: float
    renormalized_value: float
    method: str
    bounds: tuple = ()
    metadata: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "measure": self.measure,
            "value": self.value,
            "renormalized": self.renormalized_value,
            "bounds": [list(b) for b in self.bounds],
            "config": self.config,
            "method": self.method,
            "metadata": self.metadata,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def renorm_rate(gamma, mode="absolute"):
    """Map a rate into (-1, 1): ``|g|/(1+|g|)`` (absolute) or ``g/(1+|g|)`` (signed)."""
    a = np.abs(gamma)
    if mode == "absolute":
        return a / (1 + a)
    if mode == "signed":
        return gamma / (1 + a)
    raise ValueError(f"unknown renormalization mode {mode!r}")


def _segments(family, horizon):
    """Subintervals of [lo, horizon] between singular points."""
    lo, _ = family.valid_range
    cuts = singularities(family, horizon=horizon, include_endpoint=True).positions
    edges = [lo] + [c for c in cuts if lo < c < horizon] + [horizon]
    return [(a, b) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _vanishes(family, x):
    return bool(np.any(np.abs(family._nu(np.array([x]))) < TOL.singular))


# ---------------------------------------------------------------------------
# HCLA

def _hcla_integrand(family, j):
    def f(x):
        g = float(rates_array(family, np.array([x]))[j - 1, 0])
        return -g / (1 - g)
    return f


def _integrate_bounded(family, f, a, b, tol):
    """Quadrature of a bounded integrand whose endpoints may be singular points of the rates.

    A singular end is inset by ``eps`` and the skipped strip is added back as
    ``eps * f(inset point)``, which is exact to O(eps^2) for a continuous limit.
    """
    eps = TOL.endpoint_inset
    a_in = a + eps if _vanishes(family, a) else a
    b_in = b - eps if _vanishes(family, b) else b
    value, evals = adaptive_simpson(f, a_in, b_in, tol)
    if a_in != a:
        value += (a_in - a) * f(a_in)
    if b_in != b:
        value += (b - b_in) * f(b_in)
    return value, evals


def hcla(family, horizon=None, tol=TOL.quadrature):
    """Integral of -gamma/(1-gamma) over the negative-rate region.

    For ``IsoDepol`` the three rates coincide and the single common rate is
    integrated between the singularity and min(3/4, p_tilde).  For any other
    family every maximal negative interval of every rate component is
    integrated and the contributions are summed.
    """
    if isinstance(family, IsoDepol):
        a = family.alpha
        if a == 0:
            return MeasureResult("hcla", 0.0, 0.0, "quadrature", (), {"nodes": 0}, family.to_dict())
        lo = p_minus(2 * a)
        hi = min(0.75, p_tilde(a))
        value, evals = _integrate_bounded(family, _hcla_integrand(family, 1), lo, hi, tol)
        return MeasureResult("hcla", value, value, "quadrature", ((lo, hi),),
                             {"nodes": evals, "components": [1]}, family.to_dict())
    top = family.valid_range[1] if horizon is None else horizon
    bounds, value, evals = [], 0.0, 0
    for j in (1, 2, 3):
        for iv in sign_profile(family, j, horizon=top):
            if iv.sign >= 0:
                continue
            v, n = _integrate_bounded(family, _hcla_integrand(family, j), iv.lo, iv.hi, tol)
            value += v
            evals += n
            bounds.append((iv.lo, iv.hi))
    return MeasureResult("hcla", value, value, "quadrature", tuple(bounds),
                         {"nodes": evals, "components": [1, 2, 3]}, family.to_dict())


def hcla_closed_form(alpha):
    """Two-branch analytic HCLA expression, evaluated in complex arithmetic.

    ``q2 = sqrt(3(4 - 15 a) a - 4)`` is imaginary for every real ``a``, so the
    arctangents are complex.  The real part is returned; the imaginary part
    and the value of the other branch are kept in the metadata.  This is a
    diagnostic only; quadrature is the reference.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    q1 = math.sqrt(9 * alpha ** 2 - 3 * alpha + 1)
    q2 = cmath.sqrt(3 * (4 - 15 * alpha) * alpha - 4)
    common = cmath.atan((3 * alpha - 2 * q1) / q2)

    low = (0.25 * math.log(abs((0.75 * alpha + 1) / q1))
           + 1.5 * alpha * (common - cmath.atan((6 * alpha - 2) / q2)) / q2)
    high = (0.25 * math.log(abs((3 * alpha + 1 / (3 * alpha) - 1) / q1))
            + 1.5 * alpha * (common - cmath.atan(3 * alpha / q2)) / q2)
    chosen = low if alpha <= 2 / 3 else high
    meta = {
        "branch": "alpha<=2/3" if alpha <= 2 / 3 else "alpha>2/3",
        "imag": chosen.imag,
        "low_branch": low.real,
        "high_branch": high.real,
        "branch_difference": abs(low.real - high.real),
    }
    return MeasureResult("hcla", chosen.real, chosen.real, "closed_form", (), meta, {"alpha": alpha})


# ---------------------------------------------------------------------------
# SSS

@dataclass(frozen=True)
class SSSConfig:
    """Settings for the semigroup-deviation measure.

    ``time_scale`` is the decay constant c of the clock p(t) = p_end (1 - e^{-ct});
    when set, rates of p-parametrized families are converted to physical time
    (the semigroup limit then has the constant rate c/4 for depolarizing
    channels).  ``None`` keeps rates per unit of the family's own parameter.
    """
    gamma_star_mode: str = "minimized"
    gamma_star: float | None = None
    prefactor: float = SSS_PREFACTOR
    horizon: float | None = None
    renorm_mode: str = "absolute"
    time_scale: float | None = 1.0
    panels: int = 2048
    tol: float = TOL.quadrature

    def __post_init__(self):
        if self.gamma_star_mode not in ("minimized", "fixed"):
            raise ValueError(f"gamma_star_mode must be 'minimized' or 'fixed', got {self.gamma_star_mode!r}")
        if self.gamma_star_mode == "fixed" and self.gamma_star is None:
            raise ValueError("fixed mode needs gamma_star")
        if self.renorm_mode not in ("absolute", "signed"):
            raise ValueError(f"unknown renorm_mode {self.renorm_mode!r}")


def _horizon(family, cfg):
    lo, hi = family.valid_range
    h = hi if cfg.horizon is None else cfg.horizon
    if math.isinf(h):
        raise ValueError(f"{family.family} needs a finite SSS horizon")
    if h > hi:
        raise ValueError(f"horizon {h} beyond range end {hi}")
    return h


def _rate_fn(family, cfg):
    convert = family.domain == "p" and cfg.time_scale is not None

    def rates(xs):
        g = rates_array(family, xs)
        if convert:
            g = g * dp_dt(family, xs, cfg.time_scale)
        return g
    return rates


def sss(family, cfg: SSSConfig = SSSConfig()):
    """Semigroup-deviation measure, returned together with its N/(1+N) renormalization.

    Each rate component j contributes ``prefactor / T * int |g_j - g*_j|``
    with ``g = renorm_rate(gamma)``; the contributions are averaged over the
    three components (the isotropic family has one distinct component).
    In minimized mode ``g*_j`` starts from the weighted median of ``g_j`` over
    composite Gauss-Legendre nodes, the minimizer of an L1 deviation, and is
    polished by golden-section search on the adaptive integral.
    """
    horizon = _horizon(family, cfg)
    segs = _segments(family, horizon)
    rates = _rate_fn(family, cfg)

    components = 1 if isinstance(family, IsoDepol) else 3

    cache = [{} for _ in range(components)]

    def renormed(j, x):
        # the adaptive meshes for nearby g* largely coincide, so memoize
        g = cache[j].get(x)
        if g is None:
            g = cache[j][x] = float(renorm_rate(rates(np.array([x]))[j, 0], cfg.renorm_mode))
        return g

    def deviation(j, star):
        def f(x):
            return abs(renormed(j, x) - star)
        total, n = 0.0, 0
        for a, b in segs:
            v, k = _integrate_bounded(family, f, a, b, cfg.tol)
            total += v
            n += k
        return total, n

    if cfg.gamma_star_mode == "minimized":
        nodes, weights = [], []
        span = sum(b - a for a, b in segs)
        for a, b in segs:
            k = max(1, int(round(cfg.panels * (b - a) / span)))
            x, w = gauss_legendre_nodes(a, b, k)
            nodes.append(x)
            weights.append(w)
        nodes = np.concatenate(nodes)
        weights = np.concatenate(weights)
        g_nodes = renorm_rate(rates(nodes), cfg.renorm_mode)
        g_star = []
        for j in range(components):
            # node median is accurate to the panel width; polish on the convex exact objective
            c0 = weighted_median(g_nodes[j], weights)
            width = 16 * max(1.0 / cfg.panels, 1e-6)
            g_star.append(golden_min(lambda c, j=j: deviation(j, c)[0], c0 - width, c0 + width, tol=1e-9))
    else:
        g_star = [float(renorm_rate(cfg.gamma_star, cfg.renorm_mode))] * components

    integrals = []
    evals = 0
    for j in range(components):
        v, n = deviation(j, g_star[j])
        integrals.append(v)
        evals += n

    value = cfg.prefactor / horizon * float(np.mean(integrals))
    meta = {
        "gamma_star_renormalized": g_star,
        "component_integrals": integrals,
        "nodes": evals,
        "horizon": horizon,
    }
    cfg_dict = {**asdict(cfg), "family": family.to_dict()}
    return MeasureResult("sss", value, value / (1 + value), "quadrature",
                         tuple(segs), meta, cfg_dict)

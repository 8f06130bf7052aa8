"""Quasi-eternal non-Markovianity (QENM) of the depolarizing families.

A member of the anisotropic family is QENM when some decay rate is still
negative at the end of the evolution, p -> 3/4.  With x1 = l+m, x2 = l+n,
x3 = m+n this is the union of three polynomial inequalities; the fraction of
the unit cube where it holds is estimated by Monte Carlo.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .channels import AnisoDepol
from .config import TOL
from .errors import OutOfRange
from .generator import p_minus, rates_at, singularities

CONDITIONS = ("gamma1-endpoint", "gamma2-endpoint", "gamma3-endpoint")
CHUNK = 1 << 16


@dataclass(frozen=True)
class QenmVerdict:
    is_qenm: bool
    satisfied_conditions: tuple
    p_minus_min: float | None = None


@dataclass(frozen=True)
class VolumeEstimate:
    samples: int
    seed: int
    estimate: float
    standard_error: float

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict())


def endpoint_margins(l, m, n):
    """Right minus left side of the three endpoint inequalities; positive means satisfied.

    Works elementwise on arrays.  Margin j belongs to gamma_j: the rate whose
    own eigenvalue carries the pair sum excluding sigma_j's strength.
    """
    x1, x2, x3 = l + m, l + n, m + n
    lhs = 0.75 * x1 * x2 * x3
    return (
        x2 * x3 + x1 * x3 - x1 * x2 - lhs,
        x2 * x3 - x1 * x3 + x1 * x2 - lhs,
        -x2 * x3 + x1 * x3 + x1 * x2 - lhs,
    )


def _check_unit(**kw):
    for name, v in kw.items():
        if not 0.0 <= v <= 1.0:
            raise OutOfRange(v, 0.0, 1.0, what=name)


def classify(l, m, n):
    _check_unit(l=l, m=m, n=n)
    margins = endpoint_margins(l, m, n)
    sat = tuple(c for c, d in zip(CONDITIONS, margins) if d > 0)
    sing = singularities(AnisoDepol(l, m, n)).positions
    return QenmVerdict(bool(sat), sat, min(sing) if sing else None)


def classify_by_rates(l, m, n, inset=TOL.endpoint_inset):
    """Independent check: is any decay rate negative just before p = 3/4?"""
    rates = rates_at(AnisoDepol(l, m, n), 0.75 - inset)
    return min(rates) < 0


def classify_iso(alpha):
    """QENM iff alpha <= 2/3, boundary included (p_tilde >= 3/4)."""
    _check_unit(alpha=alpha)
    if alpha == 0:
        return QenmVerdict(False, ())
    ok = alpha <= 2 / 3
    return QenmVerdict(ok, CONDITIONS if ok else (), p_minus(2 * alpha))


def _chunk_count(seed, k, size, diagonal):
    rng = np.random.Generator(np.random.Philox(key=seed).jumped(k))
    if diagonal:
        a = rng.random(size)
        l = m = n = a
    else:
        l, m, n = rng.random((3, size))
    margins = endpoint_margins(l, m, n)
    return int(np.count_nonzero((margins[0] > 0) | (margins[1] > 0) | (margins[2] > 0)))


def qenm_volume(samples, seed, diagonal=False, workers=1):
    """Monte-Carlo fraction of uniform (l, m, n) in [0,1]^3 that is QENM.

    Samples are drawn in fixed chunks of 2**16; chunk k uses a Philox stream
    jumped k times from ``seed``, so the estimate depends only on
    ``(samples, seed)`` and not on ``workers``.  ``diagonal`` restricts the
    draw to l = m = n.
    """
    if samples < 10 ** 4:
        raise ValueError("need at least 10^4 samples")
    if not 0 <= seed < 2 ** 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)
    jobs = list(enumerate(sizes))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            counts = list(pool.map(lambda kv: _chunk_count(seed, kv[0], kv[1], diagonal), jobs))
    else:
        counts = [_chunk_count(seed, k, size, diagonal) for k, size in jobs]
    est = sum(counts) / samples
    return VolumeEstimate(samples, seed, est, float(np.sqrt(est * (1 - est) / samples)))


def iso_qenm_fraction(alphas):
    alphas = list(alphas)
    return sum(classify_iso(a).is_qenm for a in alphas) / len(alphas)


def iso_qenm_measure(grid_points):
    """Fraction of the uniform grid alpha_k = k/(N+1), k = 1..N, that is QENM."""
    if grid_points < 3:
        raise ValueError("grid_points too small")
    n = grid_points
    return iso_qenm_fraction(k / (n + 1) for k in range(1, n + 1))

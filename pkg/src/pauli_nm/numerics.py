"""Scalar root finding and adaptive quadrature used across the package."""
import math
import warnings

import numpy as np

from .config import TOL


def bisect(f, a, b, tol=TOL.bisection, fa=None, maxiter=200):
    """Root of ``f`` in ``[a, b]`` given a sign change; stops when the bracket is below ``tol``."""
    fa = f(a) if fa is None else fa
    fb = f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if fa * fb > 0:
        raise ValueError(f"no sign change on [{a}, {b}]")
    for _ in range(maxiter):
        mid = 0.5 * (a + b)
        if b - a <= tol or mid in (a, b):
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def scan_roots(f, lo, hi, step=TOL.scan_step, tol=TOL.bisection, fprime=None, touch_tol=1e-10):
    """All roots of a scalar function on ``[lo, hi]`` found by a bracketing scan.

    Sign changes between consecutive grid points are refined by bisection.
    When ``fprime`` is given, points where ``|f|`` has a local minimum and
    ``fprime`` changes sign are refined too; they are reported as (touching)
    roots if ``|f|`` there is below ``touch_tol``.

    Returns a sorted list of ``(root, touching)`` pairs.
    """
    n = max(2, int(math.ceil((hi - lo) / step)) + 1)
    xs = np.linspace(lo, hi, n)
    fs = np.array([f(x) for x in xs], dtype=float)
    roots = []
    for i in range(n - 1):
        if fs[i] == 0:
            roots.append((float(xs[i]), False))
        elif fs[i] * fs[i + 1] < 0:
            roots.append((bisect(f, xs[i], xs[i + 1], tol, fa=fs[i]), False))
    if fs[-1] == 0:
        roots.append((float(xs[-1]), False))
    if fprime is not None:
        a = np.abs(fs)
        for i in range(1, n - 1):
            if a[i] <= a[i - 1] and a[i] <= a[i + 1] and fs[i - 1] * fs[i + 1] > 0 and fs[i] != 0:
                d0, d1 = fprime(xs[i - 1]), fprime(xs[i + 1])
                if d0 * d1 >= 0:
                    continue
                x = bisect(fprime, xs[i - 1], xs[i + 1], tol, fa=d0)
                if abs(f(x)) < touch_tol:
                    roots.append((x, True))
    roots.sort()
    out = []
    for r in roots:
        if out and abs(r[0] - out[-1][0]) < 10 * tol:
            continue
        out.append(r)
    return out


def adaptive_simpson(f, a, b, tol=TOL.quadrature, max_depth=60, max_evals=2_000_000):
    """Integral of ``f`` over ``[a, b]`` by adaptive Simpson with Richardson correction.

    Returns ``(value, evaluations)``.  Once ``max_evals`` is spent the
    remaining panels are accepted as they stand and a warning is issued;
    this only happens when ``f`` is noisier than ``tol``.
    """
    if a == b:
        return 0.0, 0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) * (fa + 4 * fm + fb) / 6
    evals = 3
    total = 0.0
    exhausted = False
    # explicit stack: (a, b, fa, fm, fb, whole, tol, depth)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, eps, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        evals += 2
        left = (m - a) * (fa + 4 * flm + fm) / 6
        right = (b - m) * (fm + 4 * frm + fb) / 6
        delta = left + right - whole
        if evals > max_evals and not exhausted:
            exhausted = True
            warnings.warn(f"adaptive_simpson: evaluation budget {max_evals} spent on [{a}, {b}]",
                          RuntimeWarning, stacklevel=2)
        if exhausted or depth >= max_depth or abs(delta) <= 15 * eps:
            total += left + right + delta / 15
        else:
            stack.append((a, m, fa, flm, fm, left, eps / 2, depth + 1))
            stack.append((m, b, fm, frm, fb, right, eps / 2, depth + 1))
    return total, evals


def weighted_median(values, weights):
    """Smallest value at which the cumulative weight reaches half the total."""
    values = np.asarray(values, dtype=float)
    weights = np.asarray(weights, dtype=float)
    order = np.argsort(values, kind="stable")
    cw = np.cumsum(weights[order])
    k = int(np.searchsorted(cw, 0.5 * cw[-1]))
    return float(values[order][min(k, len(values) - 1)])


def gauss_legendre_nodes(a, b, panels, order=8):
    """Composite Gauss-Legendre nodes and weights on ``[a, b]``."""
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def golden_min(f, a, b, tol=1e-9, maxiter=200):
    """Minimizer of a unimodal ``f`` on ``[a, b]`` by golden-section search."""
    inv = (math.sqrt(5) - 1) / 2
    c, d = b - inv * (b - a), a + inv * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    return 0.5 * (a + b)

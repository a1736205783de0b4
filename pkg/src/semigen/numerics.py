"""Scalar root finding, bracketed minimization and quadrature.

One bisection routine serves every root in the package (beta*, radii,
the quartic for the convexity radius), so tolerances are comparable
across results.
"""

import math

import numpy as np
from scipy import integrate

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2


def bisect(func, lo, hi, tol=1e-13, maxiter=200):
    """Root of ``func`` in [lo, hi]; the endpoints must bracket a sign change."""
    flo, fhi = func(lo), func(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f = {flo:.3g}, {fhi:.3g}")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fmid = func(mid)
        if fmid == 0 or hi - lo < tol:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bisect_predicate(pred, lo, hi, tol=1e-10, maxiter=200):
    """Largest x in [lo, hi] with ``pred(x)`` true, for a predicate that is
    true on an initial segment.  ``pred(lo)`` is assumed true."""
    if pred(hi):
        return hi
    for _ in range(maxiter):
        if hi - lo < tol:
            break
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def golden_section_min(func, a, b, tol=1e-10):
    """Minimum of a unimodal ``func`` on [a, b]; returns (x, func(x))."""
    a, b = min(a, b), max(a, b)
    h = b - a
    c, d = a + INV_PHI2 * h, a + INV_PHI * h
    fc, fd = func(c), func(d)
    while h > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            h = INV_PHI * h
            c = a + INV_PHI2 * h
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            h = INV_PHI * h
            d = a + INV_PHI * h
            fd = func(d)
    return (c, fc) if fc < fd else (d, fd)


def periodic_min(func, samples=2048, tol=1e-10, period=2 * math.pi):
    """Minimum of a smooth periodic ``func``: dense sampling followed by a
    golden-section polish around the best sample.  ``func`` must accept
    numpy arrays."""
    theta = np.arange(samples) * (period / samples)
    vals = np.asarray(func(theta), dtype=float)
    i = int(np.argmin(vals))
    step = period / samples
    x, fx = golden_section_min(lambda t: float(func(np.asarray(t))), theta[i] - step, theta[i] + step, tol)
    if fx <= vals[i]:
        return x % period, fx
    return theta[i], float(vals[i])


def quad(func, a, b, split=None, epsabs=1e-13):
    """Adaptive Gauss-Kronrod quadrature (QUADPACK), optionally split at
    ``split`` to isolate endpoint behaviour."""
    points = [a, b] if split is None else [a, split, b]
    total = 0.0
    for lo, hi in zip(points[:-1], points[1:]):
        val, _ = integrate.quad(func, lo, hi, epsabs=epsabs, epsrel=1e-13, limit=400)
        total += val
    return total

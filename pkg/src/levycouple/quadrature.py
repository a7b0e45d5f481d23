"""Radial quadrature and tail inversion helpers.

All bound integrals in the package are one-dimensional radial integrals per
spherical atom.  They are evaluated with adaptive Gauss-Kronrod refinement
(QUADPACK) on panels split at the integrand's structural points (cutoff
levels, truncation kinks, the point 1, the scale t^{-1/alpha}).  Inverse
radial tails without a closed form are obtained by bracketed bisection.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate

from .errors import InvariantViolationError, NumericalFailureError

DEFAULT_ABS_TOL = 1e-9


def integrate_radial(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    splits: Iterable[float] = (),
    abs_tol: float = DEFAULT_ABS_TOL,
) -> float:
    """Integrate f on (lo, hi), hi may be math.inf.

    The domain is split at every interior point of `splits`; each panel goes
    through QUADPACK.  Raises NumericalFailureError carrying the achieved
    tolerance when the summed error estimate exceeds abs_tol by more than a
    factor of 100 (QUADPACK error estimates are conservative; small
    overshoots are tolerated and reported).
    """
    pts = sorted({float(s) for s in splits if lo < s < hi})
    edges = [lo] + pts + [hi]
    total = 0.0
    err = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, e = integrate.quad(f, a, b, epsabs=abs_tol, epsrel=1e-11, limit=200)
        total += val
        err += abs(e)
    if err > 100.0 * abs_tol and err > 1e-7 * max(1.0, abs(total)):
        raise NumericalFailureError(
            f"quadrature error estimate {err:.3e} above tolerance {abs_tol:.3e}",
            achieved_tol=err,
        )
    return total


def invert_tail(
    tail: Callable[[np.ndarray], np.ndarray],
    u: np.ndarray,
    x_lo: float = 1e-12,
    x_hi: float = 1.0,
    rel_tol: float = 1e-12,
    max_grow: int = 200,
) -> np.ndarray:
    """Right-continuous inverse of a non-increasing tail, vectorised.

    Returns x*(u) = inf{x > 0 : tail(x) <= u} for each u > 0.  Brackets are
    grown geometrically from [x_lo, x_hi] until tail(x_lo) >= u >= tail(x_hi)
    componentwise, then plain bisection runs to relative tolerance rel_tol.
    Entries with u >= tail(0+) (finite total mass) map to 0.
    """
    u = np.asarray(u, dtype=float)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    if np.any(u <= 0):
        raise InvariantViolationError("inverse tail requires u > 0")

    lo = np.full(u.shape, x_lo)
    hi = np.full(u.shape, x_hi)
    for _ in range(max_grow):
        bad = tail(hi) > u
        if not bad.any():
            break
        hi[bad] *= 4.0
    else:
        raise NumericalFailureError("could not bracket inverse tail from above")

    # Entries where even a tiny x has tail <= u correspond to u above the
    # total mass: the inverse is 0 by right-continuity.
    zero_mask = np.zeros(u.shape, dtype=bool)
    for _ in range(max_grow):
        need = tail(lo) < u
        if not need.any():
            break
        lo2 = lo / 4.0
        hit_floor = need & (lo <= 1e-280)
        zero_mask |= hit_floor
        need &= ~hit_floor
        lo[need] = lo2[need]
        if not (tail(lo) < u).any():
            break

    for _ in range(200):
        mid = np.sqrt(lo * hi)
        high = tail(mid) > u
        lo = np.where(high, mid, lo)
        hi = np.where(high, hi, mid)
        if np.all((hi - lo) <= rel_tol * np.maximum(hi, 1e-300)):
            break
    out = np.where(zero_mask, 0.0, hi)
    return float(out[0]) if scalar else out


def check_monotone_tail(tail: Callable[[np.ndarray], np.ndarray], grid: Sequence[float]) -> None:
    """Raise InvariantViolationError if the tail increases along grid."""
    g = np.asarray(sorted(grid), dtype=float)
    vals = tail(g)
    if np.any(np.diff(vals) > 1e-12 * np.maximum(1.0, np.abs(vals[:-1]))):
        raise InvariantViolationError("radial tail is not non-increasing")


def riemann_tail_integral(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, n: int = 200_000) -> float:
    """Midpoint Riemann sum on a log grid; independent oracle for tests."""
    edges = np.exp(np.linspace(math.log(lo), math.log(hi), n + 1))
    mid = np.sqrt(edges[:-1] * edges[1:])
    return float(np.sum(f(mid) * np.diff(edges)))

"""Constructive supremum moment bound for a Levy process.

Bounds E[sup_{s<=t} |X_s|^p] by C_1 t^{p/2} + C_2 t^p + C_3 t^{min(1, p/b+)}
with b+ the working Blumenthal-Getoor index and the split level kappa =
t^(1/b+).  All constants are built from the proof's explicit majorants:
Doob's (p/(p-1))^p factor, Stirling-number sums for Poisson moments, and the
kappa-power majorants of the drift, small-jump and big-jump integrals.
C_2 = 0 for finite-variation processes with zero natural drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import InfiniteMomentError
from .families import LevyFamily, bg_index

__all__ = ["sup_moment_bound", "MomentBoundReport"]


def _stirling2_row(n: int) -> list[int]:
    """Stirling numbers of the second kind S(n, 1..n)."""
    row = [1]
    for _ in range(1, n):
        prev = row
        row = [prev[0] * 1]
        for k in range(1, len(prev)):
            row.append(prev[k - 1] + (k + 1) * prev[k])
        row.append(1)
    return row


def _poisson_moment_sum(p: int, mean: float) -> float:
    """sum_k S(p, k) mean^(k-1); the Poisson moment E[N^p] = mean * this
    whenever N ~ Poisson(mean), up to the leading factor."""
    row = _stirling2_row(p)
    return float(sum(s * mean ** (k) for k, s in enumerate(row)))


def _brownian_sup_moment(p: float, d: int) -> float:
    """Majorant of E[sup_{s<=1} |B_s|^p] for a standard d-dim Brownian motion."""
    if p <= 2.0:
        return (4.0 * d) ** (p / 2.0)
    doob = (p / (p - 1.0)) ** p
    ep = 2.0 ** (p / 2.0) * special.gamma((p + d) / 2.0) / special.gamma(d / 2.0)
    return doob * ep


@dataclass(frozen=True)
class MomentBoundReport:
    total: float
    drift_term: float
    gaussian_term: float
    small_jump_term: float
    big_jump_term: float
    beta_plus: float
    kappa: float


def sup_moment_bound(family: LevyFamily, p: float, t: float, beta_plus: float | None = None):
    """Upper bound on E[sup_{s<=t} |X_s|^p], t in (0,1].

    Raises InfiniteMomentError when the p-moment of big jumps diverges.
    Returns a MomentBoundReport; float(total) is the bound.
    """
    if not 0.0 < t <= 1.0:
        raise ValueError("t must lie in (0,1]")
    if p <= 0.0:
        raise ValueError("p must be positive")

    try:
        i_tail_p = family.jump_moment(p, lo=1.0, hi=math.inf)
    except InfiniteMomentError:
        raise InfiniteMomentError(
            f"big jumps have no finite {p}-moment for this family"
        )
    mass1 = family.mass_tail(1.0)

    beta, bp = bg_index(family)
    if beta_plus is not None:
        bp = float(beta_plus)

    zero_natural = family.drift_mode == "zero-natural-drift"
    # drift vector of the generating triplet (cutoff at 1)
    if family.drift_mode == "explicit":
        gamma = family.drift.copy()
    elif zero_natural:
        gamma = family.jump_mean_vector(0.0, 1.0)
    else:  # mean-zero
        gamma = -family.jump_mean_vector(1.0, math.inf)

    terms = []

    # Gaussian part
    gauss = 0.0
    if family.gaussian is not None and np.any(family.gaussian):
        frob = float(np.linalg.norm(family.gaussian))
        gauss = frob**p * _brownian_sup_moment(p, family.dim) * t ** (p / 2.0)
        terms.append(gauss)

    if bp == 0.0:
        # finite activity: plain compound Poisson + drift
        drift = 0.0
        if not zero_natural and np.any(gamma):
            drift = (float(np.linalg.norm(gamma)) * t) ** p
            terms.append(drift)
        big = 0.0
        total_mass = family.mass_tail(0.0)
        if total_mass > 0.0:
            ip_all = family.jump_moment(p, lo=0.0, hi=math.inf)
            big = t * ip_all * _poisson_moment_sum(math.ceil(p), t * total_mass)
            terms.append(big)
        n = max(len(terms), 1)
        scale = n ** max(p - 1.0, 0.0)
        return MomentBoundReport(
            total=scale * sum(terms),
            drift_term=drift,
            gaussian_term=gauss,
            small_jump_term=0.0,
            big_jump_term=big,
            beta_plus=0.0,
            kappa=0.0,
        )

    kappa = t ** (1.0 / bp)
    i_bp = family.jump_moment(bp, lo=0.0, hi=1.0)
    i_max = family.jump_moment(max(bp, p), lo=0.0, hi=1.0)

    # drift term: |gamma_kappa| <= |gamma| + min(1, kappa^(1-bp)) I_bp, and the
    # zero-natural-drift case drops |gamma| entirely (C_2 = 0)
    cut_part = min(1.0, kappa ** (1.0 - bp)) * i_bp * t  # t * kappa^{1-bp} = t^{1/bp} for bp>=1
    drift = cut_part**p
    if not zero_natural:
        drift += (float(np.linalg.norm(gamma)) * t) ** p
        drift *= 2.0 ** max(p - 1.0, 0.0)
    terms.append(drift)

    # small jumps: Jensen through L2 for p <= 2, exponential-moment route above
    if p <= 2.0:
        small = (4.0 * i_bp) ** (p / 2.0) * t ** (p / bp)
    else:
        d = family.dim
        doob_exp = (p * p / (math.e * (p - 1.0))) ** p
        small = doob_exp * 2.0**d * math.exp(d * math.exp(math.sqrt(d)) * i_bp) * t ** (p / bp)
    terms.append(small)

    # big jumps: Campbell + Stirling sum with the kappa-power majorants
    mass_k = mass1 + i_bp  # majorant of t * nu(|w| >= kappa); t kappa^-bp = 1
    ip_k = i_tail_p + kappa ** (-max(bp - p, 0.0)) * i_max
    big = t ** min(1.0, p / bp) * ip_k * _poisson_moment_sum(math.ceil(p), t * mass1 + i_bp)
    terms.append(big)

    n = len(terms)
    scale = n ** max(p - 1.0, 0.0)
    total = scale * sum(terms)
    return MomentBoundReport(
        total=total,
        drift_term=drift,
        gaussian_term=gauss,
        small_jump_term=small,
        big_jump_term=big,
        beta_plus=bp,
        kappa=kappa,
    )

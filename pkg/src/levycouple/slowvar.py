"""Slowly varying normalisations and iterated-log machinery.

A SlowVarSpec packages the function G in the scaling g(t) = t^(1/alpha) G(t),
its derivative, the rate kernel L(t) = t|G'(t)|/G(t) and the doubling ratio
a(t) = G(2t)/G(t).  Three catalog variants are supported:

  constant      G == value                          (normal attraction)
  log_power     G(t) = l_n(1/t)^q_n ... l_m(1/t)^q_m with l_1(s) = log(e+s),
                l_{k+1}(s) = log(e + l_k(s))
  exp_integral  G(t) = exp(sign * int_1^{1/t} phi(s)/s ds), phi = 1/l_k

Only catalog members are accepted; there is no hook for arbitrary
user-supplied G with symbolic derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import ConfigError, UnsupportedRegimeError

_E = math.e


def iter_log(n: int, t):
    """l_n(t): l_1(t) = log(e+t), l_{k+1}(t) = log(e + l_k(t)). Vectorised."""
    if n < 1:
        raise ConfigError("iterated log level must be >= 1")
    v = np.log(_E + np.asarray(t, dtype=float))
    for _ in range(n - 1):
        v = np.log(_E + v)
    return v


def iter_log_prime(n: int, t):
    """l_n'(t) = (e+t)^-1 * prod_{i<n} (e + l_i(t))^-1."""
    t = np.asarray(t, dtype=float)
    out = 1.0 / (_E + t)
    for i in range(1, n):
        out = out / (_E + iter_log(i, t))
    return out


def iterated_log_bound_check(n: int, x: float, t: float, c: float) -> bool:
    """True iff (c + l_n(x*t)) / (c + l_n(t)) <= 1 + 1_{x>1} log x."""
    if n < 1 or x <= 0 or t <= 0 or c < 0:
        raise ConfigError("need n >= 1, x, t > 0, c >= 0")
    lhs = (c + float(iter_log(n, x * t))) / (c + float(iter_log(n, t)))
    rhs = 1.0 + (math.log(x) if x > 1.0 else 0.0)
    return lhs <= rhs * (1.0 + 1e-12)


@dataclass(frozen=True)
class SlowVarSpec:
    """Catalog slowly varying function G with evaluators.

    alpha enters only through g(t) = t^(1/alpha) G(t); it is carried here so
    downstream rate formulas can recover the attractor index from the spec.
    """

    alpha: float
    variant: str = "constant"
    value: float = 1.0
    start: int = 1
    powers: tuple = field(default_factory=tuple)
    phi_level: int = 1
    sign: int = -1

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0) or self.alpha == 1.0:
            raise UnsupportedRegimeError(
                f"alpha={self.alpha} outside (0,2]\\{{1}}: the alpha=1 regime is unsupported"
            )
        if self.variant not in ("constant", "log_power", "exp_integral"):
            raise ConfigError(f"unknown slowvar variant {self.variant!r}")
        if self.variant == "constant" and self.value <= 0:
            raise ConfigError("constant G must be positive")
        if self.variant == "log_power":
            q = tuple(float(p) for p in self.powers)
            if not q:
                raise ConfigError("log_power needs at least one exponent")
            nonneg = all(p >= 0 for p in q)
            nonpos = all(p <= 0 for p in q)
            if not (nonneg or nonpos) or q[0] == 0 or q[-1] == 0:
                raise ConfigError("log_power exponents must share a sign, ends nonzero")
            object.__setattr__(self, "powers", q)
        if self.variant == "exp_integral":
            if self.phi_level < 1 or self.sign not in (-1, 1):
                raise ConfigError("exp_integral needs phi_level >= 1 and sign in {-1,+1}")

    # -- core evaluators ---------------------------------------------------

    def G(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t <= 0):
            raise ConfigError("G requires t > 0")
        if self.variant == "constant":
            return np.full(t.shape, self.value) if t.ndim else float(self.value)
        if self.variant == "log_power":
            s = 1.0 / t
            out = np.ones_like(t)
            for k, q in enumerate(self.powers, start=self.start):
                out = out * iter_log(k, s) ** q
            return out if t.ndim else float(out)
        # exp_integral
        scalar = t.ndim == 0
        tt = np.atleast_1d(t)
        vals = np.array([self._exp_integral(1.0, 1.0 / ti) for ti in tt])
        out = np.exp(self.sign * vals)
        return float(out[0]) if scalar else out

    def _exp_integral(self, lo: float, hi: float) -> float:
        if hi <= lo:
            return -self._exp_integral(hi, lo) if hi < lo else 0.0
        phi = lambda s: 1.0 / float(iter_log(self.phi_level, s))
        # integrate phi(s)/s ds = phi(e^y) dy on a log grid
        val, _ = integrate.quad(lambda y: phi(math.exp(y)), math.log(lo), math.log(hi), limit=200)
        return val

    def Gprime(self, t):
        t = np.asarray(t, dtype=float)
        if self.variant == "constant":
            return np.zeros(t.shape) if t.ndim else 0.0
        if self.variant == "log_power":
            s = 1.0 / t
            acc = np.zeros_like(t)
            for k, q in enumerate(self.powers, start=self.start):
                acc = acc + q * iter_log_prime(k, s) / iter_log(k, s)
            out = -self.G(t) * acc / t**2
            return out if t.ndim else float(out)
        phi = 1.0 / iter_log(self.phi_level, 1.0 / t)
        out = -self.sign * self.G(t) * phi / t
        return out if t.ndim else float(out)

    def L(self, t):
        """L(t) = t |G'(t)| / G(t)."""
        t = np.asarray(t, dtype=float)
        out = t * np.abs(self.Gprime(t)) / self.G(t)
        return out if t.ndim else float(out)

    def a(self, t):
        """a(t) = G(2t)/G(t)."""
        t = np.asarray(t, dtype=float)
        out = self.G(2.0 * t) / self.G(t)
        return out if t.ndim else float(out)

    def g(self, t):
        """Scaling function g(t) = t^(1/alpha) G(t)."""
        t = np.asarray(t, dtype=float)
        out = t ** (1.0 / self.alpha) * self.G(t)
        return out if t.ndim else float(out)

    @property
    def is_constant(self) -> bool:
        return self.variant == "constant"


def slowvar_eval(spec: SlowVarSpec, t: float) -> dict:
    """All five evaluators at one t; raises on t <= 0."""
    if not (t > 0.0):
        raise ConfigError("slowvar_eval requires t in (0, 1]")
    return {
        "G": float(spec.G(t)),
        "Gprime": float(spec.Gprime(t)),
        "L": float(spec.L(t)),
        "a": float(spec.a(t)),
        "g": float(spec.g(t)),
    }


def sigma_growth_bound(spec: SlowVarSpec, x) -> float:
    """Closed-form majorant of sup_{t>0, y in [x^1,xv1]} lt(yt)/lt(t) for
    log_power specs, where lt(t) = (e+t) d/dt [l_n^{q_n}...l_m^{q_m}](t).

    Equals (1+log x)^(sum q_j^+) for x >= 1 and (1+|log x|)^(m + sum q_j^-)
    for x < 1.
    """
    if spec.variant != "log_power":
        raise ConfigError("sigma_growth_bound is defined for log_power specs")
    x = float(x)
    if x <= 0:
        raise ConfigError("x must be positive")
    qs = spec.powers
    m = spec.start + len(qs) - 1
    if x >= 1.0:
        expo = sum(max(q, 0.0) for q in qs)
        return (1.0 + math.log(x)) ** expo
    expo = m + sum(-min(q, 0.0) for q in qs)
    return (1.0 + abs(math.log(x))) ** expo


def slow_variation_rhs(spec: SlowVarSpec, x: float, t: float) -> float:
    """Right side of the slow-variation increment inequality in the G frame:

        |G(x t)/G(t) - 1| <= L(t) * Sigma(1/x) * |log x|

    (G(t) = l(1/t) transfers the infinity-frame inequality with argument 1/x).
    """
    if x == 1.0:
        return 0.0
    return float(spec.L(t)) * sigma_growth_bound(spec, 1.0 / x) * abs(math.log(x))

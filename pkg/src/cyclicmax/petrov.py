"""Large-deviation tail asymptotics for lattice random walks.

For a span-one lattice step law and a level ``x`` strictly between the mean
and the top of the support,

    P(S_n >= n x) ~ exp(-n (gamma x - L(gamma))) / (sqrt(2 pi L''(gamma) n) (1 - e^-gamma))

where ``gamma`` solves ``L'(gamma) = x``. The ``(1 - e^-gamma)`` factor is the
lattice correction; no half-integer continuity shift is applied.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._summation import fsum
from .cumulant import GAMMA_CAP, _tilted, cumulant
from .errors import OutOfRangeError
from .lattice import convolution_power, tail

__all__ = [
    "TailEstimate",
    "AsymptoticRegimeWarning",
    "tilt_for_level",
    "rate",
    "tail_approx",
    "compare_with_exact",
]

MIN_EXPONENT = 2.0


class AsymptoticRegimeWarning(UserWarning):
    """The large-deviation exponent is too small for the asymptotic to be trusted."""


@dataclass(frozen=True)
class TailEstimate:
    n: int
    m: int
    x: float
    gamma: float
    rate: float
    log_estimate: float

    @property
    def estimate(self):
        return math.exp(self.log_estimate)


def tilt_for_level(a, x, tol=1e-12, max_iter=500):
    """Positive root of ``L'(gamma) = x``; requires ``mean < x < omega``."""
    x = float(x)
    if a.is_degenerate():
        raise OutOfRangeError("degenerate law has no positive tilt")
    mean = a.mean()
    if not mean < x < a.omega:
        raise OutOfRangeError(f"level x={x!r} outside (mean={mean!r}, omega={a.omega})")
    tol = max(tol, 4 * np.finfo(float).eps * abs(x))

    def f(gamma):
        return cumulant(a, gamma)[1] - x

    lo, hi = 0.0, 1.0
    while f(hi) <= 0.0:
        lo, hi = hi, 2.0 * hi
        if hi > GAMMA_CAP:
            raise OutOfRangeError(f"tilt for x={x!r} exceeds {GAMMA_CAP:g}")

    gamma = 0.5 * (lo + hi)
    for _ in range(max_iter):
        _, L1, L2 = cumulant(a, gamma)
        fg = L1 - x
        if abs(fg) <= tol:
            break
        if fg < 0:
            lo = gamma
        else:
            hi = gamma
        candidate = gamma - fg / L2 if L2 > 0 else -1.0
        gamma = candidate if lo < candidate < hi else 0.5 * (lo + hi)
        if hi - lo <= 4 * np.finfo(float).eps * hi:
            break
    return gamma


def rate(a, gamma, x):
    """``gamma x - L(gamma)``, evaluated relative to the top of the support."""
    if gamma == 0.0:
        return 0.0
    _, offsets, _, total = _tilted(a, gamma)
    return gamma * (x - a.omega) - math.log(total)


def tail_approx(a, n, m):
    """Asymptotic estimate of ``P(S_n >= m)`` at level ``x = m / n``."""
    n = int(n)
    m = int(m)
    if n < 1:
        raise ValueError("n must be a positive integer")
    x = m / n
    gamma = tilt_for_level(a, x)
    _, _, L2 = cumulant(a, gamma)
    r = rate(a, gamma, x)
    if n * r < MIN_EXPONENT:
        warnings.warn(
            f"n * rate = {n * r:.3g} < {MIN_EXPONENT}: outside the large-deviation regime",
            AsymptoticRegimeWarning,
            stacklevel=2,
        )
    log_est = -n * r - 0.5 * math.log(2.0 * math.pi * L2 * n) - math.log(-math.expm1(-gamma))
    return TailEstimate(n=n, m=m, x=x, gamma=gamma, rate=r, log_estimate=log_est)


def compare_with_exact(a, n, m):
    """Return ``(estimate, exact, ratio)`` with the exact tail from the convolution power."""
    est = tail_approx(a, n, m)
    exact = tail(convolution_power(a, n), m)
    return est, exact, est.estimate / exact

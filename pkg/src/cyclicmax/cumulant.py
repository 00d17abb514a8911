"""Cumulant L(gamma) = ln E exp(gamma * xi) of a lattice law and the threshold equation.

The threshold equation asks for the tilt ``gamma* > 0`` at which the entropy
gap ``g(gamma) = L(gamma) - gamma * L'(gamma)`` drops to ``-ln b``. Since
``g'(gamma) = -gamma * L''(gamma) <= 0`` and ``g`` decreases from ``0`` to
``ln P(xi = omega)``, a root exists exactly when ``P(xi = omega) < 1/b`` and
the law is non-degenerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._summation import fsum
from .errors import DegenerateDistributionError, NoSolutionError

__all__ = [
    "CumulantProfile",
    "cumulant",
    "entropy_gap",
    "gap_limit",
    "check_conditions",
    "solve_profile",
    "GAMMA_CAP",
]

GAMMA_CAP = 1e4


@dataclass(frozen=True)
class CumulantProfile:
    gamma_star: float
    rho_star: float
    sigma_star: float
    omega: int
    p_omega: float
    base: float
    target: float
    residual: float
    mean: float
    iterations: int = 0

    @property
    def log_base(self):
        return -self.target


def _tilted(a, gamma):
    """Tilted weights relative to an anchor point that keeps every exponent <= 0."""
    offsets = np.arange(len(a.probs), dtype=np.float64)
    if gamma >= 0:
        anchor = a.support_max
        offsets -= len(a.probs) - 1
    else:
        anchor = a.support_min
    with np.errstate(under="ignore"):
        w = a.probs * np.exp(gamma * offsets)
    total = fsum(w)
    return anchor, offsets, w / total, total


def cumulant(a, gamma):
    """Return ``(L, L', L'')`` at ``gamma``.

    Evaluated through the exponentially tilted law, so nothing overflows for
    large ``gamma`` and ``L''`` is a variance (nonnegative by construction).
    """
    gamma = float(gamma)
    anchor, offsets, t, total = _tilted(a, gamma)
    shift = fsum(offsets * t)
    L = gamma * anchor + math.log(total)
    L1 = anchor + shift
    L2 = fsum((offsets - shift) ** 2 * t)
    return L, L1, L2


def entropy_gap(a, gamma):
    """``g(gamma) = L(gamma) - gamma * L'(gamma)``; exactly 0 at ``gamma = 0``."""
    gamma = float(gamma)
    if gamma == 0.0:
        return 0.0
    # the gamma * anchor terms of L and gamma * L' cancel analytically
    _, offsets, t, total = _tilted(a, gamma)
    return math.log(total) - gamma * fsum(offsets * t)


def gap_limit(a):
    """Limit of the entropy gap as ``gamma -> +inf``: ``ln P(xi = omega)``."""
    return math.log(a.p_omega)


def check_conditions(a, base=2.0):
    """Diagnostics for the solvability of the threshold equation in base ``b``."""
    return {
        "omega": a.omega,
        "p_omega": a.p_omega,
        "non_degenerate": not a.is_degenerate(),
        "top_mass_below_1_over_b": a.p_omega < 1.0 / base,
        "gap_limit": gap_limit(a),
        "target": -math.log(base),
    }


def solve_profile(a, base=2.0, tol=1e-12, max_iter=500):
    """Solve ``g(gamma) = -ln(base)`` for ``gamma > 0`` and collect the constants.

    Raises
    ------
    DegenerateDistributionError
        If ``a`` is a point mass.
    NoSolutionError
        If ``P(xi = omega) >= 1/base``.
    """
    base = float(base)
    if not base > 1.0:
        raise ValueError(f"base must exceed 1, got {base!r}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a.is_degenerate():
        raise DegenerateDistributionError(
            f"law is concentrated at {a.omega}: entropy gap is identically 0"
        )
    target = -math.log(base)
    if gap_limit(a) >= target:
        raise NoSolutionError(
            f"no solution: P(xi=omega)={a.p_omega!r} >= 1/b={1.0 / base!r} "
            "(top-mass condition fails in base b)"
        )

    def f(gamma):
        return entropy_gap(a, gamma) - target

    lo, hi = 0.0, 1.0
    while f(hi) >= 0.0:
        lo, hi = hi, 2.0 * hi
        if hi > GAMMA_CAP:
            raise NoSolutionError(f"bracket expansion passed gamma={GAMMA_CAP:g}")

    gamma = 0.5 * (lo + hi)
    iterations = 0
    for iterations in range(1, max_iter + 1):
        fg = f(gamma)
        if abs(fg) <= tol:
            break
        if fg > 0:
            lo = gamma
        else:
            hi = gamma
        _, _, L2 = cumulant(a, gamma)
        slope = -gamma * L2
        step_ok = False
        if slope < 0:
            candidate = gamma - fg / slope
            step_ok = lo < candidate < hi
        gamma = candidate if step_ok else 0.5 * (lo + hi)
        if hi - lo <= 4 * np.finfo(float).eps * hi:
            break

    _, L1, L2 = cumulant(a, gamma)
    return CumulantProfile(
        gamma_star=gamma,
        rho_star=L1,
        sigma_star=math.sqrt(L2),
        omega=a.omega,
        p_omega=a.p_omega,
        base=base,
        target=target,
        residual=abs(f(gamma)),
        mean=a.mean(),
        iterations=iterations,
    )

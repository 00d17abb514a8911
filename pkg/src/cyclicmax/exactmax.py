"""Exact law of the maximum of ``b**n`` independent copies of ``S_n``.

Independence gives ``ln P(M_n < m) = b**n * ln P(S_n < m)`` with no
approximation. The only numerical work is evaluating ``ln P(S_n < m)``
accurately when ``P(S_n >= m)`` is of order ``b**-n``, which is done from
the upper tail with a short log1p series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from ._summation import cumsum
from .cumulant import CumulantProfile, solve_profile
from .errors import DomainError, UnderflowRiskError
from .lattice import convolution_power, tails

__all__ = ["MaxLaw", "max_law", "centered_law", "log_strict_cdf", "MAX_N", "WINDOW_EPS"]

MAX_N = 256
SERIES_SWITCH = 1e-8
WINDOW_EPS = 1e-12
_SMALLEST_WEIGHT = 1e-300


@dataclass(frozen=True, eq=False)
class MaxLaw:
    """Law of ``M_n`` on the integer window ``[m_lo, m_hi]``.

    ``log_cdf[j] = ln P(M_n < m_lo + j)``. Below the window the strict CDF is
    at most ``WINDOW_EPS`` and is reported as 0; above it, as 1.
    """

    n: int
    base: float
    copies_log: float
    m_lo: int
    m_hi: int
    log_cdf: np.ndarray = field(repr=False)
    source_profile: Optional[CumulantProfile] = field(default=None, repr=False)

    def __post_init__(self):
        log_cdf = np.array(self.log_cdf, dtype=np.float64)
        if len(log_cdf) != self.m_hi - self.m_lo + 1:
            raise ValueError("log_cdf length does not match the window")
        log_cdf.setflags(write=False)
        object.__setattr__(self, "log_cdf", log_cdf)

    @property
    def window(self):
        return self.m_lo, self.m_hi

    def cdf_strict(self, m):
        """``P(M_n < m)``; accepts scalars or integer arrays."""
        m = np.asarray(m, dtype=np.int64)
        idx = np.clip(m - self.m_lo, 0, len(self.log_cdf) - 1)
        out = np.exp(self.log_cdf[idx])
        out = np.where(m < self.m_lo, 0.0, out)
        out = np.where(m > self.m_hi, 1.0, out)
        return float(out) if out.ndim == 0 else out

    def pmf(self, m):
        m = np.asarray(m, dtype=np.int64)
        return self.cdf_strict(m + 1) - self.cdf_strict(m)

    def median(self):
        """Smallest ``m`` with ``P(M_n <= m) >= 1/2``."""
        ms = np.arange(self.m_lo, self.m_hi + 1)
        hits = ms[self.cdf_strict(ms + 1) >= 0.5]
        return int(hits[0]) if len(hits) else self.m_hi

    def essential_window(self):
        return self.m_lo, self.m_hi


def log_strict_cdf(s_n):
    """``ln P(S_n < m)`` for ``m = support_min, ..., support_max + 1``.

    Small upper tails go through ``-(T + T^2/2 + T^3/3)``; the bulk through
    ``log1p(-T)``; the lower half through the CDF accumulated from the bottom.
    """
    upper = np.append(tails(s_n), 0.0)
    lower = np.concatenate(([0.0], cumsum(s_n.probs)))
    out = np.empty(len(upper))
    with np.errstate(divide="ignore"):
        for j, (t, f) in enumerate(zip(upper, lower)):
            if t < SERIES_SWITCH:
                out[j] = -(t + t * t / 2.0 + t * t * t / 3.0)
            elif t <= 0.5:
                out[j] = math.log1p(-t)
            else:
                out[j] = math.log(f) if f > 0 else -math.inf
    return out


def _check_guards(a, n, max_n):
    if n > max_n:
        raise UnderflowRiskError(f"n={n} exceeds the double-precision guard n <= {max_n}")
    smallest = float(np.min(a.probs[a.probs > 0]))
    if n * math.log(smallest) < math.log(_SMALLEST_WEIGHT):
        raise UnderflowRiskError(
            f"weights of S_{n} can fall below {_SMALLEST_WEIGHT:g}; reduce n"
        )


def max_law(a, n, base=2.0, profile=None, max_n=MAX_N):
    """Exact law of ``M_n = max`` of ``base**n`` independent copies of ``S_n``.

    ``base**n`` need not be an integer; ``n * ln(base)`` is used directly.
    The returned window is the tightest one with
    ``P(M_n < m_lo) <= 1e-12`` and ``P(M_n < m_hi) >= 1 - 1e-12``.
    """
    n = int(n)
    base = float(base)
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not base > 1.0:
        raise ValueError("base must exceed 1")
    _check_guards(a, n, max_n)
    if profile is None:
        try:
            profile = solve_profile(a, base)
        except DomainError:
            profile = None

    s_n = convolution_power(a, n)
    copies_log = n * math.log(base)
    log_f = log_strict_cdf(s_n)
    with np.errstate(divide="ignore", over="ignore"):
        log_max = -np.exp(copies_log + np.log(-log_f))
    log_max = np.where(log_f == 0.0, 0.0, log_max)
    # enforce monotonicity against last-bit noise
    log_max = np.maximum.accumulate(log_max)

    ms = np.arange(s_n.support_min, s_n.support_max + 2)
    low_ok = np.flatnonzero(log_max <= math.log(WINDOW_EPS))
    high_ok = np.flatnonzero(log_max >= math.log1p(-WINDOW_EPS))
    i_lo = int(low_ok[-1]) if len(low_ok) else 0
    i_hi = int(high_ok[0])
    return MaxLaw(
        n=n,
        base=base,
        copies_log=copies_log,
        m_lo=int(ms[i_lo]),
        m_hi=int(ms[i_hi]),
        log_cdf=log_max[i_lo : i_hi + 1],
        source_profile=profile,
    )


def centered_law(law, shift):
    """Relabel ``m -> m - shift``; numbers are untouched."""
    shift = int(shift)
    return replace(law, m_lo=law.m_lo - shift, m_hi=law.m_hi - shift)

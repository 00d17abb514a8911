"""Finitely supported probability laws on the integer lattice.

A :class:`LatticePMF` stores weights for the consecutive integers
``support_min, support_min + 1, ...``; interior gaps are explicit zeros.
All arithmetic is on nonnegative terms with compensated accumulation, so
relative errors stay near machine epsilon even for tails of order 1e-300.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._summation import fsum, reverse_cumsum, two_sum
from .errors import (
    AllZeroError,
    NegativeWeightError,
    NotNormalizedError,
    PMFParseError,
    SupportOverflowError,
)

__all__ = [
    "LatticePMF",
    "pmf_from_pairs",
    "point_mass",
    "bernoulli",
    "truncated_poisson",
    "convolve",
    "convolution_power",
    "cdf_strict",
    "tail",
    "tails",
    "parse_pmf",
    "read_pmf",
    "MAX_SUPPORT",
]

MAX_SUPPORT = 10_000_000
NORMALIZATION_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class LatticePMF:
    """Probability mass function on consecutive integers.

    Parameters
    ----------
    support_min : int
        Integer carrying ``probs[0]``.
    probs : array_like
        Nonnegative weights summing to one; first and last strictly positive.
    """

    support_min: int
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        probs = np.array(self.probs, dtype=np.float64, copy=True)
        if probs.ndim != 1 or len(probs) == 0:
            raise ValueError("probs must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(probs)):
            raise ValueError("probs must be finite")
        if np.any(probs < 0):
            raise NegativeWeightError("negative weight in pmf")
        if probs[0] <= 0 or probs[-1] <= 0:
            raise ValueError("pmf must be trimmed: first and last weights > 0")
        total = fsum(probs)
        if abs(total - 1.0) > 1e-12:
            raise NotNormalizedError(f"weights sum to {total!r}, not 1")
        probs.setflags(write=False)
        object.__setattr__(self, "support_min", int(self.support_min))
        object.__setattr__(self, "probs", probs)

    def __len__(self):
        return len(self.probs)

    def __repr__(self):
        return f"LatticePMF(support=[{self.support_min}, {self.support_max}], n_points={len(self)})"

    @property
    def support_max(self):
        return self.support_min + len(self.probs) - 1

    @property
    def omega(self):
        """Top of the support, the largest value with positive mass."""
        return self.support_max

    @property
    def p_omega(self):
        return float(self.probs[-1])

    @property
    def values(self):
        return np.arange(self.support_min, self.support_max + 1, dtype=np.int64)

    @property
    def n_atoms(self):
        return int(np.count_nonzero(self.probs))

    def is_degenerate(self):
        return self.n_atoms < 2

    def pmf(self, m):
        i = int(m) - self.support_min
        if 0 <= i < len(self.probs):
            return float(self.probs[i])
        return 0.0

    def mean(self):
        # relative to support_min keeps the products small
        offs = np.arange(len(self.probs), dtype=np.float64)
        return self.support_min + fsum(offs * self.probs)

    def variance(self):
        offs = np.arange(len(self.probs), dtype=np.float64)
        mu = fsum(offs * self.probs)
        return fsum((offs - mu) ** 2 * self.probs)

    def as_dict(self):
        return {int(v): float(p) for v, p in zip(self.values, self.probs) if p > 0}

    def allclose(self, other, atol=1e-12):
        if self.support_min != other.support_min or len(self) != len(other):
            return False
        return bool(np.max(np.abs(self.probs - other.probs)) <= atol)


def _trimmed(support_min, probs):
    # also drops extreme weights that underflowed to zero
    nz = np.flatnonzero(probs > 0)
    return support_min + int(nz[0]), probs[nz[0] : nz[-1] + 1]


def pmf_from_pairs(pairs, renormalize=False):
    """Build a :class:`LatticePMF` from ``(value, weight)`` pairs.

    Duplicate values are summed and the result is trimmed to its first and
    last positive weight. A raw total within 1e-9 of one is silently
    renormalized; larger deviations need ``renormalize=True``.
    """
    pairs = [(int(v), float(w)) for v, w in pairs]
    if not pairs:
        raise AllZeroError("no (value, weight) pairs given")
    for v, w in pairs:
        if not math.isfinite(w):
            raise ValueError(f"weight for value {v} is not finite")
        if w < 0:
            raise NegativeWeightError(f"negative weight {w!r} at value {v}")
    lo = min(v for v, _ in pairs)
    hi = max(v for v, _ in pairs)
    if hi - lo + 1 > MAX_SUPPORT:
        raise SupportOverflowError(f"support length {hi - lo + 1} exceeds {MAX_SUPPORT}")
    buckets = {}
    for v, w in pairs:
        buckets.setdefault(v, []).append(w)
    probs = np.zeros(hi - lo + 1)
    for v, ws in buckets.items():
        probs[v - lo] = math.fsum(ws)
    total = fsum(probs)
    if total <= 0:
        raise AllZeroError("all weights are zero")
    if abs(total - 1.0) > NORMALIZATION_SLACK and not renormalize:
        raise NotNormalizedError(
            f"weights sum to {total!r}; pass renormalize=True to rescale"
        )
    probs = probs / total
    support_min, probs = _trimmed(lo, probs)
    return LatticePMF(support_min, probs)


def point_mass(c):
    return LatticePMF(int(c), np.array([1.0]))


def bernoulli(p, low=0, high=1):
    """Two-point law with ``P(high) = p`` and ``P(low) = 1 - p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    return pmf_from_pairs([(high, p), (low, 1.0 - p)])


def truncated_poisson(lam, mass=1.0 - 1e-15):
    """Poisson(lam) cut at the first point where the retained mass reaches ``mass``."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    weights = []
    logw = -lam
    acc = 0.0
    k = 0
    while True:
        w = math.exp(logw)
        weights.append(w)
        acc = math.fsum([acc, w])
        if acc >= mass and k > lam:
            break
        k += 1
        logw += math.log(lam) - math.log(k)
    return pmf_from_pairs(list(enumerate(weights)), renormalize=True)


def _convolve_arrays(a, b):
    # loop over the shorter operand, vectorize over the longer one
    if len(a) > len(b):
        a, b = b, a
    n_out = len(a) + len(b) - 1
    s = np.zeros(n_out)
    c = np.zeros(n_out)
    for i, w in enumerate(a):
        if w == 0.0:
            continue
        view = slice(i, i + len(b))
        s[view], e = two_sum(s[view], w * b)
        c[view] += e
    return s + c


def _check_length(length, cap):
    if length > cap:
        raise SupportOverflowError(f"support length {length} exceeds cap {cap}")


def convolve(a, b, cap=MAX_SUPPORT):
    """Law of ``X + Y`` for independent ``X ~ a`` and ``Y ~ b``."""
    _check_length(len(a) + len(b) - 1, cap)
    probs = _convolve_arrays(a.probs, b.probs)
    return LatticePMF(*_trimmed(a.support_min + b.support_min, probs))


def convolution_power(a, n, cap=MAX_SUPPORT):
    """Law of ``S_n``, the sum of ``n`` independent copies of ``a``, by binary powering."""
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    _check_length(n * (len(a) - 1) + 1, cap)
    result = None
    base = a.probs
    k = n
    while True:
        if k & 1:
            result = base if result is None else _convolve_arrays(result, base)
        k >>= 1
        if not k:
            break
        base = _convolve_arrays(base, base)
    return LatticePMF(*_trimmed(n * a.support_min, result))


def cdf_strict(a, m):
    """``P(X < m)``, summed from the bottom of the support."""
    i = int(m) - a.support_min
    if i <= 0:
        return 0.0
    if i >= len(a.probs):
        return 1.0
    return min(1.0, fsum(a.probs[:i]))


def tail(a, m):
    """``P(X >= m)``, summed from the top of the support (never ``1 - cdf``)."""
    i = int(m) - a.support_min
    if i <= 0:
        return 1.0
    if i >= len(a.probs):
        return 0.0
    return min(1.0, fsum(a.probs[i:]))


def tails(a):
    """All upper tails at once: ``out[j] = P(X >= support_min + j)``."""
    return np.minimum(reverse_cumsum(a.probs), 1.0)


_RECORD = re.compile(r"^\s*([+-]?\d+)\s+(\S+)\s*$")


def parse_pmf(text, path=None, renormalize=False):
    """Parse the ``<integer value> <probability>`` line format.

    ``#`` comment lines and blank lines are skipped; values may repeat and
    appear in any order.
    """
    pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        match = _RECORD.match(line)
        if match is None:
            raise PMFParseError(f"expected '<integer> <probability>', got {stripped!r}", lineno, path)
        try:
            weight = float(match.group(2))
        except ValueError:
            raise PMFParseError(f"bad probability {match.group(2)!r}", lineno, path) from None
        if not math.isfinite(weight):
            raise PMFParseError(f"probability {match.group(2)!r} is not finite", lineno, path)
        pairs.append((int(match.group(1)), weight))
    if not pairs:
        raise PMFParseError("no records found", None, path)
    return pmf_from_pairs(pairs, renormalize=renormalize)


def read_pmf(path, renormalize=False):
    path = Path(path)
    return parse_pmf(path.read_text(), path=str(path), renormalize=renormalize)

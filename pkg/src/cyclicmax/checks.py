"""Invariant self-test suite behind ``cyclicmax check``.

Each check returns a :class:`CheckResult`; nothing here raises on a failed
property, so the CLI can report every line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cumulant import cumulant, entropy_gap, gap_limit, solve_profile
from .errors import DomainError
from .exactmax import max_law
from .helix import helix_point
from .lattice import cdf_strict, convolution_power, convolve, point_mass, tail

__all__ = ["CheckResult", "run_checks", "monte_carlo_max_check"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _normalization(a):
    s = convolution_power(a, 5)
    err = abs(math.fsum(s.probs.tolist()) - 1.0)
    return err <= 1e-11, f"|sum - 1| = {err:.3e}"


def _identity(a):
    ok = convolve(point_mass(0), a).allclose(a, atol=0.0)
    return ok, "delta_0 * a == a"


def _complementarity(a):
    s = convolution_power(a, 6)
    worst = 0.0
    for m in range(s.support_min, s.support_max + 2):
        if tail(s, m) >= 1e-3:
            worst = max(worst, abs(tail(s, m) + cdf_strict(s, m) - 1.0))
    return worst <= 1e-12, f"max |tail + cdf - 1| = {worst:.3e}"


def _convexity(a):
    worst = min(cumulant(a, g)[2] for g in np.linspace(0.0, 20.0, 81))
    return worst >= -1e-15, f"min L'' = {worst:.3e}"


def _gap_monotone(a):
    gs = [entropy_gap(a, g) for g in np.linspace(0.0, 20.0, 81)]
    ok = all(y <= x + 1e-15 for x, y in zip(gs, gs[1:]))
    return ok, "entropy gap non-increasing on [0, 20]"


def _gap_limit(a):
    diff = abs(entropy_gap(a, 40.0) - gap_limit(a))
    return diff <= 1e-10, f"|g(40) - ln p_omega| = {diff:.3e}"


def _profile(a, base):
    prof = solve_profile(a, base)
    ok = prof.residual <= 1e-12 and prof.mean < prof.rho_star < prof.omega and prof.gamma_star > 0
    return ok, f"gamma*={prof.gamma_star:.15g} residual={prof.residual:.3e}"


def _naive_identity(a, base):
    worst = 0.0
    for n in range(1, 7):
        law = max_law(a, n, base)
        s = convolution_power(a, n)
        for m in range(law.m_lo - 2, law.m_hi + 3):
            naive = cdf_strict(s, m) ** (base**n)
            if naive >= 1e-300:
                worst = max(worst, abs(naive - law.cdf_strict(m)))
    return worst <= 1e-12, f"max |exact - naive| = {worst:.3e}"


def _periodicity(a, base):
    prof = solve_profile(a, base)
    ms = np.arange(-10, 11)
    ok = True
    for shift in (0.0, 0.37, 0.99):
        h = helix_point(prof, shift)
        ok &= bool(np.array_equal(h.shifted(1).pmf(ms + 1), h.pmf(ms)))
    return ok, "F^{a+1}{m+1} == F^a{m} bitwise"


def monte_carlo_max_check(a, n=4, base=2, draws=1_000_000, seed=0):
    """Compare the exact law of ``M_n`` with simulated maxima; 3-sigma pointwise band."""
    copies = int(round(base**n))
    if abs(copies - base**n) > 1e-9:
        return True, f"skipped: {base}**{n} is not an integer copy count"
    rng = np.random.default_rng(seed)
    maxima = np.empty(draws, dtype=np.int64)
    chunk = 50_000
    for start in range(0, draws, chunk):
        size = min(chunk, draws - start)
        steps = rng.choice(a.values, size=(size, copies, n), p=a.probs)
        maxima[start : start + size] = steps.sum(axis=2).max(axis=1)
    law = max_law(a, n, base)
    worst = 0.0
    for m in range(law.m_lo, law.m_hi + 1):
        f = law.cdf_strict(m)
        emp = float(np.mean(maxima < m))
        band = 3.0 * math.sqrt(f * (1.0 - f) / draws)
        if band > 0:
            worst = max(worst, abs(emp - f) / band)
        elif emp != f:
            worst = math.inf
    return worst <= 1.0, f"max |emp - exact| / 3sigma = {worst:.3f}"


def run_checks(a, base=2.0, seed=0, draws=1_000_000):
    """Run every property check on step law ``a``; returns a list of :class:`CheckResult`."""
    checks = [
        ("normalization", lambda: _normalization(a)),
        ("convolution identity", lambda: _identity(a)),
        ("tail/cdf complementarity", lambda: _complementarity(a)),
        ("cumulant convexity", lambda: _convexity(a)),
        ("entropy gap monotone", lambda: _gap_monotone(a)),
        ("entropy gap limit", lambda: _gap_limit(a)),
        ("threshold solve", lambda: _profile(a, base)),
        ("max law vs naive power", lambda: _naive_identity(a, base)),
        ("helix periodicity", lambda: _periodicity(a, base)),
        ("monte carlo max law", lambda: monte_carlo_max_check(a, 4, base, draws, seed)),
    ]
    results = []
    for name, fn in checks:
        try:
            passed, detail = fn()
        except DomainError as exc:
            passed, detail = False, str(exc)
        results.append(CheckResult(name, bool(passed), detail))
    return results

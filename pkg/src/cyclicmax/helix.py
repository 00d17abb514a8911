"""The helix of discretized Gumbel laws and the cyclic comparison with exact maxima.

A helix point ``F^a`` is the integer law with strict CDF
``P(X < m) = exp(-exp(-gamma* (m - a)))``. Shifting ``a`` by one shifts the
law by one lattice step, so the family over ``a in [0, 1)`` is one closed
turn. The law of ``M_n`` tracks ``F^{a_n}`` while ``a_n mod 1`` keeps
drifting around the turn, so the centered laws have no single limit.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .cumulant import solve_profile
from .exactmax import MaxLaw, centered_law, max_law

__all__ = [
    "HelixPoint",
    "centering",
    "helix_point",
    "limit_tail_constant",
    "kolmogorov_distance",
    "total_variation",
    "ReportRow",
    "report_row",
    "cyclic_report",
    "report_to_csv",
    "frac",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("n", "a_n", "frac_a_n", "d_raw", "d_centered")
HELIX_EPS = 1e-14
MARGIN = 5


def frac(a):
    """Fractional part in ``[0, 1)``."""
    return a - math.floor(a)


@dataclass(frozen=True)
class HelixPoint:
    """``F^a`` with ``a = turn + phase``, ``turn`` an integer and ``0 <= phase < 1``.

    Keeping the integer part separate makes the shift relation
    ``F^{a+1}{m+1} == F^a{m}`` hold bit for bit: ``m - turn`` is exact.
    """

    gamma_star: float
    turn: int
    phase: float

    @property
    def a(self):
        return self.turn + self.phase

    def shifted(self, k):
        return HelixPoint(self.gamma_star, self.turn + int(k), self.phase)

    def cdf_strict(self, m):
        m = np.asarray(m, dtype=np.int64)
        x = (m - self.turn).astype(np.float64) - self.phase
        with np.errstate(over="ignore"):
            out = np.exp(-np.exp(-self.gamma_star * x))
        return float(out) if out.ndim == 0 else out

    def pmf(self, m):
        m = np.asarray(m, dtype=np.int64)
        return self.cdf_strict(m + 1) - self.cdf_strict(m)

    def upper_tail(self, m):
        """``P(X >= m)`` without cancellation: ``-expm1(-exp(-gamma*(m - a)))``."""
        m = np.asarray(m, dtype=np.int64)
        x = (m - self.turn).astype(np.float64) - self.phase
        with np.errstate(over="ignore"):
            out = -np.expm1(-np.exp(-self.gamma_star * x))
        return float(out) if out.ndim == 0 else out

    def essential_window(self, eps=HELIX_EPS):
        """Integer window outside of which the strict CDF is within ``eps`` of 0 or 1."""
        lo = self.a - math.log(-math.log(eps)) / self.gamma_star
        hi = self.a - math.log(-math.log1p(-eps)) / self.gamma_star
        return math.floor(lo), math.ceil(hi)


def centering(profile, n):
    """``a_n = rho* n - ln(sqrt(2 pi n) sigma* (1 - e^-gamma*)) / gamma*``."""
    g = profile.gamma_star
    log_scale = 0.5 * math.log(2.0 * math.pi * n) + math.log(profile.sigma_star) + math.log(-math.expm1(-g))
    return profile.rho_star * n - log_scale / g


def helix_point(profile, a):
    """The helix point ``F^a`` for the tilt of ``profile``."""
    turn = math.floor(a)
    return HelixPoint(float(profile.gamma_star), int(turn), float(a - turn))


def limit_tail_constant(gamma_star, sigma_star, z):
    """``exp(-gamma* z) / (sqrt(2 pi) sigma* (1 - e^-gamma*))``.

    Scale of ``b**n * P(S_n >= rho* n - ln n / (2 gamma*) + z)`` as ``n`` grows.
    """
    return math.exp(-gamma_star * z) / (math.sqrt(2.0 * math.pi) * sigma_star * -math.expm1(-gamma_star))


def _common_range(x, y):
    lx, hx = x.essential_window()
    ly, hy = y.essential_window()
    return np.arange(min(lx, ly) - MARGIN, max(hx, hy) + MARGIN + 1)


def kolmogorov_distance(x, y):
    """``sup_m |P(X < m) - P(Y < m)|`` over integers, for MaxLaw or HelixPoint operands."""
    ms = _common_range(x, y)
    return float(np.max(np.abs(x.cdf_strict(ms) - y.cdf_strict(ms))))


def total_variation(x, y):
    ms = _common_range(x, y)
    return float(0.5 * np.sum(np.abs(x.pmf(ms) - y.pmf(ms))))


@dataclass(frozen=True)
class ReportRow:
    n: int
    a_n: float
    frac_a_n: float
    d_raw: float
    d_centered: float


def report_row(a, n, base=2.0, profile=None):
    """One row of the cyclic comparison for step law ``a`` at index ``n``."""
    if profile is None:
        profile = solve_profile(a, base)
    law = max_law(a, n, base, profile=profile)
    a_n = centering(profile, n)
    d_raw = kolmogorov_distance(law, helix_point(profile, a_n))
    centered = centered_law(law, math.floor(a_n))
    d_centered = kolmogorov_distance(centered, helix_point(profile, frac(a_n)))
    return ReportRow(n, a_n, frac(a_n), d_raw, d_centered)


def cyclic_report(a, base, n_list):
    """Rows ``(n, a_n, frac(a_n), d_raw, d_centered)`` in ascending ``n``."""
    profile = solve_profile(a, base)
    return [report_row(a, n, base, profile) for n in sorted(set(int(n) for n in n_list))]


def _fmt(value):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "NA"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.15e}"


def report_to_csv(rows):
    """Serialize rows (``ReportRow`` or tuples; ``None`` cells become ``NA``)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        cells = (row.n, row.a_n, row.frac_a_n, row.d_raw, row.d_centered) if isinstance(row, ReportRow) else row
        writer.writerow([_fmt(c) for c in cells])
    return buf.getvalue()

"""Closed-form constants for the {0, 1}-valued Bernoulli(p) step, p < 1/2.

Here ``L(gamma) = ln(p e^gamma + q)`` and the threshold equation reduces to
the scalar equation ``2 p^rho q^(1-rho) = rho^rho (1-rho)^(1-rho)`` for the
drift ``rho*``. Everything else follows in closed form:
``kappa = p(1-rho*)/(q rho*)``, ``gamma* = -ln kappa``,
``sigma* = sqrt(rho*(1-rho*))`` and ``beta = 2 pi sigma*^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cumulant import solve_profile
from .errors import OutOfRangeError
from .lattice import bernoulli

__all__ = [
    "BernoulliProfile",
    "kl_excess",
    "drift_equation_residual",
    "solve_bernoulli",
    "bernoulli_centering",
    "bernoulli_tail_constant",
    "generic_deltas",
]


@dataclass(frozen=True)
class BernoulliProfile:
    p: float
    q: float
    rho_star: float
    kappa: float
    beta: float
    gamma_star: float
    sigma_star: float


def _xlogx_ratio(x, y):
    return 0.0 if x == 0.0 else x * math.log(x / y)


def kl_excess(rho, p):
    """``KL(Bern(rho) || Bern(p)) - ln 2``; increasing in ``rho`` on ``(p, 1]``."""
    q = 1.0 - p
    return _xlogx_ratio(rho, p) + _xlogx_ratio(1.0 - rho, q) - math.log(2.0)


def drift_equation_residual(rho, p):
    """``2 p^rho q^(1-rho) - rho^rho (1-rho)^(1-rho)``."""
    q = 1.0 - p
    lhs = 2.0 * p**rho * q ** (1.0 - rho)
    rhs = rho**rho * (1.0 - rho) ** (1.0 - rho)
    return lhs - rhs


def solve_bernoulli(p):
    """Solve for ``rho*`` by bisection on ``(p, 1)`` and derive the other constants."""
    p = float(p)
    if not 0.0 < p < 0.5:
        raise OutOfRangeError(f"no solution: need 0 < p < 1/2, got p={p!r}")
    lo, hi = p, 1.0
    # kl_excess(p) = -ln 2 < 0 and kl_excess(1) = -ln p - ln 2 > 0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if kl_excess(mid, p) < 0.0:
            lo = mid
        else:
            hi = mid
    rho = lo if abs(kl_excess(lo, p)) <= abs(kl_excess(hi, p)) else hi
    q = 1.0 - p
    kappa = p * (1.0 - rho) / (q * rho)
    var = rho * (1.0 - rho)
    return BernoulliProfile(
        p=p,
        q=q,
        rho_star=rho,
        kappa=kappa,
        beta=2.0 * math.pi * var,
        gamma_star=-math.log(kappa),
        sigma_star=math.sqrt(var),
    )


def bernoulli_centering(prof, n):
    """``rho* n - ln(beta n) / (2 |ln kappa|)``."""
    return prof.rho_star * n - math.log(prof.beta * n) / (2.0 * abs(math.log(prof.kappa)))


def bernoulli_tail_constant(prof, z):
    """``kappa^z / (1 - kappa)``, the Bernoulli form of the Gumbel scale at offset ``z``."""
    return prof.kappa**z / (1.0 - prof.kappa)


def generic_deltas(prof, tol=1e-12):
    """Closed form minus generic solver, componentwise, for base 2."""
    generic = solve_profile(bernoulli(prof.p), 2.0, tol=tol)
    return {
        "rho_star": prof.rho_star - generic.rho_star,
        "gamma_star": prof.gamma_star - generic.gamma_star,
        "sigma_star": prof.sigma_star - generic.sigma_star,
    }

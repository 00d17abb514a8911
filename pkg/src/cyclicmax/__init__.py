"""Exact and asymptotic laws for the maximum of ``b**n`` i.i.d. lattice random walks."""

from .bernoulli import BernoulliProfile, bernoulli_centering, solve_bernoulli
from .cumulant import CumulantProfile, cumulant, entropy_gap, gap_limit, solve_profile
from .errors import (
    DegenerateDistributionError,
    DomainError,
    NoSolutionError,
    OutOfRangeError,
    PMFParseError,
    UnderflowRiskError,
)
from .exactmax import MaxLaw, centered_law, max_law
from .helix import HelixPoint, centering, cyclic_report, helix_point, kolmogorov_distance
from .lattice import (
    LatticePMF,
    bernoulli,
    cdf_strict,
    convolution_power,
    convolve,
    pmf_from_pairs,
    point_mass,
    read_pmf,
    tail,
)
from .petrov import TailEstimate, tail_approx, tilt_for_level

__version__ = "0.1.0"

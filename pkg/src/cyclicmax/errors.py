"""Exception hierarchy.

Everything a caller can get wrong about the *mathematics* raises a
:class:`DomainError`; malformed input files raise :class:`PMFParseError`.
The CLI maps the former to exit code 2 and the latter to exit code 3.
"""


class DomainError(ValueError):
    """Base class for mathematically invalid requests."""


class NegativeWeightError(DomainError):
    pass


class AllZeroError(DomainError):
    pass


class NotNormalizedError(DomainError):
    pass


class SupportOverflowError(DomainError):
    """Resulting support would exceed the configured length cap."""


class DegenerateDistributionError(DomainError):
    """Law concentrated in a single point; the entropy gap is identically 0."""


class NoSolutionError(DomainError):
    """P(xi = omega) >= 1/b, so the entropy gap never reaches -ln b."""


class OutOfRangeError(DomainError):
    pass


class UnderflowRiskError(DomainError):
    """Double precision cannot represent the law of S_n faithfully."""


class PMFParseError(Exception):
    def __init__(self, message, lineno=None, path=None):
        self.lineno = lineno
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)

"""Compensated (Neumaier) accumulation helpers shared by the numeric modules."""

import math

import numpy as np


def two_sum(a, b):
    """Error-free transformation: ``a + b == s + e`` exactly. Works elementwise on arrays."""
    s = a + b
    bp = s - a
    e = (a - (s - bp)) + (b - bp)
    return s, e


def reverse_cumsum(values):
    """Compensated suffix sums: ``out[i] = sum(values[i:])``.

    Accumulates from the end of the array so that small trailing terms are
    never absorbed by a large running total.
    """
    values = np.asarray(values, dtype=np.float64)
    out = np.empty(len(values) + 1)
    out[-1] = 0.0
    s = 0.0
    c = 0.0
    for i in range(len(values) - 1, -1, -1):
        s, e = two_sum(s, float(values[i]))
        c += e
        out[i] = s + c
    return out[:-1]


def cumsum(values):
    """Compensated prefix sums: ``out[i] = sum(values[: i + 1])``."""
    return reverse_cumsum(np.asarray(values, dtype=np.float64)[::-1])[::-1]


def fsum(values):
    return math.fsum(np.asarray(values, dtype=np.float64).tolist())

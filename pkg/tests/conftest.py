import math

import mpmath
import numpy as np
import pytest
from hypothesis import strategies as st

from cyclicmax.lattice import LatticePMF, bernoulli, pmf_from_pairs


def binomial_pmf(n, p):
    """Closed-form binomial weights, independent of any convolution code."""
    return np.array([math.comb(n, k) * p**k * (1 - p) ** (n - k) for k in range(n + 1)])


def brute_convolve(a, b):
    """Double loop over all value pairs, plain summation."""
    out = {}
    for va, pa in zip(a.values, a.probs):
        for vb, pb in zip(b.values, b.probs):
            out[int(va + vb)] = out.get(int(va + vb), 0.0) + pa * pb
    lo = min(out)
    probs = np.array([out.get(v, 0.0) for v in range(lo, max(out) + 1)])
    return lo, probs


def mp_binomial_tail(n, p, m, dps=60):
    with mpmath.workdps(dps):
        p = mpmath.mpf(p)
        return mpmath.fsum(mpmath.binomial(n, k) * p**k * (1 - p) ** (n - k) for k in range(max(m, 0), n + 1))


@st.composite
def small_pmfs(draw, max_len=6):
    length = draw(st.integers(min_value=1, max_value=max_len))
    raw = draw(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=length, max_size=length))
    raw[0] = max(raw[0], 0.05)
    raw[-1] = max(raw[-1], 0.05)
    lo = draw(st.integers(min_value=-4, max_value=4))
    return pmf_from_pairs([(lo + i, w) for i, w in enumerate(raw)], renormalize=True)


@pytest.fixture
def bern03():
    return bernoulli(0.3)


@pytest.fixture
def three_point():
    return pmf_from_pairs([(-2, 0.5), (0, 0.3), (1, 0.2)])


@pytest.fixture
def random_pmfs():
    rng = np.random.default_rng(20240601)
    out = []
    for _ in range(5):
        k = int(rng.integers(2, 7))
        w = rng.random(k) + 0.05
        out.append(LatticePMF(int(rng.integers(-3, 4)), w / w.sum()))
    return out


_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (ok, detail); asserts ``ok``."""

    def record(ok, detail):
        label = request.node.name
        _ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        print(_ACCEPTANCE[-1])
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)

import math
import warnings

import pytest

from cyclicmax.cumulant import cumulant, solve_profile
from cyclicmax.errors import OutOfRangeError
from cyclicmax.helix import limit_tail_constant
from cyclicmax.lattice import bernoulli, convolution_power, point_mass, tail
from cyclicmax.petrov import (
    AsymptoticRegimeWarning,
    compare_with_exact,
    rate,
    tail_approx,
    tilt_for_level,
)

from conftest import mp_binomial_tail


class TestTilt:
    @pytest.mark.parametrize("rho", [0.35, 0.5, 0.8646, 0.99])
    def test_bernoulli_closed_form(self, bern03, rho):
        g = tilt_for_level(bern03, rho)
        assert math.exp(g) == pytest.approx(rho * 0.7 / (0.3 * (1 - rho)), rel=1e-11)
        assert abs(cumulant(bern03, g)[1] - rho) <= 1e-12

    def test_small_tilt(self, bern03):
        eps = 1e-6
        g = tilt_for_level(bern03, 0.3 + eps)
        assert 0 < g <= 1e-4
        assert g == pytest.approx(eps / bern03.variance(), rel=1e-3)

    def test_out_of_range(self, bern03, three_point):
        for x in (1.0, 1.5, 0.3, 0.1):
            with pytest.raises(OutOfRangeError):
                tilt_for_level(bern03, x)
        with pytest.raises(OutOfRangeError):
            tilt_for_level(point_mass(2), 2.0)
        g = tilt_for_level(three_point, 0.5)
        assert abs(cumulant(three_point, g)[1] - 0.5) <= 1e-12


class TestTailApprox:
    def test_accuracy_at_drift_level(self, bern03):
        prof = solve_profile(bern03)
        ratios = {}
        for n in (100, 200, 400):
            _, _, ratios[n] = compare_with_exact(bern03, n, round(prof.rho_star * n))
        assert 0.95 <= ratios[100] <= 1.05
        assert abs(ratios[400] - 1) < abs(ratios[200] - 1) < abs(ratios[100] - 1)

    @pytest.mark.parametrize("n,m", [(100, 60), (100, 70), (200, 120), (300, 290)])
    def test_against_high_precision_tail(self, n, m):
        est = tail_approx(bernoulli(0.3), n, m)
        exact = float(mp_binomial_tail(n, 0.3, m))
        assert est.estimate / exact == pytest.approx(1.0, abs=0.05)

    def test_fields(self, bern03):
        est = tail_approx(bern03, 100, 86)
        assert est.x == 0.86
        assert abs(cumulant(bern03, est.gamma)[1] - est.x) <= 1e-12
        assert 0 < est.estimate < 1
        assert math.isfinite(est.log_estimate)
        L, _, L2 = cumulant(bern03, est.gamma)
        expected = -100 * (est.gamma * est.x - L) - math.log(math.sqrt(2 * math.pi * L2 * 100) * (1 - math.exp(-est.gamma)))
        assert est.log_estimate == pytest.approx(expected, rel=1e-12)

    @pytest.mark.filterwarnings("ignore::cyclicmax.petrov.AsymptoticRegimeWarning")
    def test_decreasing_in_m(self, bern03):
        vals = [tail_approx(bern03, 100, m).log_estimate for m in range(35, 100)]
        assert all(y < x for x, y in zip(vals, vals[1:]))

    def test_rate_nonnegative(self, three_point):
        mean = three_point.mean()
        assert rate(three_point, 0.0, mean) == 0.0
        for x in (mean + 0.01, 0.0, 0.5, 0.99):
            g = tilt_for_level(three_point, x)
            assert rate(three_point, g, x) > 0

    def test_regime_warning(self, bern03):
        with pytest.warns(AsymptoticRegimeWarning):
            tail_approx(bern03, 10, 4)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            tail_approx(bern03, 100, 86)

    def test_exact_tail_helper(self, bern03):
        est, exact, ratio = compare_with_exact(bern03, 50, 40)
        assert exact == tail(convolution_power(bern03, 50), 40)
        assert ratio == est.estimate / exact


def _chain_ratios(prof, a, n, zs):
    """b^n times the estimate at m = ceil(rho* n - ln n / (2 gamma*)) + z, over the limit constant."""
    base_level = prof.rho_star * n - math.log(n) / (2 * prof.gamma_star)
    out = []
    for z in zs:
        m = math.ceil(base_level) + z
        est = tail_approx(a, n, m)
        scaled = math.exp(n * math.log(2) + est.log_estimate)
        out.append(scaled / limit_tail_constant(prof.gamma_star, prof.sigma_star, m - base_level))
    return out


@pytest.mark.xfail(strict=True, reason="at n=64 the ratio is 0.44..1.0 over z in -2..4; the (1+o(1)) is still large")
def test_chain_within_ten_percent_at_64(bern03):
    prof = solve_profile(bern03)
    ratios = _chain_ratios(prof, bern03, 64, range(-2, 5))
    assert all(abs(r - 1) <= 0.10 for r in ratios)


def test_chain_converges_in_n(bern03):
    prof = solve_profile(bern03)
    worst = [max(abs(r - 1) for r in _chain_ratios(prof, bern03, n, range(-2, 5))) for n in (64, 256, 1024, 4096)]
    assert all(y < x for x, y in zip(worst, worst[1:]))
    assert worst[2] <= 0.10
    assert worst[3] <= 0.02

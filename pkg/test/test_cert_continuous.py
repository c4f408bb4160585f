import math

import numpy as np
import pytest

from lyapcert.core.errors.exceptions import ContinuationStallError, ParameterError, PoleError
from lyapcert.domains.cert_continuous.service import (
    F_appendix,
    appendix_certificate,
    appendix_construct,
    appendix_max_rate,
    certify_ode,
    certify_ode_appendix,
    lambda_multiplier,
    optimality_check,
    solve_r_bar,
    trace_appendix_curve,
    xi_bar,
)
from lyapcert.domains.cert_discrete.service import xi_delta
from lyapcert.domains.lmi.service import is_negative_semidefinite

# kappa, r_bar - 1, s_bar, p11/m - 1/2, p12/m - 1/2, p22/m - 1/2 to two significant figures.
PRINTED_ROWS = [
    (1e1, 8.6e-2, 4.1e-1, 1.6e-1, 2.5e-1, 3.4e-1),
    (1e2, 1.8e-2, 1.3e-1, 2.7e-2, 7.6e-2, 1.3e-1),
    (1e3, 3.9e-3, 5.5e-2, 5.2e-3, 2.9e-2, 5.5e-2),
    (1e4, 8.2e-4, 2.4e-2, 1.1e-3, 1.3e-2, 2.4e-2),
    (1e5, 1.8e-4, 1.1e-2, 2.3e-4, 5.5e-3, 1.1e-2),
    (1e6, 3.8e-5, 5.0e-3, 5.0e-5, 2.5e-3, 5.0e-3),
    (1e7, 8.1e-6, 2.3e-3, 1.1e-5, 1.2e-3, 2.3e-3),
    (1e8, 1.7e-6, 1.1e-3, 2.3e-6, 5.4e-4, 1.1e-3),
    (1e9, 3.8e-7, 5.0e-4, 5.0e-7, 2.5e-4, 5.0e-4),
]


def close_2sf(value: float, printed: float) -> bool:
    unit = 10.0 ** (math.floor(math.log10(abs(printed))) - 1)
    return abs(value - printed) <= 0.6 * unit


@pytest.fixture(scope="module")
def max_rate_points():
    return {row[0]: appendix_max_rate(row[0]) for row in PRINTED_ROWS}


def test_xi_bar_examples():
    assert xi_bar(1.0, 2.0) == 0.0
    assert xi_bar(0.0, 5.0) == -10.0
    assert xi_bar(0.6, 3.6) == pytest.approx(0.0, abs=1e-13)


def test_xi_bar_is_odd(rng):
    for r, b in rng.uniform(-3.0, 3.0, (200, 2)):
        assert xi_bar(-r, -b) == pytest.approx(-xi_bar(r, b), abs=1e-12)


def test_xi_delta_tends_to_xi_bar():
    grid = [(r, b) for r in np.linspace(0.0, 1.0, 21) for b in np.linspace(0.0, 4.0, 41)]
    gaps = []
    for delta in (1e-2, 1e-3, 1e-4):
        gaps.append(max(abs(xi_delta(r, b, delta) - xi_bar(r, b)) for r, b in grid))
    assert gaps[1] < gaps[0] / 5.0 and gaps[2] < gaps[1] / 5.0
    assert gaps[2] <= 50.0 * 1e-4


@pytest.mark.parametrize("b_bar, expected", [(2.0, 1.0), (3.6, 0.6), (0.0, 0.0)])
def test_solve_r_bar_examples(b_bar, expected):
    assert solve_r_bar(b_bar) == pytest.approx(expected, abs=1e-12)


def test_certify_ode_examples():
    cert = certify_ode(1.0, 2.0)
    assert cert.lam == pytest.approx(1.0, abs=1e-12)
    p = cert.P_bar_hat
    assert (p.p11, p.p12, p.p22) == pytest.approx((0.5, 0.5, 0.5), abs=1e-12)
    assert certify_ode(4.0, 2.0).lam == pytest.approx(2.0, abs=1e-12)

    conservative = certify_ode(1.0, 0.0)
    assert conservative.lam == 0.0
    assert (conservative.P_bar_hat.p12, conservative.P_bar_hat.p22) == (0.0, 0.0)
    assert conservative.T_bar_hat.scale <= 1e-15


def test_certify_ode_rejects_negative_friction():
    with pytest.raises(ParameterError):
        certify_ode(1.0, -0.5)
    with pytest.raises(ParameterError):
        certify_ode(0.0, 2.0)


@pytest.mark.parametrize("b_bar", np.linspace(0.1, 10.0, 25))
def test_certify_ode_across_friction(b_bar):
    cert = certify_ode(2.0, float(b_bar))
    assert cert.valid
    assert 0.0 < cert.r_bar <= 1.0 + 1e-12
    assert abs(xi_bar(cert.r_bar, float(b_bar))) <= 1e-10 * max(1.0, b_bar**2)


def test_optimality_examples():
    report = optimality_check(2.0)
    assert report.lambda_at_star == pytest.approx(-1.0, abs=1e-12)
    assert abs(report.delta_at_star) <= 1e-12 * report.delta_scale
    assert lambda_multiplier(0.6, 3.6) == pytest.approx(-2.52, abs=1e-12)
    assert optimality_check(3.6).lambda_at_star == pytest.approx(-2.52, abs=1e-10)


def test_multiplier_keeps_its_sign():
    for b_bar in np.linspace(0.1, 10.0, 100):
        report = optimality_check(float(b_bar), m=1.5)
        assert report.lambda_at_star < 0.0
        assert abs(report.delta_at_star) <= 1e-10 * report.delta_scale
        assert abs(report.identity_residual) <= 1e-10 * max(1.0, b_bar**2)


def test_F_appendix_examples():
    assert F_appendix(1.0, 1.0, 1.0) == pytest.approx(0.25, abs=1e-15)
    for kappa in (1.5, 10.0, 1e6):
        assert F_appendix(1.0, 0.0, kappa) == 0.0


def test_F_appendix_near_unit_rate():
    kappa = 10.0
    points = [(r, s) for r, s in trace_appendix_curve(kappa, 400) if 0.0 < r - 1.0 < 1e-3 and s > 0.0]
    assert points
    for r, s in points:
        assert s / (r - 1.0) ** 2 == pytest.approx(2.0 * (kappa + 1.0), rel=0.05)
        assert abs(F_appendix(r, s, kappa)) <= 1e-12


def test_appendix_construct_examples():
    for kappa in (2.0, 10.0, 1e5):
        p11, p12, p22, b_bar = appendix_construct(1.0, 0.0, kappa, m=3.0)
        assert (p11, p12, p22) == pytest.approx((1.5, 1.5, 1.5))
        assert b_bar == pytest.approx(2.0)
    with pytest.raises(ParameterError):
        appendix_construct(0.0, 0.5, 10.0)
    with pytest.raises(PoleError):
        F_appendix(0.0, 0.0, 10.0)


def test_appendix_construct_relations():
    r, s, kappa = 1.05, 0.3, 20.0
    p11, p12, p22, b_bar = appendix_construct(r, s, kappa)
    assert p11 * p22 - p12 * p12 == pytest.approx(0.0, abs=1e-14)
    assert p12 == pytest.approx(0.5 * (r + s))
    # t12 = 0 at lambda = r for m = 1.
    assert -b_bar * p12 + p22 + r * p12 == pytest.approx(0.0, abs=1e-14)


def test_max_rate_matches_printed_rows(max_rate_points):
    for kappa, r_m1, s, q11, q12, q22 in PRINTED_ROWS:
        point = max_rate_points[kappa]
        assert close_2sf(point.r_bar - 1.0, r_m1), kappa
        assert close_2sf(point.s_bar, s), kappa
        assert close_2sf(point.p11_over_m - 0.5, q11), kappa
        assert close_2sf(point.p12_over_m - 0.5, q12), kappa
        assert close_2sf(point.p22_over_m - 0.5, q22), kappa
        assert abs(F_appendix(point.r_bar, point.s_bar, kappa)) <= 1e-10


def test_max_rate_is_certified(max_rate_points):
    for point in max_rate_points.values():
        cert = appendix_certificate(point, m=1.0)
        assert cert.valid
        assert cert.lam == pytest.approx(point.r_bar)


def test_max_rate_asymptotics(max_rate_points):
    kappas = np.array([1e4, 1e5, 1e6, 1e7, 1e8, 1e9])
    r_m1 = np.array([max_rate_points[k].r_bar - 1.0 for k in kappas])
    s = np.array([max_rate_points[k].s_bar for k in kappas])
    assert np.polyfit(np.log(kappas), np.log(r_m1), 1)[0] == pytest.approx(-2.0 / 3.0, abs=0.05)
    assert np.polyfit(np.log(kappas), np.log(s), 1)[0] == pytest.approx(-1.0 / 3.0, abs=0.05)
    assert r_m1[-1] * 1e9 ** (2.0 / 3.0) == pytest.approx(0.38, rel=0.1)
    assert s[-1] * 1e9 ** (1.0 / 3.0) == pytest.approx(0.50, rel=0.1)


def test_decay_exponents(max_rate_points):
    assert max_rate_points[1e1].r_bar == pytest.approx(1.086, abs=6e-4)
    assert max_rate_points[1e3].r_bar == pytest.approx(1.0039, abs=6e-5)


def test_max_rate_rejects_unit_kappa():
    with pytest.raises(ParameterError):
        appendix_max_rate(1.0)


def test_max_rate_stalls_without_turning_point():
    # At kappa = 1 the branch is s = (r^2 - 1)^2 / (r (2 - r^2)), so r only tends to sqrt(2).
    with pytest.raises(ContinuationStallError):
        appendix_max_rate(1.0 + 1e-9, max_steps=500)


def test_certify_ode_appendix_scales_with_m():
    cert = certify_ode_appendix(4.0, 400.0)
    assert cert.valid
    assert cert.sigma == pytest.approx(2.0 * cert.s_bar)
    assert cert.lam == pytest.approx(2.0 * cert.r_bar)
    assert is_negative_semidefinite(cert.T_bar_hat)
    assert cert.lam > 2.0


def test_appendix_sigma_scales_with_sqrt_m():
    point = appendix_max_rate(10.0)
    cert = appendix_certificate(point, m=4.0)
    assert cert.valid
    assert cert.sigma == pytest.approx(2.0 * point.s_bar)
    assert cert.L == pytest.approx(40.0)
    # t23 = -p12/sqrt(m) + (lam + sigma)/2 vanishes only for sigma = sqrt(m) s_bar.
    assert cert.T_bar_hat.t23 == pytest.approx(0.0, abs=1e-12)
    assert is_negative_semidefinite(cert.T_bar_hat)

import math

import numpy as np
import pytest

from lyapcert.core.errors.exceptions import ParameterError
from lyapcert.domains.cert_continuous.service import certify_ode
from lyapcert.domains.cert_discrete.service import build_P_hat, solve_r
from lyapcert.domains.lmi.model import LmiKnobs, Sym2
from lyapcert.domains.lmi.service import assemble_discrete_T_hat, build_state_space_hat, nuevoT_direct
from lyapcert.domains.negative_results.schemas import ScanReport
from lyapcert.domains.negative_results.service import contradiction_limit, infeasibility_scan, t11_general, t11_heavy
from lyapcert.domains.problem.model import NondimParams, ProblemClass


def test_t11_general_matches_assembled_entry(rng):
    for _ in range(300):
        m = rng.uniform(0.2, 3.0)
        pc = ProblemClass(m=m, L=m * rng.uniform(1.0, 1e3))
        delta = rng.uniform(0.01, 0.9)
        nd = NondimParams(delta=delta, b=rng.uniform(0.0, 3.0))
        gamma = rng.uniform(-1.0, 1.0)
        P = Sym2(*rng.uniform(0.0, 5.0, 3))
        rho_sq = rng.uniform(0.0, 1.0)
        T = assemble_discrete_T_hat(
            build_state_space_hat(nd, gamma, delta * delta / m), P, LmiKnobs(rho_sq=rho_sq), pc
        )
        assert t11_general(P, rho_sq, delta, nd.beta, gamma, pc) == pytest.approx(T.t11, abs=1e-12 * max(1.0, T.scale))


def test_t11_reduces_to_both_families(rng, pc100):
    for _ in range(100):
        delta = rng.uniform(0.01, 0.1)
        nd = NondimParams(delta=delta, b=rng.uniform(0.5, 3.0))
        P = Sym2(*rng.uniform(0.0, 2.0, 3))
        rho_sq = rng.uniform(0.5, 1.0)
        nesterov = nuevoT_direct(nd, delta * delta, P, rho_sq, pc100).t11
        assert t11_general(P, rho_sq, delta, nd.beta, nd.beta, pc100) == pytest.approx(nesterov, abs=1e-13)
        assert t11_general(P, rho_sq, delta, nd.beta, 0.0, pc100) == t11_heavy(P, rho_sq, delta, nd.beta, pc100)


def test_heavy_ball_t11_without_lyapunov_matrix():
    zero = Sym2(0.0, 0.0, 0.0)
    beta, delta = 0.8, 0.1
    for L in (1.0, 10.0, 1e6):
        pc = ProblemClass(m=1.0, L=L)
        assert t11_heavy(zero, beta * beta, delta, beta, pc) == pytest.approx(0.5 * delta**2 * L * beta**2)
    # The momentum mismatch term grows without bound in L.
    values = [t11_general(zero, 0.25, 0.1, 0.5, 0.2, ProblemClass(1.0, L)) for L in (1e2, 1e4, 1e6)]
    assert values[0] < values[1] < values[2]
    assert values[2] > 1e2


def test_contradiction_limit_value():
    cert = certify_ode(1.0, 2.0)
    value = contradiction_limit(2.0, cert.lam, cert.P_bar_hat, 1.0, ProblemClass(1.0, 1e6))
    assert value == pytest.approx(499.5, abs=1e-6)


def test_contradiction_grows_like_sqrt_L():
    cert = certify_ode(1.0, 2.0)
    for L in (1e6, 1e8, 1e10):
        value = contradiction_limit(2.0, cert.lam, cert.P_bar_hat, 1.0, ProblemClass(1.0, L))
        assert value == pytest.approx(0.5 * math.sqrt(L), rel=0.05)


def test_contradiction_is_the_small_step_limit():
    pc = ProblemClass(1.0, 1.0)
    cert = certify_ode(1.0, 2.0)
    limit = contradiction_limit(2.0, cert.lam, cert.P_bar_hat, 0.0, pc)
    for delta in (1e-2, 1e-3, 1e-4):
        r = solve_r(2.0, delta)
        nd = NondimParams(delta=delta, b=2.0)
        value = t11_heavy(build_P_hat(r, delta, 1.0), 1.0 - r * delta, delta, nd.beta, pc) / delta
        assert abs(value - limit) <= 10.0 * delta


@pytest.mark.parametrize("m, L", [(1.0, 1.0), (4.0, 100.0)])
@pytest.mark.parametrize("b_bar", [2.0, 3.0])
def test_contradiction_matches_t11_at_tiny_step(m, L, b_bar):
    pc = ProblemClass(m, L)
    cert = certify_ode(m, b_bar)
    h = 1e-6
    delta = math.sqrt(m) * h
    c = delta * math.sqrt(L / m)
    r = solve_r(b_bar, delta)
    nd = NondimParams(delta=delta, b=b_bar)
    value = t11_heavy(build_P_hat(r, delta, m), 1.0 - r * delta, delta, nd.beta, pc) / delta
    limit = contradiction_limit(b_bar, cert.lam, cert.P_bar_hat, c, pc)
    assert value == pytest.approx(limit, abs=1e-4 * m)


def test_scan_finds_no_heavy_ball_certificate():
    report = infeasibility_scan(1e4, 1.0, 100_000, seed=42)
    assert not report.feasible
    assert report.min_lambda_max > 0.0
    assert report.gamma == 0.0
    assert report.witness.source == "sample"
    assert report.delta == pytest.approx(0.009)
    assert report.contradiction > 0.0


def test_scan_control_finds_nesterov_certificate():
    report = infeasibility_scan(1e4, 1.0, 10_000, seed=42, gamma_equals_beta=True)
    assert report.feasible
    assert report.witness.source == "analytic"
    assert report.gamma == report.beta


def test_scan_at_unit_condition_number():
    # Heavy Ball with delta = 0.9 and beta = -0.8 diverges on F_{1,1}, so no certificate exists.
    report = infeasibility_scan(1.0, 1.0, 2_000, seed=1)
    assert not report.feasible
    assert report.delta == pytest.approx(0.9)
    assert report.beta == pytest.approx(-0.8)


def test_obstruction_grows_with_condition_number():
    minima = [infeasibility_scan(k, 1.0, 20_000, seed=7).min_lambda_max for k in (1e2, 1e3, 1e4)]
    assert all(value > 0.0 for value in minima)
    assert minima[0] <= minima[1] <= minima[2]


def test_scan_is_reproducible():
    a = infeasibility_scan(1e3, 1.0, 5_000, seed=3)
    b = infeasibility_scan(1e3, 1.0, 5_000, seed=3)
    assert a.model_dump() == b.model_dump()
    assert ScanReport.model_validate_json(a.model_dump_json()) == a


def test_scan_rejects():
    with pytest.raises(ParameterError):
        infeasibility_scan(1e4, 0.0, 10)
    with pytest.raises(ParameterError):
        infeasibility_scan(1e4, 1.0, 0)
    with pytest.raises(ParameterError):
        infeasibility_scan(1.0, 2.0, 10)
    with pytest.raises(ParameterError):
        infeasibility_scan(0.5, 1.0, 10)


def test_scan_witness_is_psd():
    report = infeasibility_scan(1e2, 1.0, 1_000, seed=5)
    w = report.witness
    assert np.all(np.linalg.eigvalsh(np.array([[w.p11, w.p12], [w.p12, w.p22]])) >= -1e-12)
    assert 0.0 < 1.0 - w.rho_sq <= report.delta

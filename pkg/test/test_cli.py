import json

import pytest

from lyapcert.core.output import parse_csv, read_json
from lyapcert.domains.cert_discrete.schemas import CertifyRecord
from lyapcert.domains.negative_results.schemas import ScanReport
from lyapcert.main import cli


def _run(runner, args, env=None):
    return runner.invoke(cli, args, env=env, catch_exceptions=False)


def _csv(path):
    return parse_csv(path.read_text(encoding="utf-8"))


def test_certify_optimal_json(runner, tmp_path):
    out = tmp_path / "cert.json"
    result = _run(runner, ["certify", "--m", "1", "--L", "100", "--optimal", "--out", str(out)])
    assert result.exit_code == 0
    record = read_json(CertifyRecord, out.read_text(encoding="utf-8"))
    assert record.valid
    assert record.rho_sq == pytest.approx(0.9, abs=1e-12)
    assert record.params["optimal"] is True
    assert record.T_hat_eigenvalues[-1] <= 1e-12


def test_certify_gd_csv(runner, tmp_path):
    out = tmp_path / "cert.csv"
    args = ["certify", "--m", "1", "--L", "100", "--alpha", "0.01", "--beta", "0", "--format", "csv", "--out", str(out)]
    assert _run(runner, args).exit_code == 0
    comment, rows = _csv(out)
    assert comment.startswith("# lyapcert certify ")
    assert "alpha=0.01" in comment
    assert float(rows[0]["rho_sq"]) == pytest.approx(0.99, abs=1e-12)
    assert rows[0]["valid"] == "true"


def test_certify_reports_violated_hypothesis(runner):
    result = _run(runner, ["certify", "--m", "1", "--L", "4", "--alpha", "0.5", "--beta", "0.1"])
    assert result.exit_code == 2
    assert "INVALID_PARAMETER" in result.output
    assert "alpha <= 1/L" in result.output


def test_certify_needs_parameters(runner):
    result = _run(runner, ["certify", "--m", "1", "--L", "4"])
    assert result.exit_code == 2
    payload = json.loads(result.output.strip().splitlines()[-1])
    assert payload["error"]["code"] == "INVALID_PARAMETER"


def test_curve_marks_double_root(runner, tmp_path):
    out = tmp_path / "curve.csv"
    assert _run(runner, ["curve", "--delta", "0.5", "--samples", "2", "--out", str(out)]).exit_code == 0
    _, rows = _csv(out)
    assert len(rows) == 3
    marker = rows[-1]
    assert marker["marker"] == "true"
    assert float(marker["b"]) == pytest.approx(4.0 / 3.0)
    assert float(marker["r"]) == pytest.approx(1.0, abs=1e-12)
    assert all(row["marker"] == "false" for row in rows[:-1])


def test_curve_limit_is_odd(runner, tmp_path):
    out = tmp_path / "curve0.csv"
    assert _run(runner, ["curve", "--delta", "0", "--samples", "41", "--out", str(out)]).exit_code == 0
    _, rows = _csv(out)
    samples = rows[:-1]
    for left, right in zip(samples, reversed(samples)):
        assert float(left["b"]) == pytest.approx(-float(right["b"]), abs=1e-12)
        assert float(left["r"]) == pytest.approx(-float(right["r"]), abs=1e-12)
    assert float(rows[-1]["r"]) == pytest.approx(1.0, abs=1e-12)


def test_output_is_byte_identical_across_runs(runner, tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (first, second):
        args = ["simulate", "--method", "nesterov", "--L", "50", "--dim", "4", "--steps", "50", "--out", str(out)]
        assert _run(runner, args).exit_code == 0
    assert first.read_bytes() == second.read_bytes()


def test_simulate_nesterov_is_monotone(runner, tmp_path):
    out = tmp_path / "sim.csv"
    args = ["simulate", "--method", "nesterov", "--m", "1", "--L", "100", "--steps", "500", "--out", str(out)]
    assert _run(runner, args).exit_code == 0
    comment, rows = _csv(out)
    assert "seed=42" in comment
    summary = rows[-1]
    assert summary["k"] == "summary"
    assert float(summary["max_violation"]) <= 1e-10
    data = rows[:-1]
    assert len(data) == 501
    assert all(float(row["f_gap"]) <= float(row["bound"]) * (1.0 + 1e-9) for row in data)


def test_simulate_heavy_ball_has_no_certificate(runner, tmp_path):
    out = tmp_path / "hb.csv"
    args = ["simulate", "--method", "heavyball", "--L", "100", "--steps", "20", "--out", str(out)]
    assert _run(runner, args).exit_code == 0
    _, rows = _csv(out)
    assert list(rows[0].keys()) == ["k", "f_gap"]
    assert len(rows) == 21


def test_simulate_conservative_ode(runner, tmp_path):
    out = tmp_path / "ode.csv"
    args = [
        "simulate", "--method", "ode", "--b-bar", "0", "--L", "10", "--dim", "3",
        "--t-end", "10", "--every", "100", "--out", str(out),
    ]
    assert _run(runner, args).exit_code == 0
    comment, rows = _csv(out)
    assert "every=100" in comment
    energy = [float(row["V"]) for row in rows[:-1]]
    assert max(energy) - min(energy) <= 1e-8 * energy[0]
    assert rows[-1]["t"] == "summary"


def test_simulate_rejects_appendix_for_discrete(runner):
    result = _run(runner, ["simulate", "--method", "gd", "--appendix"])
    assert result.exit_code == 2


def test_table_rows(runner, tmp_path):
    out = tmp_path / "table.csv"
    assert _run(runner, ["table", "--kappas", "10,1e6", "--out", str(out)]).exit_code == 0
    _, rows = _csv(out)
    assert [float(row["kappa"]) for row in rows] == [10.0, 1e6]
    assert float(rows[0]["r_bar_minus_1"]) == pytest.approx(8.6e-2, abs=6e-4)
    assert float(rows[1]["s_bar"]) == pytest.approx(5.0e-3, abs=6e-5)
    assert all(row["error"] == "" for row in rows)


def test_table_reports_row_errors(runner, tmp_path):
    out = tmp_path / "table.csv"
    assert _run(runner, ["table", "--kappas", "1.000000001,10", "--out", str(out)]).exit_code == 0
    _, rows = _csv(out)
    assert rows[0]["error"] == "CONTINUATION_STALL"
    assert rows[0]["r_bar"] == ""
    assert rows[1]["error"] == ""


def test_certify_ode(runner, tmp_path):
    out = tmp_path / "ode.json"
    assert _run(runner, ["certify-ode", "--m", "4", "--b-bar", "2", "--out", str(out)]).exit_code == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["lam"] == pytest.approx(2.0, abs=1e-12)
    assert payload["valid"] is True


def test_limit_summary(runner, tmp_path):
    out = tmp_path / "limit.csv"
    assert _run(runner, ["limit", "--b-bar", "2", "--out", str(out)]).exit_code == 0
    _, rows = _csv(out)
    assert rows[-1]["h"] == "summary"
    assert 1.8 <= float(rows[-1]["slope"]) <= 2.2
    assert float(rows[-2]["r_error"]) == pytest.approx(0.0244, abs=2e-4)


def test_hb_scan_round_trip(runner, tmp_path):
    out = tmp_path / "scan.json"
    args = ["hb-scan", "--kappa", "1e4", "--samples", "20000", "--out", str(out)]
    assert _run(runner, args).exit_code == 0
    report = read_json(ScanReport, out.read_text(encoding="utf-8"))
    assert report.feasible is False
    assert report.seed == 42
    assert report.contradiction > 0.0


def test_seed_from_environment(runner, tmp_path):
    out = tmp_path / "scan.json"
    args = ["hb-scan", "--kappa", "1e3", "--samples", "100", "--out", str(out)]
    assert _run(runner, args, env={"LYAPCERT_SEED": "7"}).exit_code == 0
    assert read_json(ScanReport, out.read_text(encoding="utf-8")).seed == 7


def test_malformed_seed_is_a_config_error(runner):
    result = _run(runner, ["certify", "--m", "1", "--L", "100", "--optimal"], env={"LYAPCERT_SEED": "abc"})
    assert result.exit_code == 2
    assert "CONFIG_INVALID" in result.output

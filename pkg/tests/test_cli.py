import csv
import io
import json
import subprocess
import sys

import pytest

from qvacuum import __version__, cli
from qvacuum.errors import ConvergenceError
from qvacuum.registry import preset


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_delta_pi_sweep_starts_at_zero(capsys):
    code, out, _ = run(["sweep", "--preset", "sm_fermions", "--from", "1e-3", "--to", "1e3", "--points", "5", "--include-zero"], capsys)
    assert code == 0
    rows = table(out)
    assert len(rows) == 6
    assert float(rows[0]["q_gev"]) == 0.0
    assert float(rows[0]["re_delta_pi"]) == 0.0
    assert float(rows[0]["eps0_ratio"]) == 1.0


def test_alpha_eff_sweep_increasing(capsys):
    code, out, _ = run(["sweep", "--quantity", "alpha_eff", "--preset", "sm_paper", "--from", "1e-3", "--to", "1e6", "--points", "30"], capsys)
    assert code == 0
    ratios = [float(r["re_alpha_eff_ratio"]) for r in table(out)]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))


def test_metadata_lines(capsys):
    _, out, _ = run(["sweep", "--preset", "sm_paper", "--from", "1", "--to", "10", "--points", "2"], capsys)
    lines = out.splitlines()
    assert lines[0] == f"# qvacuum {__version__}"
    assert lines[1] == "# command: qvacuum sweep --preset sm_paper --from 1 --to 10 --points 2"
    assert lines[2] == f"# registry: preset:sm_paper sha256={preset('sm_paper').digest()}"
    assert lines[3].startswith("q_gev,")


def test_full_precision_fields(capsys):
    _, out, _ = run(["sweep", "--preset", "electron", "--from", "0.1", "--to", "1", "--points", "3"], capsys)
    for row in table(out):
        value = float(row["re_delta_pi"])
        assert format(value, ".17g") == row["re_delta_pi"]


def test_asymptotic_mode_and_timelike(capsys):
    code, out, _ = run(["sweep", "--preset", "electron", "--mode", "asymptotic", "--from", "1", "--to", "10", "--points", "2"], capsys)
    assert code == 0
    assert all(float(r["im_delta_pi"]) == 0.0 for r in table(out))
    code, out, _ = run(["sweep", "--preset", "electron", "--regime", "timelike", "--from", "1", "--to", "10", "--points", "2"], capsys)
    assert code == 0
    assert all(float(r["im_delta_pi"]) < 0.0 for r in table(out))


def test_phi_r_sweep(capsys):
    code, out, _ = run(["sweep", "--quantity", "phi_r", "--from", "0.01", "--to", "1", "--points", "3", "--mode", "linearized"], capsys)
    assert code == 0
    rows = table(out)
    assert [r["method"] for r in rows] == ["numeric_linearized"] * 3
    assert all(float(r["correction"]) > 0 for r in rows)


@pytest.mark.parametrize("mode, method", [("small-r", "asymptotic_small_r"), ("large-r", "asymptotic_large_r")])
def test_potential_asymptotic_modes(capsys, mode, method):
    code, out, _ = run(["potential", "--from", "0.01", "--to", "1", "--points", "2", "--mode", mode], capsys)
    assert code == 0
    assert {r["method"] for r in table(out)} == {method}


def test_pole_sentinel(capsys, monkeypatch):
    calls = iter([0.2 + 0j, 1.0 + 0j, 0.4 + 0j])
    monkeypatch.setattr(cli, "delta_pi_exact", lambda *a, **k: (next(calls), 0.0))
    code, out, _ = run(["sweep", "--quantity", "alpha_eff", "--from", "1", "--to", "100", "--points", "3"], capsys)
    assert code == 0
    rows = table(out)
    assert rows[1]["eps0_ratio"] == "POLE"
    assert rows[1]["re_alpha_eff_ratio"] == "POLE"
    assert rows[2]["eps0_ratio"] != "POLE"


def test_numerical_failure_exit_3(capsys, monkeypatch):
    def fail(*a, **k):
        raise ConvergenceError("no luck", 1e-3)

    monkeypatch.setattr(cli, "delta_pi_exact", fail)
    code, _, err = run(["sweep", "--from", "1", "--to", "100", "--points", "3"], capsys)
    assert code == 3
    assert "Q = 1 GeV" in err


def test_potential_truncation_exit_3(capsys, monkeypatch):
    from qvacuum.coulomb import PotentialSample, Method

    monkeypatch.setattr(cli, "phi_r", lambda *a, **k: PotentialSample(1.0, 1.0, 0.1, Method.NUMERIC_FULL, 1.0, 2000, False))
    code, _, err = run(["potential", "--from", "0.5", "--to", "1", "--points", "2"], capsys)
    assert code == 3
    assert "r/lambda_C = 0.5" in err


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["sweep", "--from", "0", "--to", "1", "--points", "3"], "positive"),
        (["sweep", "--from", "10", "--to", "1", "--points", "3"], "smaller"),
        (["sweep", "--from", "1", "--to", "10", "--points", "1"], "at least 2"),
        (["sweep", "--from", "1", "--to", "10"], "required"),
        (["sweep", "--mode", "full", "--from", "1", "--to", "10", "--points", "2"], "--mode"),
        (["sweep", "--mode", "asymptotic", "--include-zero", "--from", "1", "--to", "10", "--points", "2"], "include-zero"),
        (["sweep", "--preset", "sm_paper", "--registry", "x.json", "--from", "1", "--to", "10", "--points", "2"], "either"),
        (["wave-check", "--k", "0,0,1e7", "--E", "1,0,1"], "transverse"),
        (["wave-check", "--k", "0,0,1e7", "--E", "1,zero,0"], "--E"),
        (["wave-check", "--k", "0,1e7", "--E", "1,0,0"], "three"),
    ],
)
def test_validation_exit_2(capsys, argv, fragment):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert fragment in err


def test_invalid_registry_names_field(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"species": [{"name": "muon", "charge_over_e": -1, "mass_gev": -0.1, "multiplicity": 1}]}))
    code, _, err = run(["registry", "dump", "--registry", str(path)], capsys)
    assert code == 2
    assert "muon" in err and "mass_gev" in err


def test_argparse_usage_error_is_2():
    with pytest.raises(SystemExit) as info:
        cli.main(["sweep", "--quantity", "nonsense"])
    assert info.value.code == 2


def test_landau_report(capsys):
    code, out, _ = run(["landau", "--preset", "sm_paper"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert 1e29 <= doc["lambda_l_gev"] <= 1e31
    assert doc["closure"] == pytest.approx(1.0, abs=1e-9)
    assert doc["f_factor"] == pytest.approx(1.2117, abs=1e-4)


def test_wave_check_pass(capsys):
    code, out, _ = run(["wave-check", "--k", "1e6,2e6,0", "--E", "0,0,1+2j"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["status"] == "PASS"
    assert doc["residual_ampere"] <= 1e-12 and doc["residual_gauss"] <= 1e-12


def test_wave_check_detuned_fails(capsys):
    code, out, _ = run(["wave-check", "--k", "0,0,1e7", "--E", "1,0,0", "--omega", "1.49896229e15"], capsys)
    doc = json.loads(out)
    assert doc["status"] == "FAIL"
    assert doc["residual_ampere"] > 1e-3


def test_registry_dump_summary(capsys):
    code, out, _ = run(["registry", "dump", "--preset", "sm_fermions"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["summary"]["effective_charge_sum"] == pytest.approx(8.0, rel=1e-15)
    assert doc["summary"]["species_count"] == 9


def test_registry_dump_echoes_file_exactly(capsys, tmp_path):
    original = {
        "species": [
            {"name": "electron", "charge_over_e": -1, "mass_gev": 0.00051099895000000001, "multiplicity": 1},
            {"name": "W+", "charge_over_e": 1, "mass_gev": 80.377, "multiplicity": 1, "kind": "boson"},
        ],
        "charge_sum_override": 9.000000000000002,
        "mean_log_mass_gev": 0.25,
    }
    path = tmp_path / "reg.json"
    path.write_text(json.dumps(original))
    _, out, _ = run(["registry", "dump", "--registry", str(path)], capsys)
    doc = json.loads(out)
    assert doc["registry"] == original
    assert doc["warnings"]


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"preset": "electron", "from": 1.0, "to": 10.0, "points": 4}))
    _, out, _ = run(["sweep", "--config", str(cfg)], capsys)
    assert len(table(out)) == 4
    _, out, _ = run(["sweep", "--config", str(cfg), "--points", "2"], capsys)
    assert len(table(out)) == 2
    assert "preset:electron" in out


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"colour": "blue"}))
    code, _, err = run(["sweep", "--config", str(cfg)], capsys)
    assert code == 2
    assert "colour" in err


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.csv"
    code, out, _ = run(["sweep", "--from", "1", "--to", "2", "--points", "2", "--output", str(target)], capsys)
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("# qvacuum")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qvacuum", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert __version__ in proc.stdout

import csv
import io
import json
import subprocess
import sys

import pytest

from nsdispersion.cli import EXIT_IO, EXIT_OK, EXIT_VALIDATION, main, parse_state

WATER_STATE = "rho=997,T=298,mu=8.9e-4,lambda=0.6,Cv=4138.6138613861385,gamma=1.01,c=1480"
HEADER = "k,branch,omega_re,omega_im,phase_speed,attenuation_rate,Kn,Kn_th,continuum_ok,overdamped"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fluids_list(capsys):
    code, out, _ = run(capsys, "fluids", "list")
    assert code == EXIT_OK
    assert out.split() == ["air", "freon", "water", "honey", "mercury"]


def test_fluids_show(capsys):
    code, out, _ = run(capsys, "fluids", "show", "water")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["lambda"] == 0.6 and doc["derived"]["Pr"] > 1


def test_roots_text(capsys):
    code, out, _ = run(capsys, "roots", "--fluid", "water", "--k", "1e4")
    assert code == EXIT_OK
    assert "plus" in out and "vieta" in out


def test_roots_csv_and_state_agree(capsys):
    _, by_name, _ = run(capsys, "roots", "--fluid", "water", "--k", "1e4", "--format", "csv")
    _, by_state, _ = run(capsys, "roots", "--state", WATER_STATE, "--k", "1e4", "--format", "csv")
    assert by_name == by_state
    assert by_name.splitlines()[0] == HEADER


def test_freq_note(capsys):
    code, out, err = run(capsys, "roots", "--fluid", "air", "--freq", "1000", "--format", "json")
    assert code == EXIT_OK
    assert "2 pi f / c" in err
    assert json.loads(out)["k"] == pytest.approx(2 * 3.141592653589793 * 1000 / 340.0)


def test_u0_changes_phase_speed_only(capsys):
    _, a, _ = run(capsys, "roots", "--fluid", "water", "--k", "100", "--format", "json")
    _, b, _ = run(capsys, "roots", "--fluid", "water", "--k", "100", "--format", "json", "--u0", "5")
    for ra, rb in zip(json.loads(a)["roots"], json.loads(b)["roots"]):
        assert rb["phase_speed"] == pytest.approx(ra["phase_speed"] + 5)
        assert rb["attenuation_rate"] == ra["attenuation_rate"]


def test_sweep_csv(capsys, tmp_path):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", "--fluid", "air", "--k-min", "1", "--k-max", "1e4", "--points", "5", "--log", "--out", str(out))
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 15
    assert float(rows[0]["k"]) == 1.0 and float(rows[-1]["k"]) == 1e4
    assert {r["continuum_ok"] for r in rows} <= {"true", "false"}
    assert float(rows[2]["phase_speed"]) > 0


def test_sweep_json_with_asym(capsys):
    code, out, _ = run(
        capsys, "sweep", "--fluid", "water", "--k-min", "10", "--k-max", "20", "--points", "2",
        "--format", "json", "--quantities", "omega,asym",
    )
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["columns"] == ["k", "branch", "omega_re", "omega_im", "large_pr_error", "small_pr_error"]
    assert all(row["large_pr_error"] is not None and row["small_pr_error"] is not None for row in doc["rows"])


def test_sweep_asym_not_applicable_is_empty(capsys):
    state = WATER_STATE.replace("lambda=0.6", "lambda=0")
    _, out, _ = run(capsys, "sweep", "--state", state, "--k-min", "10", "--k-max", "20", "--points", "2", "--quantities", "asym")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["small_pr_error"] == ""
    assert rows[0]["large_pr_error"] != ""


def test_asym(capsys):
    code, out, _ = run(capsys, "asym", "--fluid", "water", "--k", "1e3", "--regime", "large-pr", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["regime"] == "large_pr"
    assert max(b["rel_error"] for b in doc["branches"] if b["rel_error"] is not None) < 1e-3


@pytest.mark.parametrize(
    "argv",
    [
        ["roots", "--fluid", "nitrogen", "--k", "1"],
        ["roots", "--fluid", "water", "--k", "-1"],
        ["roots", "--state", "rho=1,T=1", "--k", "1"],
        ["asym", "--state", WATER_STATE.replace("mu=8.9e-4", "mu=0"), "--k", "1", "--regime", "small-pr"],
        ["sweep", "--fluid", "air", "--k-min", "5", "--k-max", "1", "--points", "3"],
        ["sweep", "--fluid", "air", "--k-min", "1", "--k-max", "5", "--points", "3", "--quantities", "bogus"],
    ],
)
def test_validation_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_VALIDATION
    assert err.startswith("error:")


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["roots", "--fluid", "water"])
    assert info.value.code == EXIT_VALIDATION


def test_io_exit_code(capsys, tmp_path):
    assert main(["fluids", "list", "--db", str(tmp_path / "missing.json")]) == EXIT_IO


def test_verify_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--seed", "42")
    code2, out2, _ = run(capsys, "verify", "--seed", "42")
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert "FAIL" not in out1


def test_verify_bad_database(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 1, "fluids": [{"name": "x"}]}')
    code, out, _ = run(capsys, "verify", "--db", str(bad))
    assert code == EXIT_VALIDATION
    assert "FAIL database: fluids[0] (x).rho" in out


def test_parse_state_keys():
    fluid = parse_state(WATER_STATE)
    assert fluid.lam == 0.6 and fluid.c == 1480.0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nsdispersion", "fluids", "list"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "mercury" in proc.stdout

import csv
import io
import json
import subprocess
import sys

import pytest

from hardysharp.cli import SWEEP_COLUMNS, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_constant_table(capsys):
    code, out, _ = run(["constant", "--n", "2", "--p", "1", "--beta", "1", "--alpha", "0",
                        "--gamma", "0"], capsys)
    assert code == 0
    assert "forward" in out and "adjoint" in out


def test_constant_json(capsys):
    code, out, _ = run(["constant", "--n", "2", "--p", "2", "--q", "2", "--beta", "0.5",
                        "--alpha", "0", "--format", "json"], capsys)
    d = json.loads(out)
    assert code == 0
    assert d["adjoint"]["constant"] == pytest.approx(2 * 3.141592653589793 ** 0.25)
    assert d["forward"]["params"]["gamma"] == pytest.approx(-1.0)


def test_constant_invalid_exits_2(capsys):
    code, out, _ = run(["constant", "--n", "2", "--p", "2", "--q", "3", "--beta", "0.5",
                        "--alpha", "0", "--gamma", "0"], capsys)
    assert code == 2 and "ScalingError" in out


def test_usage_error(capsys):
    code, _, _ = run(["constant", "--p", "2"], capsys)
    assert code == 2


def test_verify_pass(capsys):
    code, out, _ = run(["verify", "--n", "2", "--p", "2", "--beta", "0.5", "--alpha", "0",
                        "--gamma", "0", "--random", "5", "--format", "json"], capsys)
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["random_profiles"] == 5


def test_verify_fails_on_short_schedule(capsys):
    # a single coarse delta leaves the gap far above 1%
    code, _, _ = run(["verify", "--n", "2", "--p", "2", "--beta", "0.5", "--alpha", "0",
                      "--gamma", "0", "--random", "0", "--schedule", "0.3"], capsys)
    assert code == 1


def test_limit_step(capsys):
    code, out, _ = run(["limit", "--n", "1", "--p", "1", "--beta", "0.5", "--profile", "step",
                        "--format", "json"], capsys)
    d = json.loads(out)
    assert code == 0 and d["target"] == pytest.approx(2.0) and len(d["trace"]) == 9


def test_limit_custom_profile(capsys):
    prof = '[{"c": 1.0, "a": 0.0, "k": 0, "lo": 0.0, "hi": 2.0}]'
    code, out, _ = run(["limit", "--n", "1", "--p", "1", "--beta", "0.5", "--profile", prof],
                       capsys)
    assert code == 0


def test_limit_malformed_profile(capsys):
    code, _, err = run(["limit", "--n", "1", "--p", "1", "--beta", "0.5", "--profile", "[{"],
                       capsys)
    assert code == 2 and "malformed" in err


def test_oracle_low_samples(capsys):
    code, _, _ = run(["oracle", "--n", "2", "--p", "2", "--beta", "0.5", "--samples", "999"],
                     capsys)
    assert code == 2


def test_oracle_runs(capsys):
    code, out, _ = run(["oracle", "--n", "2", "--p", "2", "--beta", "0.5", "--samples", "20000",
                        "--field", "radial-step", "--radii", "0.5,2", "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0][0] == "radius" and len(rows) == 3


def test_sweep_rejects_points(capsys):
    code, out, _ = run(["sweep", "--n", "2", "--p", "1,2", "--beta", "0,0.5", "--format", "csv",
                        "--schedule", "0.01"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == list(SWEEP_COLUMNS)
    assert len(rows) == 4
    bad = [r for r in rows if r["status"] != "ok"]
    assert len(bad) == 1 and bad[0]["status"].startswith("RangeError")


def test_sweep_empty_grid(capsys):
    code, _, _ = run(["sweep", "--n", ""], capsys)
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["oracle", "--n", "2", "--p", "2", "--beta", "0.5", "--samples", "20000", "--seed", "7",
     "--radii", "0.5,1", "--format", "json"],
    ["verify", "--n", "2", "--p", "2", "--beta", "0.5", "--alpha", "-0.5", "--random", "4",
     "--seed", "3", "--format", "csv"],
])
def test_byte_deterministic(argv, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}"
        subprocess.run([sys.executable, "-m", "hardysharp", *argv, "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and len(outs[0]) > 0

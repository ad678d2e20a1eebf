import csv
import io
import json
import subprocess
import sys

import pytest

from remotestate.cli import b_grid, main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_profile_rerun_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["profile", "--n-min", "2", "--n-max", "12", "--out", str(a)]) == 0
    assert main(["profile", "--n-min", "2", "--n-max", "12", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = a.read_bytes()
    assert b"\r" not in data
    assert data.splitlines()[0] == b"n,tau_max,r"
    assert len(data.splitlines()) == 12


def test_json_rerun_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["boundary", "--n", "6", "--samples", "16", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_profile_values(capsys):
    code, out, _ = run(["profile", "--n-min", "34", "--n-max", "35"], capsys)
    assert code == 0
    r = rows(out)
    assert abs(float(r[0]["tau_max"]) - 37.279) < 0.01
    assert abs(float(r[0]["r"]) - 0.709) < 0.001
    assert abs(float(r[1]["r"]) - 0.704) < 0.001


def test_region_grid_and_invariants(capsys):
    code, out, _ = run(["region", "--n", "6"], capsys)
    assert code == 0
    r = rows(out)
    bs = b_grid()
    two = rows(run(["region", "--n", "2"], capsys)[1])
    best = max(two, key=lambda x: float(x["j_coh"]))
    assert float(best["j_coh"]) == pytest.approx(0.25) and best["alpha"] == "0.5"
    assert best["t"] == "1"
    assert len(r) == 11 * len(bs)
    assert bs[0] == 0.0 and bs[1] == 0.1 and bs[-1] == float("inf")
    # b-major ordering
    order = [(bs.index(float(x["b"])), round(float(x["alpha"]) * 10)) for x in r]
    assert order == sorted(order)
    for x in r:
        i, j = float(x["i_pol"]), float(x["j_coh"])
        assert i * i + j <= 0.25
    # tail: small alpha at low temperature has almost no coherence
    tail = [x for x in r if x["alpha"] == "0.1" and float(x["j_coh"]) < 1e-6]
    assert len(tail) >= 2
    assert all(float(x["i_pol"]) < 0.0 for x in tail)


def test_region_spectral_coords(capsys):
    code, out, _ = run(["region", "--n", "6", "--coords", "eig", "--b-max", "1"], capsys)
    assert code == 0
    for x in rows(out):
        assert 0.5 <= float(x["lambda"]) <= 1.0
        assert 0.0 <= float(x["beta1"]) <= 1.0


def test_boundary_landmarks(capsys):
    code, out, _ = run(["boundary", "--n", "6", "--samples", "32"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["schema_version"] == 1
    assert abs(d["i_c"] + 0.412) < 0.001
    assert abs(d["tail_end"] + 0.456) < 0.001
    bp = d["two_fold"]["branch_point"]
    assert abs(bp["i_pol"] + 0.407) < 0.001 and abs(bp["j_coh"] - 0.004) < 0.001
    assert len(d["two_fold"]["upper_boundary"]["rows"]) == 32


def test_boundary_short_chain_empty(capsys):
    code, out, _ = run(["boundary", "--n", "2"], capsys)
    assert code == 0
    assert json.loads(out)["two_fold"]["empty"] is True


def test_boundary_branch_sign_at_34(capsys):
    code, out, _ = run(["boundary", "--n", "34", "--samples", "8"], capsys)
    assert code == 0
    assert json.loads(out)["two_fold"]["branch_point"]["i_pol"] >= 0.0


def test_zero_polarization_row(capsys):
    code, out, _ = run(["zero-polarization", "--n-min", "34", "--n-max", "34"], capsys)
    assert code == 0
    (row,) = rows(out)
    assert abs(float(row["j0_max"]) / 2.367e-3 - 1) < 0.01


def test_coherence_threshold(capsys, tmp_path):
    bands = tmp_path / "bands.csv"
    code, out, _ = run(["coherence-threshold", "--n-min", "10", "--n-max", "10",
                        "--j-min", "0.01", "--bands", str(bands)], capsys)
    assert code == 0
    (row,) = rows(out)
    assert abs(float(row["b1"]) - 2.487) < 0.005
    assert bands.exists() and len(bands.read_text().splitlines()) > 1


def test_fidelity_table(capsys):
    code, out, _ = run(["fidelity", "--n-min", "2", "--n-max", "6"], capsys)
    assert code == 0
    r = rows(out)
    assert float(r[0]["f_one_to_one"]) == 1.0
    assert float(r[0]["f_two_fold"]) == 0.0 and float(r[1]["f_two_fold"]) == 0.0
    assert float(r[4]["f_two_fold"]) > 0.0


def test_average_table(capsys):
    code, out, _ = run(["average", "--n", "2,6", "--b-max", "1", "--b-step", "0.5"], capsys)
    assert code == 0
    r = rows(out)
    assert [x["n"] for x in r] == ["2"] * 4 + ["6"] * 4
    assert r[3]["b"] == "inf" and float(r[3]["j_bar"]) == 0.125


def test_bessel_table(capsys):
    code, out, _ = run(["bessel", "--n-max", "6"], capsys)
    assert code == 0
    r = rows(out)
    assert 5e-4 <= float(r[1]["abs_diff"]) <= 2e-3
    gaps = [float(x["sup_gap"]) for x in r[1:]]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_oracle_command(capsys):
    code, out, _ = run(["oracle", "--alpha", "0.3", "--b", "1", "--n", "4", "--tau", "2"], capsys)
    assert code == 0
    assert json.loads(out)["max_abs_diff"] <= 1e-10


def test_oracle_csv_and_infinite_b(capsys):
    code, out, _ = run(["oracle", "--alpha", "0.5", "--b", "inf", "--n", "2",
                        "--tau", "3.141592653589793", "--format", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "source,rho11,r12,phase"
    assert float(lines[-1].split(",")[1]) <= 1e-10


@pytest.mark.parametrize("argv,code", [
    (["profile", "--n-min", "1"], 2),
    (["profile", "--n-min", "5", "--n-max", "4"], 2),
    (["profile", "--scan-step", "-1"], 2),
    (["oracle", "--alpha", "2", "--b", "1", "--n", "4", "--tau", "2"], 3),
    (["oracle", "--alpha", "0.5", "--b", "1", "--n", "12", "--tau", "2"], 2),
    (["oracle", "--alpha", "0.5", "--b", "-1", "--n", "4", "--tau", "2"], 3),
    (["coherence-threshold", "--n-min", "10", "--n-max", "10", "--j-min", "-1"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["profile", "--format", "xml"])
    assert exc.value.code == 2


def test_unwritable_output(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    assert run(["profile", "--n-min", "2", "--n-max", "3", "--out", str(target)], capsys)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "remotestate", "profile", "--n-min", "2",
                           "--n-max", "3"], capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("n,tau_max,r\n2,")

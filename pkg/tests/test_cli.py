import argparse
import json
import math

import numpy as np
import pytest

from normalens import io
from normalens.cli import main, parse_complex
from normalens.kernel_exact import ginibre_closed_form


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), (json.loads(err) if err.strip() else None)


@pytest.mark.parametrize("text,value", [
    ("0.3+0.4i", 0.3 + 0.4j),
    ("-0.5-1e-3i", -0.5 - 0.001j),
    ("2", 2),
    ("-3.5i", -3.5j),
    ("i", 1j),
    ("1-i", 1 - 1j),
    (".5+.25i", 0.5 + 0.25j),
    ("1E+2-2e-1i", 100 - 0.2j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "0.3 + 0.4i", "0.3+0.4j", "abc", "1+2", "0.3i0.4", "1++2i"])
def test_parse_complex_rejects(text):
    with pytest.raises(argparse.ArgumentTypeError):
        parse_complex(text)


def test_kernel_grid_small_matches_closed_form(tmp_path, capsys):
    out = tmp_path / "g.csv"
    code, payload, _ = run(capsys, "kernel-grid", "--alpha", "2", "--n", "10", "--steps", "2", "--out", str(out))
    assert code == 0
    rows = io.read_csv(out)
    assert len(rows) == 4
    assert list(rows[0]) == ["re_w", "im_w", "re_k", "im_k", "abs_k"]
    for row in rows:
        w = complex(float(row["re_w"]), float(row["im_w"]))
        ref = ginibre_closed_form(10, 0.3 + 0.4j, w)
        assert complex(float(row["re_k"]), float(row["im_k"])) == pytest.approx(ref, rel=1e-12, abs=1e-16)
    assert payload["schema_version"] == 1
    assert payload["rows"] == 4


def test_kernel_grid_row_major_order(tmp_path, capsys):
    out = tmp_path / "g.csv"
    run(capsys, "kernel-grid", "--alpha", "4", "--n", "5", "--steps", "3", "--bounds", "-0.5:0.5", "--out", str(out))
    rows = io.read_csv(out)
    coords = [(float(r["re_w"]), float(r["im_w"])) for r in rows]
    assert coords[:3] == [(-0.5, -0.5), (-0.5, 0.0), (-0.5, 0.5)]
    assert coords[3] == (0.0, -0.5)


def test_kernel_grid_width_shrinks(tmp_path, capsys):
    widths = []
    for n in ("50", "200"):
        _, payload, _ = run(capsys, "kernel-grid", "--alpha", "8", "--n", n, "--z", "0.3+0.4i",
                            "--bounds", "-0.9:0.9", "--steps", "91", "--out", str(tmp_path / f"g{n}.csv"))
        widths.append(payload["half_max_width"])
    assert widths[1] < widths[0]


def test_kernel_grid_output_is_byte_identical(tmp_path, capsys):
    argv = ["kernel-grid", "--alpha", "6.5", "--n", "40", "--steps", "21"]
    run(capsys, *argv, "--out", str(tmp_path / "a.csv"))
    run(capsys, *argv, "--out", str(tmp_path / "b.csv"))
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_csv_numbers_round_trip(tmp_path, capsys):
    out = tmp_path / "g.csv"
    run(capsys, "kernel-grid", "--alpha", "4", "--n", "30", "--steps", "4", "--out", str(out))
    from normalens.ensemble import EnsembleParams
    from normalens.kernel_exact import kernel_exact
    for row in io.read_csv(out):
        w = complex(float(row["re_w"]), float(row["im_w"]))
        assert float(row["re_k"]) == kernel_exact(EnsembleParams(4, 30), 0.3 + 0.4j, w).real


@pytest.mark.parametrize("argv", [
    ["kernel-grid", "--alpha", "1.5", "--n", "10"],
    ["kernel-grid", "--alpha", "4", "--n", "10", "--steps", "1"],
    ["kernel-grid", "--alpha", "4", "--n", "10", "--z", "0.3 +0.4i"],
    ["kernel-grid", "--alpha", "4", "--n", "10", "--bounds", "1:0"],
    ["kernel-grid", "--alpha", "4"],
    ["nonsense"],
    [],
])
def test_invalid_input_exit_2(capsys, argv, tmp_path):
    code, _, err = run(capsys, *argv, *(["--out", str(tmp_path / "x.csv")] if argv[:1] == ["kernel-grid"] else []))
    assert code == 2
    assert err["schema_version"] == 1 and "error" in err


def test_error_table(tmp_path, capsys):
    out = tmp_path / "err.csv"
    code, payload, _ = run(capsys, "error-table", "--alphas", "2", "--ns", "50", "--out", str(out))
    assert code == 0
    rows = io.read_csv(out)
    assert list(rows[0]) == ["alpha", "n", "r_sup"]
    assert len(rows) == 1 and math.isfinite(float(rows[0]["r_sup"]))
    sidecar = json.loads((tmp_path / "err.json").read_text())
    assert sidecar["sample"]["n_radii"] == 24 and sidecar["schema_version"] == 1
    assert payload["rows"][0]["n"] == 50


def test_error_table_multiple_rows(tmp_path, capsys):
    out = tmp_path / "err.csv"
    code, payload, _ = run(capsys, "error-table", "--alphas", "8,11", "--ns", "25,50",
                           "--radii", "8", "--angles", "16", "--out", str(out))
    assert code == 0
    assert len(io.read_csv(out)) == 4
    assert payload["strictly_decreasing_in_n"] == {"8.0": True, "11.0": True}


@pytest.mark.parametrize("ns", ["", ",", "a,b"])
def test_error_table_bad_ns(tmp_path, capsys, ns):
    code, _, err = run(capsys, "error-table", "--alphas", "6", "--ns", ns, "--out", str(tmp_path / "e.csv"))
    assert code == 2 and err["error"] == "invalid_arguments"


def test_verify_all(capsys):
    code, payload, _ = run(capsys, "verify", "--identity", "all", "--alpha", "4", "--n", "50")
    assert code == 0
    assert [r["identity"] for r in payload["results"]] == ["phi_identity", "u_identity", "g_composition"]
    assert all(r["max_rel_residual"] <= 1e-10 for r in payload["results"])


def test_verify_u(capsys):
    code, payload, _ = run(capsys, "verify", "--identity", "u", "--alpha", "8")
    assert code == 0
    assert payload["results"][0]["max_abs_residual"] < 1e-13


def test_verify_bogus(capsys):
    code, _, err = run(capsys, "verify", "--identity", "bogus", "--alpha", "4")
    assert code == 2


def test_verify_failure_exit_1(capsys, monkeypatch):
    from normalens import cli, conformal
    monkeypatch.setitem(cli.VERIFIERS, "u", lambda p: conformal.verify_u_identity(p, forward_u=True))
    code, payload, _ = run(capsys, "verify", "--identity", "u", "--alpha", "4")
    assert code == 1 and payload["passed"] is False


def test_spacing_check_alpha2(capsys, tmp_path):
    out = tmp_path / "sp.json"
    code, payload, _ = run(capsys, "spacing-check", "--alpha", "2", "--n", "500", "--s", "1",
                           "--trials", "200", "--seed", "7", "--out", str(out))
    assert code == 0
    assert payload["mean_count"] == pytest.approx(math.pi, abs=3 * payload["std_error"])
    saved = json.loads(out.read_text())
    assert {"s", "mean_count", "std_error", "trials", "target"} <= set(saved)


def test_spacing_check_alpha4_passes_via_oracle(capsys):
    code, payload, _ = run(capsys, "spacing-check", "--alpha", "4", "--n", "500", "--s", "2", "--trials", "200")
    assert code == 0
    assert payload["within_analytic"]
    assert payload["target"] == pytest.approx(4 * math.pi)


def test_spacing_check_bulk_exit(capsys):
    code, _, err = run(capsys, "spacing-check", "--alpha", "2", "--n", "500", "--s", "1e9", "--trials", "30")
    assert code == 2 and err["error"] == "bulk_exit"


def test_spacing_check_too_few_trials(capsys):
    code, _, err = run(capsys, "spacing-check", "--alpha", "2", "--n", "500", "--s", "1", "--trials", "5")
    assert code == 2


def test_sample_command(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, payload, _ = run(capsys, "sample", "--alpha", "4", "--n", "50", "--seed", "3", "--angles", "--out", str(out))
    assert code == 0
    rows = io.read_csv(out)
    assert list(rows[0]) == ["index", "modulus", "angle"] and len(rows) == 50
    first = out.read_bytes()
    run(capsys, "sample", "--alpha", "4", "--n", "50", "--seed", "3", "--angles", "--out", str(out))
    assert out.read_bytes() == first
    run(capsys, "sample", "--alpha", "4", "--n", "50", "--seed", "3", "--out", str(out))
    assert list(io.read_csv(out)[0]) == ["index", "modulus"]


def test_density_command(tmp_path, capsys):
    code, payload, _ = run(capsys, "density", "--alpha", "4", "--points", "5")
    assert code == 0
    assert payload["support_radius"] == pytest.approx(0.8408964152537145)
    assert payload["table"][0]["density"] == 0
    out = tmp_path / "d.csv"
    code, payload, _ = run(capsys, "density", "--alpha", "2", "--out", str(out))
    rows = io.read_csv(out)
    assert len(rows) == 11 and float(rows[3]["density"]) == pytest.approx(1 / math.pi)


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "normalens", "density", "--alpha", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["support_radius"] == 1.0

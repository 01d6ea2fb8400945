import csv
import io
import json
import subprocess
import sys

import pytest

from projorb import cli, holonomy
from projorb.holonomy import Representation


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def checks_of(text):
    return {c["name"]: c for c in json.loads(text)["checks"]}


def test_verify_hyperbolic_point(capsys):
    code, out, _ = run(capsys, "--json", "verify", "--wxyz", "3,3,3,3")
    assert code == 0
    checks = checks_of(out)
    assert list(checks) == ["on_variety", "relation", "group_relations", "trace_cross_ratio",
                            "axis_injectivity", "edge_degree", "component", "cusp_type",
                            "discriminant_nonnegative"]
    assert checks["cusp_type"]["detail"].startswith("cusp=Standard")
    assert checks["edge_degree"]["detail"] == "degree=1"


def test_verify_branched_point(capsys):
    code, out, _ = run(capsys, "verify", "--wxyz", "1,1,1,1")
    assert code == 1
    assert "FAIL component: component=Branched" in out
    assert "FAIL edge_degree: degree=2" in out
    assert out.rstrip().endswith("overall: FAIL")


def test_verify_off_variety(capsys):
    code, out, _ = run(capsys, "--json", "verify", "--wxyz", "0,0,0,0")
    assert code == 1
    doc = json.loads(out)
    assert [c["name"] for c in doc["checks"]] == ["on_variety"]
    assert doc["checks"][0]["pass"] is False and doc["overall"] is False


def test_verify_chart_and_affine_inputs(capsys):
    code, out, _ = run(capsys, "--json", "verify", "--chart", "4,3")
    assert code == 0
    assert json.loads(out)["point"] == {"w": "16/5", "x": "4", "y": "3", "z": "12/5"}
    code, out, _ = run(capsys, "verify", "--affine", "3,3,1,1")
    assert code == 0
    code, out, _ = run(capsys, "--json", "verify", "--chart", "4.0,3.0")
    assert code == 0
    assert json.loads(out)["point"]["w"] == pytest.approx(3.2)


def test_verify_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "verify", "--wxyz", "3,3,3,3", "--json", "--backend", "float")
    assert code == 0
    assert json.loads(out)["point"]["w"] == 3.0


def test_verify_singular_chart_point(capsys):
    code, out, _ = run(capsys, "verify", "--chart", "2,2")
    assert code == 1
    assert "chart singular locus" in out


@pytest.mark.parametrize("argv", [
    ["verify", "--wxyz", "1,2"],
    ["verify", "--wxyz", "a,b,c,d"],
    ["verify"],
    ["verify", "--wxyz", "3,3,3,3", "--chart", "1,1"],
    ["scan", "--x", "1", "--y", "1:2", "--steps", "3"],
    ["scan", "--x", "1:2", "--y", "1:2", "--steps", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(capsys, argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_scan_small_grid(capsys):
    code, out, _ = run(capsys, "scan", "--x", "2.5:3.5", "--y", "2.5:3.5", "--steps", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 25
    assert all(r["component"] == "X" and r["degree"] == "1" for r in rows)
    assert out.splitlines()[0] == ",".join(cli.CSV_HEADER)


def test_scan_parabolic_point(capsys):
    code, out, _ = run(capsys, "scan", "--x", "3:3", "--y", "3:3", "--steps", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert (rows[0]["lambda1"], rows[0]["lambda2"], rows[0]["lambda3"]) == ("1", "1", "1")
    assert rows[0]["cusp"] == "Standard"


def test_scan_singular_point_skipped(capsys):
    code, out, _ = run(capsys, "scan", "--x", "2:2", "--y", "2:2", "--steps", "1")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2 and lines[1].startswith("# skipped")


def test_scan_deterministic_and_parallel(tmp_path):
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    args = ["scan", "--x", "0.5:4", "--y=-1:4", "--steps", "6"]
    assert cli.main(args + ["--output", str(a)]) == 0
    assert cli.main(args + ["--output", str(b)]) == 0
    assert cli.main(args + ["--output", str(c), "--jobs", "3"]) == 0
    data = a.read_bytes()
    assert data == b.read_bytes() == c.read_bytes()
    assert b"\r" not in data
    # header plus one line per grid point, skipped points included as comments
    assert data.count(b"\n") == 37


def test_scan_backends_agree(capsys):
    _, exact, _ = run(capsys, "--backend", "rational", "scan", "--x", "6/5:6", "--y", "6/5:6", "--steps", "4")
    _, approx, _ = run(capsys, "scan", "--x", "1.2:6", "--y", "1.2:6", "--steps", "4")
    ra = [r for r in csv.reader(io.StringIO(exact)) if not r[0].startswith("#")]
    rb = [r for r in csv.reader(io.StringIO(approx)) if not r[0].startswith("#")]
    assert len(ra) == len(rb)
    for r, s in zip(ra[1:], rb[1:]):
        assert r[4] == s[4] and r[6] == s[6] and r[7] == s[7]
        for i in (0, 1, 2, 3, 5, 8, 9, 10):
            if r[i]:
                assert float(r[i]) == pytest.approx(float(s[i]), rel=1e-9)


def test_scan_unwritable_path(tmp_path, capsys):
    code = cli.main(["scan", "--x", "3:3", "--y", "3:3", "--steps", "1",
                     "--output", str(tmp_path / "missing" / "out.csv")])
    assert code == 3


def test_alt5(capsys):
    code, out, _ = run(capsys, "alt5")
    assert code == 0
    assert "group_order=60" in out and "orbit=15" in out and "stabilizer=4" in out
    assert "adjacency A:3 B:3 C:6" in out
    code, out, _ = run(capsys, "alt5", "--json")
    doc = json.loads(out)
    assert (doc["group_order"], doc["orbit"], doc["stabilizer"]) == (60, 15, 4)
    assert doc["adjacency"] == {"A": 3, "B": 3, "C": 6} and doc["pass"] is True


def test_alt5_corrupted_build(capsys, monkeypatch):
    real = holonomy.build_representation

    def corrupted(p):
        r = real(p)
        return Representation(r.A, r.A, r.params)

    monkeypatch.setattr(holonomy, "build_representation", corrupted)
    code, out, _ = run(capsys, "alt5")
    assert code == 1 and out.rstrip().endswith("FAIL")


def test_cert_hyperbolic(capsys):
    code, out, _ = run(capsys, "--json", "cert-hyperbolic")
    assert code == 0
    checks = checks_of(out)
    assert checks["invariant_form"]["detail"] == "signature=(3, 1, 0)"
    assert "(3, 3, 3, 3) X" in checks["involution_fixed_point"]["detail"]
    assert checks["standard_cusps"]["detail"].count("eigenvalues 1, 1, 1, 1") == 2
    assert all(c["pass"] for c in checks.values())


def test_json_key_order_is_stable(capsys):
    _, first, _ = run(capsys, "--json", "verify", "--chart", "4,3")
    _, second, _ = run(capsys, "--json", "verify", "--chart", "4,3")
    assert first == second
    assert list(json.loads(first)) == ["command", "point", "checks", "overall"]


def test_tolerance_flag(capsys):
    try:
        code, _, _ = run(capsys, "--tolerance", "1e-6", "verify", "--wxyz", "3,3,3,3")
    finally:
        cli.set_tolerance(1e-9)
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "projorb", "verify", "--wxyz", "3,3,3,3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "overall: PASS" in proc.stdout

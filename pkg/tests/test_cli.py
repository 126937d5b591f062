import csv
import io
import json
from dataclasses import replace

import pytest

from cuspidal import cli
from cuspidal.geometry import curves


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_outputs(capsys):
    code, out, _ = run(capsys, "classify", "builtin:fs_plus")
    assert code == 0
    assert out.splitlines() == ["frontal; S_1^+ at origin", "2-jet class: (u,v^2,0)"]
    code, out, _ = run(capsys, "classify", "builtin:mond:S1+")
    assert out.startswith("not frontal; obstruction")
    assert "frontal part:" in out


def test_parse_errors_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vars": ')
    code, out, err = run(capsys, "classify", str(bad))
    assert code == 2 and out == ""
    assert err.startswith("error: ParseError") and "line" in err and "column" in err
    code, _, err = run(capsys, "classify", "builtin:nope")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "classify", str(tmp_path / "missing.json"))
    assert code == 2


def test_sweep_empty_and_rows(capsys):
    code, out, _ = run(capsys, "sweep", "builtin:fs_plus", "--count", "0")
    assert code == 0
    assert out == "s_tilde,u_root,label,r_b,r_c,kappa_g_abs,kappa_n,method_rb,method_rc\n"
    for name, sign in (("fs_plus", 1), ("fs_minus", -1)):
        code, out, _ = run(capsys, "sweep", f"builtin:{name}", "--range", "0.05", "0.2", "--count", "3")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 6
        for r in rows:
            assert abs(float(r["u_root"])) == pytest.approx(float(r["s_tilde"]), rel=1e-12)
            assert float(r["r_b"]) == pytest.approx(0, abs=1e-12)
            assert float(r["r_c"]) == pytest.approx(sign * 45 * 2 ** 0.5, rel=1e-12)
            assert r["method_rc"] == "oracle"


def test_mesh_grid_two(capsys, tmp_path):
    out_path = tmp_path / "m.obj"
    code, _, _ = run(capsys, "mesh", "builtin:fs_plus", "--grid", "2", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert sum(l.startswith("v ") for l in lines) == 4
    assert [l for l in lines if l.startswith("f ")] == ["f 1 3 4 2"]
    side = json.loads((tmp_path / "m.s2.json").read_text())
    assert {"s", "singular_set", "s2", "self_intersection"} <= set(side)
    code, _, err = run(capsys, "mesh", "builtin:fs_plus", "--grid", "1")
    assert code == 2


def test_mesh_self_intersection_flag(capsys, tmp_path):
    flags = {}
    for s in ("-1", "1"):
        p = tmp_path / f"m{s}.obj"
        run(capsys, "mesh", "builtin:fs_plus", "--grid", "3", "--s", s, "--out", str(p))
        flags[s] = json.loads((tmp_path / f"m{s}.s2.json").read_text())["self_intersection"]
    assert flags == {"-1": True, "1": False}


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "even-curve-limits")
    assert code == 0
    assert "even-curve-limits" in out
    assert "jet-ring-axioms" not in out
    assert out.rstrip().endswith("1/1 suites passed in " + out.rstrip().split()[-1])


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "14/14 suites passed" in out


def test_verify_catches_sign_flip(capsys, monkeypatch):
    original = curves.branch_curvatures_s0

    def flipped(fnf):
        bc = original(fnf)
        c3 = fnf.c3.constant
        c1uu = 2 * fnf.c1[(2, 0, 0)]
        return replace(bc, kappa_g=(2 * fnf.f21.constant * c3 + c1uu) / c3)

    monkeypatch.setattr(curves, "branch_curvatures_s0", flipped)
    code, out, _ = run(capsys, "verify", "--suite", "branch-curvature-agreement")
    assert code == 1
    assert "0/1 suites passed" in out


def test_exported_specs_round_trip(capsys, tmp_path):
    code, _, _ = run(capsys, "export-builtin", "--all", "--out", str(tmp_path))
    assert code == 0
    files = sorted(tmp_path.glob("*.json"))
    assert len(files) > 40
    for name in ("fs_plus", "fs_minus", "mond_S2p"):
        path = str(tmp_path / f"{name}.json")
        code, from_file, _ = run(capsys, "classify", path)
        code2, from_builtin, _ = run(capsys, "classify", "builtin:" + name.replace("_", ":").replace("p", "+")
                                     if name.startswith("mond") else "builtin:" + name)
        assert code == code2 == 0 and from_file == from_builtin
    code, out, _ = run(capsys, "frontalize", str(tmp_path / "mond_S2p.json"))
    front = tmp_path / "front.json"
    front.write_text(out)
    code, out, _ = run(capsys, "classify", str(front))
    assert out.startswith("frontal;")
    code, out, _ = run(capsys, "sweep", str(tmp_path / "fs_minus.json"), "--count", "2")
    assert code == 0 and len(out.splitlines()) == 5


def test_byte_determinism(capsys):
    args = ("sweep", "builtin:example32", "--range", "0.01", "0.2", "--count", "6")
    outs = {run(capsys, *args, "--workers", w)[1] for w in ("1", "8", "1", "8")}
    assert len(outs) == 1
    args = ("mesh", "builtin:fs_minus", "--grid", "9", "--s", "-0.1")
    outs = {run(capsys, *args, "--workers", w)[1] for w in ("1", "8", "8")}
    assert len(outs) == 1

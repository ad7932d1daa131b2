import json

import pytest

from grs4.cli import cmd_dispatch
from grs4.meridians import build_family, descriptor_from_catalog
from grs4.reporting import (INVARIANT_CSV_HEADER, export_invariants_csv,
                            fmt_float, parse_projection)
from grs4.errors import ProjectionError
from grs4.surfaces import surface_from_family


def run(*argv):
    return cmd_dispatch(list(argv))


def spec_for(case, params=None, **kw):
    return surface_from_family(build_family(
        descriptor_from_catalog(case, params, **kw)))


# ---------------------------------------------------------------------------
# Formatting helpers

def test_fmt_float_round_trips():
    for x in (0.44, -2.56, 1.0, 0.0, 1.06, 2.1200016, 1e-17, -0.0,
              123456.789, 2.5e-05):
        assert float(fmt_float(x)) == x
    assert fmt_float(1.0) == "1"
    assert fmt_float(0.0) == "0"
    assert fmt_float(0.44) == "0.44"


# ---------------------------------------------------------------------------
# family list

def test_family_list(capsys):
    assert run("family", "list") == 0
    out = capsys.readouterr().out
    for case in ("min-ell-i", "min-ell-ii", "min-ell-iii", "min-hyp-i",
                 "min-hyp-ii", "min-hyp-iii", "pnmcv-ell", "pnmcv-hyp",
                 "flat-ell-i", "flat-ell-ii", "flat-hyp-i", "flat-hyp-ii",
                 "fnc-ell-i", "fnc-ell-ii", "fnc-hyp-i", "fnc-hyp-ii"):
        assert case in out
    assert "c != 0" in out  # parameter constraints are shown


def test_family_unknown_action(capsys):
    assert run("family", "frobnicate") == 2


# ---------------------------------------------------------------------------
# invariants CSV

def test_invariants_csv_example_row(tmp_path):
    out = tmp_path / "inv.csv"
    code = run("invariants", "--family", "fnc-ell-i", "--params", "c=1.2",
               "--alpha", "1", "--beta", "2", "--u0", "1", "--u1", "2",
               "--nu", "3", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == INVARIANT_CSV_HEADER
    row = lines[1].split(",")
    assert float(row[0]) == 1.0
    assert float(row[1]) == pytest.approx(0.44, abs=1e-14)   # E
    assert row[2] == "0"                                      # F exact zero
    assert float(row[3]) == pytest.approx(-2.56, abs=1e-14)  # G
    assert float(row[4]) == 0.0                               # nu1
    assert float(row[5]) == pytest.approx(2.1200016, abs=1e-5)
    assert float(row[11]) == pytest.approx(1.06, abs=1e-5)    # H coefficient
    assert float(row[12]) == pytest.approx(-1.1236, abs=1e-4)
    assert row[13] == "0"                                     # trA1A2
    assert row[14] == "1"                                     # admissible


def test_invariants_empty_grid_header_only(tmp_path):
    out = tmp_path / "empty.csv"
    spec = spec_for("fnc-ell-i")
    export_invariants_csv(spec, [], str(out))
    assert out.read_text() == INVARIANT_CSV_HEADER + "\n"


def test_invariants_inadmissible_rows_flagged(tmp_path):
    out = tmp_path / "mixed.csv"
    spec = spec_for("pnmcv-ell", {"C": 2.0}, interval=(0.5, 6.0))
    export_invariants_csv(spec, [1.0, 3.0], str(out))
    lines = out.read_text().splitlines()
    assert lines[1].startswith("1,")
    assert lines[1].endswith(",0")
    assert lines[1].split(",")[1] == ""  # invariant cells left empty
    assert lines[2].endswith(",1")


# ---------------------------------------------------------------------------
# verify

def test_verify_pass_writes_report(tmp_path):
    rp = tmp_path / "r.json"
    code = run("verify", "--family", "pnmcv-ell", "--params", "C=2",
               "--alpha", "1", "--beta", "3", "--u0", "2.1", "--u1", "6",
               "--nu", "50", "--report", str(rp))
    assert code == 0
    payload = json.loads(rp.read_text())
    assert payload["pass"] is True
    assert payload["family"] == "pnmcv-ell"
    assert payload["alpha"] == 1.0


def test_verify_param_error_exit_2():
    assert run("verify", "--family", "flat-ell-ii", "--params", "C=4") == 2


def test_verify_failed_check_exit_1(tmp_path):
    rp = tmp_path / "neg.json"
    code = run("verify", "--family", "custom", "--params",
               "f=u**2,g=u,kind=elliptic", "--alpha", "1", "--beta", "3",
               "--u0", "0.6", "--u1", "2.8", "--checks", "minimal",
               "--report", str(rp))
    assert code == 1
    payload = json.loads(rp.read_text())
    res = {c["name"]: c for c in payload["checks"]}
    assert res["minimal-h-coeff"]["max_residual"] > 1e-3


def test_verify_requires_target(capsys):
    assert run("verify") == 2


def test_verify_usage_error_exit_2():
    assert run("verify", "--family") == 2


def test_verify_suite_default(tmp_path):
    rp = tmp_path / "suite.json"
    code = run("verify", "--suite", "default", "--report", str(rp))
    assert code == 0
    payload = json.loads(rp.read_text())
    assert payload["pass"] is True
    labels = [j["label"] for j in payload["jobs"]]
    assert "negative-control-nonminimal" in labels
    assert any(v["family"] == "min-ell-i" for v in payload["vacuous"])


def test_verify_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"params": {"C": 2.0}, "alpha": 1.0,
                               "beta": 3.0, "u0": 2.1, "u1": 6.0}))
    code = run("verify", "--family", "pnmcv-ell", "--config", str(cfg))
    assert code == 0
    # flags override the file: C=4 puts the surface on a different ladder rung
    code = run("verify", "--family", "pnmcv-ell", "--config", str(cfg),
               "--params", "C=1.9")
    assert code == 0


def test_verify_bad_config_exit_2(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{not json")
    assert run("verify", "--family", "pnmcv-ell", "--config", str(cfg)) == 2
    assert run("verify", "--suite", str(tmp_path / "missing.json")) == 2


# ---------------------------------------------------------------------------
# mesh export

def test_mesh_csv4_small_grid(tmp_path):
    out = tmp_path / "m.csv"
    code = run("mesh", "--family", "fnc-ell-i", "--u0", "1", "--u1", "2",
               "--nu", "2", "--v0", "0", "--v1", "1.5707963267948966",
               "--nv", "2", "--format", "csv4", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "u,v,x1,x2,x3,x4"
    assert len(lines) == 5
    first = [float(t) for t in lines[1].split(",")]
    # elliptic at v=0: z = (f, 0, g, 0) with f = 1.2, g = 1
    assert first == [1.0, 0.0, 1.2, 0.0, 1.0, 0.0]
    assert first[3] == 0.0 and first[5] == 0.0


def test_mesh_obj3_counts(tmp_path):
    out = tmp_path / "m.obj"
    code = run("mesh", "--family", "fnc-ell-i", "--u0", "1", "--u1", "2",
               "--nu", "10", "--v0", "0", "--v1", "6.0", "--nv", "10",
               "--format", "obj3", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert sum(1 for l in lines if l.startswith("v ")) == 100
    assert sum(1 for l in lines if l.startswith("f ")) == 162


def test_mesh_projection_choices(tmp_path):
    assert parse_projection("drop-x4") == (0, 1, 2)
    assert parse_projection("ortho:x1,x2,x4") == (0, 1, 3)
    for bad in ("ortho:x1,x2", "ortho:x1,x1,x2", "ortho:x1,x2,x9", "sideways"):
        with pytest.raises(ProjectionError):
            parse_projection(bad)
    out = tmp_path / "m.obj"
    code = run("mesh", "--family", "fnc-ell-i", "--u0", "1", "--u1", "2",
               "--nu", "3", "--v0", "0", "--v1", "1", "--nv", "3",
               "--format", "obj3", "--projection", "ortho:x1,x2,x4",
               "--out", str(out))
    assert code == 0
    code = run("mesh", "--family", "fnc-ell-i", "--u0", "1", "--u1", "2",
               "--nu", "3", "--v0", "0", "--v1", "1", "--nv", "3",
               "--format", "obj3", "--projection", "bogus", "--out", str(out))
    assert code == 2


def test_invariants_csv_values_round_trip(tmp_path):
    out = tmp_path / "rt.csv"
    spec = spec_for("pnmcv-ell", {"C": 2.0})
    from grs4.surfaces import invariant_record
    us = [2.3, 3.7, 5.1]
    export_invariants_csv(spec, us, str(out))
    lines = out.read_text().splitlines()[1:]
    for u, line in zip(us, lines):
        rec = invariant_record(spec, u)
        cells = line.split(",")
        assert float(cells[0]) == u
        assert float(cells[1]) == rec.E      # exact float64 round trip
        assert float(cells[5]) == rec.nu2
        assert float(cells[11]) == rec.h_coeff


def test_mesh_on_integrated_family(tmp_path):
    out = tmp_path / "ode.csv"
    code = run("mesh", "--family", "flat-ell-i", "--u0", "1.0", "--u1", "1.5",
               "--nu", "5", "--v0", "0", "--v1", "3.14", "--nv", "4",
               "--format", "csv4", "--out", str(out))
    assert code == 0
    assert len(out.read_text().splitlines()) == 21


def test_unwritable_output_exit_2(tmp_path):
    code = run("invariants", "--family", "fnc-ell-i", "--u0", "1",
               "--u1", "2", "--nu", "3",
               "--out", str(tmp_path / "no" / "such" / "dir" / "x.csv"))
    assert code == 2


def test_outputs_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ("invariants", "--family", "pnmcv-ell", "--params", "C=2",
            "--u0", "2.1", "--u1", "6", "--nu", "25")
    assert run(*args, "--out", str(a)) == 0
    assert run(*args, "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()

    ra, rb = tmp_path / "ra.json", tmp_path / "rb.json"
    vargs = ("verify", "--family", "fnc-ell-i", "--nu", "12", "--nv", "4")
    assert run(*vargs, "--report", str(ra)) == 0
    assert run(*vargs, "--report", str(rb)) == 0
    assert ra.read_bytes() == rb.read_bytes()

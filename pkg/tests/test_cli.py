import json
import math

import pytest

from tadpole_nls.cli import main
from tadpole_nls.cli.config import RunConfig, build_config, read_config_file
from tadpole_nls.cli.verify import CHECKS
from tadpole_nls.errors import DomainError


def run(tmp_path, *args):
    return main([*args, "--output-dir", str(tmp_path)])


def _csv(path):
    header, rows = {}, []
    for line in path.read_text().splitlines():
        if line.startswith("# ") and " = " in line:
            k, v = line[2:].split(" = ", 1)
            header[k] = v
        elif not line.startswith("#"):
            rows.append(line.split(","))
    return header, rows[0], rows[1:]


def test_config_precedence(tmp_path, monkeypatch):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text("# comment\nquad_tol = 1e-12\noutput_dir = from_file\ngrid_n = 50\n")
    monkeypatch.setenv("TADPOLE_OUTPUT_DIR", "from_env")
    assert build_config(None, {}).output_dir == "from_env"
    cfg = build_config(str(cfg_file), {"grid_n": 7})
    assert (cfg.quad_tol, cfg.output_dir, cfg.grid_n) == (1e-12, "from_file", 7)
    monkeypatch.delenv("TADPOLE_OUTPUT_DIR")
    assert build_config(None, {}) == RunConfig()


def test_config_validation(tmp_path):
    with pytest.raises(DomainError):
        RunConfig(quad_tol=0.0)
    with pytest.raises(DomainError):
        RunConfig(grid_n=1)
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n")
    with pytest.raises(DomainError):
        read_config_file(bad)


def test_hash_ignores_output_dir():
    assert RunConfig(output_dir="a").hash() == RunConfig(output_dir="b").hash()
    assert RunConfig(quad_tol=1e-9).hash() != RunConfig().hash()


def test_solve_u0(tmp_path, capsys):
    assert run(tmp_path, "solve", "--u0", "0.8", "--format", "json") == 0
    out = json.loads(capsys.readouterr().out)
    for key in ("E", "Uplus", "a", "eps", "omega", "mu"):
        assert key in out
    doc = json.loads((tmp_path / "solve.json").read_text())
    assert doc["header"]["config_hash"] == RunConfig(format="json").hash()
    assert doc["checks"]["kirchhoff_defect"] <= 1e-8
    assert doc["checks"]["inside_variational_bounds"] is True


def test_solve_omega_same_schema(tmp_path, capsys):
    assert run(tmp_path, "solve", "--u0", "0.8") == 0
    a = set(json.loads(capsys.readouterr().out))
    assert run(tmp_path, "solve", "--omega", "-1") == 0
    b = set(json.loads(capsys.readouterr().out))
    assert a == b
    header, cols, rows = _csv(tmp_path / "solve.csv")
    assert "quad_tol" in header and "mu" in cols and len(rows) == 1


def test_solve_usage_errors(tmp_path, capsys):
    assert run(tmp_path, "solve", "--omega", "1") == 2
    assert "omega must be negative" in capsys.readouterr().err
    assert run(tmp_path, "solve") == 2
    assert run(tmp_path, "solve", "--u0", "1.5") == 2


def test_mass_curve(tmp_path):
    assert run(tmp_path, "mass-curve") == 0
    header, cols, rows = _csv(tmp_path / "mass_curve.csv")
    assert cols == ["omega", "mu", "dmu_sign"]
    assert len(rows) == 400
    mu = [float(r[1]) for r in rows]
    assert abs(mu[0] - math.pi / 2) <= 1e-3 and abs(mu[-1] - math.pi / 4) <= 1e-3
    signs = [int(r[2]) for r in rows]
    assert sum(1 for s, t in zip(signs, signs[1:]) if s != t) == 1
    assert header["interior_maxima"] == "1"
    svg = (tmp_path / "mass_curve.svg").read_text()
    assert svg.count('stroke-dasharray="2,4"') == 2 and "config_hash" in svg
    first = (tmp_path / "mass_curve.csv").read_bytes()
    assert run(tmp_path, "mass-curve") == 0
    assert (tmp_path / "mass_curve.csv").read_bytes() == first


def test_mass_curve_failure_removes_partial_file(tmp_path, monkeypatch):
    from tadpole_nls.cli import commands
    from tadpole_nls.errors import NoRootError

    (tmp_path / "mass_curve.csv").write_text("stale\n")

    def boom(cfg):
        raise NoRootError("grid point failed")

    monkeypatch.setattr(commands, "compute_mass_curve", boom)
    assert run(tmp_path, "mass-curve") == 3
    assert not (tmp_path / "mass_curve.csv").exists()


def test_critical(tmp_path):
    assert run(tmp_path, "critical") == 0
    doc = json.loads((tmp_path / "critical.json").read_text())
    for key in ("U1", "omega1", "omega0", "mu_max"):
        assert key in doc
    assert abs(doc["mu0_residual"]) <= 1e-8
    assert doc["omega1_agreement"] <= 1e-6


def test_profile(tmp_path):
    assert run(tmp_path, "profile", "--omega", "-1", "--n", "128") == 0
    header, cols, rows = _csv(tmp_path / "profile.csv")
    assert cols == ["edge", "x", "value", "derivative"]
    ring = [(float(r[1]), float(r[2])) for r in rows if r[0] == "ring"]
    for (x, u), (y, w) in zip(ring, reversed(ring)):
        assert x == pytest.approx(-y, abs=1e-14) and u == pytest.approx(w, rel=1e-12)
    assert header["monotone_ring"] == "true" and header["monotone_tail"] == "true"
    assert float(header["kirchhoff_defect"]) <= 1e-8
    # U' at the vertex is half of phi'(a)
    assert float(header["vertex_slope_ratio"]) == pytest.approx(0.5, abs=1e-8)
    assert (tmp_path / "phase_plane.csv").exists() and (tmp_path / "profile.svg").exists()


def test_spectrum_and_asymptotics(tmp_path):
    assert run(tmp_path, "spectrum", "--k-max", "3", "--n-k", "7") == 0
    _, cols, rows = _csv(tmp_path / "spectrum.csv")
    assert cols == ["k", "re_a", "im_a", "re_b", "im_b"] and len(rows) == 7
    assert run(tmp_path, "asymptotics", "--grid-n", "40") == 0
    header, cols, rows = _csv(tmp_path / "asymptotics.csv")
    assert header["large_omega_extrapolated"] == "true" and len(rows) == 4


def test_json_format(tmp_path):
    assert run(tmp_path, "spectrum", "--n-k", "3", "--format", "json") == 0
    doc = json.loads((tmp_path / "spectrum.json").read_text())
    assert doc["columns"][0] == "k" and len(doc["rows"]) == 3


@pytest.mark.slow
def test_verify_default_passes(tmp_path, capsys):
    assert run(tmp_path, "verify") == 0
    doc = json.loads((tmp_path / "verify.json").read_text())
    assert [r["id"] for r in doc["invariants"]] == [c[0] for c in CHECKS]
    text = capsys.readouterr().out
    assert all(c[0] in text for c in CHECKS)


@pytest.mark.slow
def test_verify_detects_loose_quadrature(tmp_path):
    assert run(tmp_path, "verify", "--quad-tol", "1e-1") == 1
    doc = json.loads((tmp_path / "verify.json").read_text())
    failed = {r["id"] for r in doc["invariants"] if not r["passed"]}
    assert "quadrature-error-budget" in failed


def test_verify_unknown_id(tmp_path):
    assert run(tmp_path, "verify", "--only", "no-such-check") == 2

"""Subcommand bodies. Each returns an exit code and writes into ``cfg.output_dir``."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .. import asymptotics, critical, linearized, spectrum
from ..errors import DomainError, TadpoleError
from ..scalar_model import soliton_phi
from ..wave_family import (
    MU_HALFLINE, MU_LINE, WaveSolution, default_U0_grid, mass_curve, profile_exact,
    profile_ode, sample_graph_profile, solve_from_omega, solve_from_U0, variational_quotient,
    verify_residuals,
)
from .config import RunConfig
from .output import SvgPlot, padded, write_csv, write_json

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def out_dir(cfg: RunConfig) -> Path:
    d = Path(cfg.output_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def write_table(cfg: RunConfig, stem: str, command: str, columns: Sequence[str], rows: list,
                extra: Sequence[tuple[str, object]] = ()) -> Path:
    d = out_dir(cfg)
    if cfg.format == "json":
        payload = {"meta": dict(extra), "columns": list(columns), "rows": [list(r) for r in rows]}
        return write_json(d / f"{stem}.json", cfg, command, payload)
    return write_csv(d / f"{stem}.csv", cfg, command, columns, rows, extra)


def _solution(cfg: RunConfig, omega: Optional[float], u0: Optional[float]) -> WaveSolution:
    if (omega is None) == (u0 is None):
        raise DomainError("give exactly one of --omega or --u0")
    if u0 is not None:
        if not 0.0 < u0 < 1.0:
            raise DomainError("u0 must lie in (0, 1)")
        return solve_from_U0(u0, cfg.quad_tol)
    return solve_from_omega(omega, cfg.quad_tol, xtol=cfg.root_tol)


def solution_report(sol: WaveSolution, cfg: RunConfig) -> dict:
    gf = sample_graph_profile(sol, n_ring=max(64, 2 * cfg.grid_n), L_trunc=cfg.L_trunc_factor / sol.eps ** 2)
    res = verify_residuals(gf)
    ode = profile_ode(sol)
    U = profile_exact(sol, ode.z)
    var = variational_quotient(sol)
    crit = critical.critical_frequencies()
    return {
        "solution": sol.as_dict(),
        "class": critical.classify(sol.omega, crit).value,
        "checks": {
            "vertex_continuity_defect": gf.vertex_continuity_defect,
            "kirchhoff_defect": gf.kirchhoff_defect,
            "symmetry_defect": gf.symmetry_defect,
            "monotone": gf.monotone,
            "ring_residual": res.ring_residual,
            "tail_residual": res.tail_residual,
            "elliptic_vs_ode": float(np.max(np.abs(U - ode.U))),
            "energy_drift": ode.energy_drift,
            "nehari_defect": var.nehari_defect,
            "variational_quotient": var.quotient,
            "variational_bounds": [var.lower, var.upper],
            "inside_variational_bounds": var.inside_bounds,
        },
    }


def cmd_solve(cfg: RunConfig, omega: Optional[float], u0: Optional[float]) -> int:
    sol = _solution(cfg, omega, u0)
    report = solution_report(sol, cfg)
    d = out_dir(cfg)
    if cfg.format == "json":
        write_json(d / "solve.json", cfg, "solve", report)
    else:
        flat = {**report["solution"], "class": report["class"]}
        flat.update({k: v for k, v in report["checks"].items() if not isinstance(v, list)})
        write_csv(d / "solve.csv", cfg, "solve", list(flat), [list(flat.values())])
    print(json.dumps({**report["solution"], "class": report["class"]}, indent=2, sort_keys=True))
    return EXIT_OK


def compute_mass_curve(cfg: RunConfig):
    grid = default_U0_grid(cfg.grid_n)
    return mass_curve(grid, cfg.quad_tol)


def cmd_mass_curve(cfg: RunConfig) -> int:
    d = out_dir(cfg)
    targets = [d / f"mass_curve.{cfg.format}", d / "mass_curve.svg"]
    try:
        curve = compute_mass_curve(cfg)
        rows = [(s.omega, s.mu, s.dmu_sign) for s in curve.samples]
        extra = [
            ("sign_changes", curve.sign_changes()),
            ("interior_maxima", curve.interior_maxima()),
            # sorted by omega: the first row is the most negative frequency
            ("mu_at_omega_min_minus_pi_over_2", float(curve.mu[0] - MU_LINE)),
            ("mu_at_omega_max_minus_pi_over_4", float(curve.mu[-1] - MU_HALFLINE)),
        ]
        write_table(cfg, "mass_curve", "mass-curve", ("omega", "mu", "dmu_sign"), rows, extra)
        x = np.log10(-curve.omega)
        plot = SvgPlot(padded(float(x.min()), float(x.max())), padded(0.7, 1.7), "mass versus frequency",
                       "log10 |omega|", "mu")
        plot.line(x, curve.mu)
        plot.hline(MU_HALFLINE, "pi/4")
        plot.hline(MU_LINE, "pi/2")
        plot.save(targets[1], cfg, "mass-curve")
    except TadpoleError:
        for t in targets:
            t.unlink(missing_ok=True)
        raise
    print(f"wrote {targets[0]} ({len(rows)} points, {curve.sign_changes()} sign change)")
    return EXIT_OK


def cmd_critical(cfg: RunConfig) -> int:
    crit = critical.find_critical(min(cfg.quad_tol, critical.CRIT_TOL))
    payload = {
        **crit.as_dict(),
        "omega1_agreement": crit.omega1_agreement,
        "classes": {
            "ground_state": f"[{crit.omega0!r}, 0)",
            "local_minimizer": f"({crit.omega1!r}, {crit.omega0!r})",
            "saddle_point": f"(-inf, {crit.omega1!r}]",
        },
    }
    write_json(out_dir(cfg) / "critical.json", cfg, "critical", payload)
    print(f"omega1 = {crit.omega1!r}  omega0 = {crit.omega0!r}  mu_max = {crit.mu_max!r}")
    return EXIT_OK


def cmd_profile(cfg: RunConfig, omega: float, n: Optional[int]) -> int:
    sol = _solution(cfg, omega, None)
    n_ring = n or cfg.grid_n
    gf = sample_graph_profile(sol, n_ring=n_ring, L_trunc=cfg.L_trunc_factor / sol.eps ** 2)
    rows = [("ring", x, u, du) for x, u, du in zip(gf.ring_x, gf.ring_u, gf.ring_du)]
    rows += [("tail", x, v, dv) for x, v, dv in zip(gf.tail_x, gf.tail_v, gf.tail_dv)]
    # scaled phase plane: ring orbit on [0, pi eps^2], tail orbit from the vertex outward
    zr = np.linspace(0.0, sol.half_length, n_ring // 2 + 1)
    Ur, dUr = profile_exact(sol, zr, derivative=True)
    zt = sol.a + np.linspace(0.0, cfg.L_trunc_factor, 4 * n_ring + 1)
    phi = np.array([soliton_phi(z)[:2] for z in zt])
    jump = float(dUr[-1] / phi[0, 1])
    extra = [
        ("omega", sol.omega), ("U0", sol.U0), ("a", sol.a),
        ("vertex_continuity_defect", gf.vertex_continuity_defect),
        ("kirchhoff_defect", gf.kirchhoff_defect),
        ("symmetry_defect", gf.symmetry_defect),
        ("monotone_ring", bool(np.all(np.diff(gf.ring_u[len(gf.ring_u) // 2:]) <= 0.0))),
        ("monotone_tail", bool(np.all(np.diff(gf.tail_v) <= 0.0))),
        ("vertex_slope_ratio", jump),
    ]
    write_table(cfg, "profile", "profile", ("edge", "x", "value", "derivative"), rows, extra)
    phase_rows = [("ring", z, u, du) for z, u, du in zip(zr, Ur, dUr)]
    phase_rows += [("tail", z, p, dp) for z, (p, dp) in zip(zt, phi)]
    write_table(cfg, "phase_plane", "profile", ("edge", "z", "U", "dU"), phase_rows, extra[-1:])

    d = out_dir(cfg)
    ymax = float(max(gf.ring_u.max(), gf.tail_v.max()))
    plot = SvgPlot(padded(-math.pi, math.pi + float(gf.tail_x[-1])), padded(0.0, ymax), "profile",
                   "ring x in [-pi, pi], then tail x + pi", "amplitude")
    plot.line(gf.ring_x, gf.ring_u)
    plot.line(math.pi + gf.tail_x, gf.tail_v, color="#b03a2e")
    plot.save(d / "profile.svg", cfg, "profile")

    s = np.linspace(0.0, 1.0, 400)
    sep = np.sqrt(2.0 * s / (1.0 + s * s))
    phase = SvgPlot(padded(0.0, 1.0), padded(-1.0, 1.0), "phase plane", "U", "U'")
    phase.line(sep, -sep * (1.0 - s * s) / (1.0 + s * s), color="#999999", width=1.0, dash="3,3")
    phase.line(sep, sep * (1.0 - s * s) / (1.0 + s * s), color="#999999", width=1.0, dash="3,3")
    phase.line(Ur, dUr)
    phase.line(phi[:, 0], phi[:, 1], color="#b03a2e")
    phase.save(d / "phase_plane.svg", cfg, "profile")
    print(f"wrote profile for omega={sol.omega!r}: kirchhoff defect {gf.kirchhoff_defect:.2e}, slope ratio {jump:.15g}")
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig, k_max: float, n_k: Optional[int]) -> int:
    n = n_k or cfg.grid_n
    ks = np.linspace(0.0, k_max, n)
    table = spectrum.scattering_table(ks)
    rows = [(s.k, s.a_coeff.real, s.a_coeff.imag, s.b_coeff.real, s.b_coeff.imag) for s in table]
    emb = spectrum.embedded_eigenvalues(max(1, int(k_max)))
    neg = spectrum.no_negative_eigenvalues(-np.geomspace(1e-6, 1e4, n))
    extra = [
        ("max_unitarity_defect", max(s.unitarity_defect for s in table)),
        ("max_vertex_residual", max(max(s.vertex_residuals()) for s in table)),
        ("embedded_eigenvalues", " ".join(f"{e.lam:g}" for e in emb)),
        ("negative_characteristic_min", neg.min_value),
    ]
    write_table(cfg, "spectrum", "spectrum", ("k", "re_a", "im_a", "re_b", "im_b"), rows, extra)
    print(f"wrote {n} scattering points on [0, {k_max:g}]")
    return EXIT_OK


def cmd_asymptotics(cfg: RunConfig) -> int:
    omegas = -np.geomspace(1e-6, 1e2, max(cfg.grid_n // 10, 2))
    rows = []
    for r in asymptotics.comparison_table(omegas):
        small_rel = abs(r.mu_solver - r.mu_small) / (r.mu_solver - MU_HALFLINE)
        excess = r.mu_solver - MU_LINE
        large_rel = abs(r.mu_solver - r.mu_large) / excess if excess > 0.0 else math.nan
        rows.append((r.omega, r.mu_solver, r.mu_small, r.mu_large, small_rel, large_rel))
    small = asymptotics.small_omega_regime()
    large = asymptotics.large_omega_regime()
    extra = [
        ("small_omega_validity", small.validity_hint),
        ("large_omega_validity", large.validity_hint),
        ("large_omega_extrapolated", large.extrapolated),
        ("small_defect_slope", asymptotics.small_defect_slope()),
        ("large_defect_slope", asymptotics.large_defect_slope()),
    ]
    write_table(cfg, "asymptotics", "asymptotics",
                ("omega", "mu_solver", "mu_small", "mu_large", "rel_err_small", "rel_err_large"), rows, extra)
    print(f"small-omega expansion within 1% for |omega| < {small.validity_hint:.3g}; "
          f"large-omega for |omega| > {large.validity_hint:.3g} (extrapolated)")
    return EXIT_OK


def write_nondegeneracy(cfg: RunConfig, sc: linearized.NondegeneracyScan) -> Path:
    rows = list(zip(sc.eps, sc.mismatch, sc.cross, sc.wronskian_defect))
    return write_table(cfg, "nondegeneracy", "verify", ("eps", "mismatch", "cross", "wronskian_defect"), rows,
                       [("sign_changes", sc.sign_changes)])

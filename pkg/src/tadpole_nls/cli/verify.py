"""Invariant suites run by ``tadpole verify``.

Each check returns ``(passed, measured, threshold, detail)``; exceptions
are caught per check and count as failures.
"""

from __future__ import annotations

import math
import traceback
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .. import asymptotics, critical, elliptic, linearized, spectrum
from ..quadrature import period_and_mass_bounds, period_T, period_T_derivative
from ..scalar_model import U_STAR
from ..wave_family import (
    MU_HALFLINE, MU_LINE, mass_elliptic, profile_exact, profile_ode, sample_graph_profile,
    solve_from_omega, solve_from_U0, variational_quotient, verify_residuals,
)
from .commands import compute_mass_curve
from .config import RunConfig

#: certified quadrature bound needed for mu(omega0) = pi/2 to 1e-8
QUAD_BUDGET = 1e-9
SAMPLE_U0 = (0.05, 0.15, 0.3, 0.45, 0.6, 0.75, 0.9, 0.95)
VARIATIONAL_OMEGAS = (-1e-4, -1e-2, -0.25, -1.0, -4.0, -9.0)
EPS_GRID = tuple(np.linspace(0.05, 2.5, 50))


@dataclass(frozen=True)
class CheckResult:
    id: str
    description: str
    passed: bool
    measured: float
    threshold: float
    detail: str = ""


Check = Callable[[RunConfig], tuple[bool, float, float, str]]


def _mass_endpoints(cfg):
    lo = solve_from_omega(-1e-6, cfg.quad_tol, xtol=cfg.root_tol).mu - MU_HALFLINE
    hi = solve_from_omega(-1e4, cfg.quad_tol, xtol=cfg.root_tol).mu - MU_LINE
    m = max(abs(lo), abs(hi))
    return m <= 1e-4, m, 1e-4, f"mu(-1e-6)-pi/4={lo:.3e}, mu(-1e4)-pi/2={hi:.3e}"


def _quad_budget(cfg):
    worst = max(max(period_and_mass_bounds(u, cfg.quad_tol)) for u in SAMPLE_U0)
    return worst <= QUAD_BUDGET, worst, QUAD_BUDGET, "largest certified error bound of T and B"


def _kernel_consistency(cfg):
    worst = 0.0
    for u in SAMPLE_U0:
        sol = solve_from_U0(u, cfg.quad_tol)
        worst = max(worst, abs(sol.mu - mass_elliptic(sol)))
    return worst <= 1e-9, worst, 1e-9, "quadrature mass against elliptic-profile mass"


def _elliptic_vs_ode(cfg):
    worst = 0.0
    for u in SAMPLE_U0:
        sol = solve_from_U0(u, cfg.quad_tol)
        ode = profile_ode(sol)
        worst = max(worst, float(np.max(np.abs(profile_exact(sol, ode.z) - ode.U))))
    return worst <= 1e-8, worst, 1e-8, "sup norm over the half ring"


def _vertex_conditions(cfg):
    worst = 0.0
    for u in SAMPLE_U0:
        sol = solve_from_U0(u, cfg.quad_tol)
        gf = sample_graph_profile(sol, n_ring=256, L_trunc=cfg.L_trunc_factor / sol.eps ** 2)
        worst = max(worst, gf.vertex_continuity_defect, gf.kirchhoff_defect, gf.symmetry_defect)
    return worst <= 1e-8, worst, 1e-8, "continuity, Kirchhoff and ring symmetry"


def _residual_order(cfg):
    sol = solve_from_U0(0.5, cfg.quad_tol)
    r = [verify_residuals(sample_graph_profile(sol, n_ring=n)).max_residual for n in (512, 1024, 2048)]
    order = math.log2(r[1] / r[2])
    return abs(order - 2.0) <= 0.2, order, 2.0, f"residuals {r[0]:.2e} {r[1]:.2e} {r[2]:.2e}"


def _period_monotone(cfg):
    grid = np.linspace(0.02, 0.98, 200)
    d = np.array([period_T_derivative(u, cfg.quad_tol) for u in grid])
    return bool(np.all(d < 0.0)), float(d.max()), 0.0, "largest T'(U0) on 200 points"


def _period_fd(cfg):
    h, worst = 1e-6, 0.0
    for u in np.linspace(0.02, 0.98, 25):
        fd = (period_T(u + h, cfg.quad_tol) - period_T(u - h, cfg.quad_tol)) / (2.0 * h)
        ex = period_T_derivative(u, cfg.quad_tol)
        worst = max(worst, abs(fd - ex) / abs(ex))
    return worst <= 1e-5, worst, 1e-5, "explicit T' against central difference"


def _mass_shape(cfg):
    curve = compute_mass_curve(cfg)
    ok = curve.sign_changes() == 1 and curve.interior_maxima() == 1 and curve.signs[0] > 0
    return ok, float(curve.sign_changes()), 1.0, f"{curve.interior_maxima()} interior maxima on {cfg.grid_n} points"


def _critical_dual(cfg):
    crit = critical.find_critical(min(cfg.quad_tol, critical.CRIT_TOL))
    ok = crit.omega1_agreement <= 1e-6 and abs(crit.mu0_residual) <= 1e-8 and crit.omega1 < crit.omega0 < 0.0
    return ok, crit.omega1_agreement, 1e-6, f"omega1={crit.omega1:.12g}, omega0={crit.omega0:.12g}"


def _variational(cfg):
    worst_neh, inside = 0.0, True
    for w in VARIATIONAL_OMEGAS:
        v = variational_quotient(solve_from_omega(w, cfg.quad_tol, xtol=cfg.root_tol))
        inside &= v.inside_bounds
        worst_neh = max(worst_neh, v.nehari_defect)
    return inside and worst_neh <= 1e-6, worst_neh, 1e-6, f"strict bounds held: {inside}"


def _scan(cfg):
    return linearized.scan(EPS_GRID)


def _wronskian(cfg):
    sc = _scan(cfg)
    worst = float(sc.wronskian_defect.max())
    return worst <= 1e-8, worst, 1e-8, f"eps in [{EPS_GRID[0]:g}, {EPS_GRID[-1]:g}]"


def _nondegeneracy(cfg):
    sc = _scan(cfg)
    exc = linearized.integrate_W(solve_from_U0(U_STAR, cfg.quad_tol))
    ok = sc.min_abs_mismatch > 0.0 and sc.sign_changes == 0 and abs(exc.mismatch) > 0.0
    return ok, min(sc.min_abs_mismatch, abs(exc.mismatch)), 0.0, f"cross never changes sign, min {sc.min_abs_cross:.3g}"


def _spectrum_unitarity(cfg):
    ks = np.linspace(0.0, 10.0, 1000)
    worst = max(spectrum.scattering(k).unitarity_defect for k in ks)
    return worst <= 1e-12, worst, 1e-12, "||b(k)| - 1| on 1000 points"


def _spectrum_vertex(cfg):
    ks = np.concatenate([np.linspace(0.0, 10.0, 1000), np.arange(0.0, 51.0)])
    worst = max(max(spectrum.scattering(k).vertex_residuals()) for k in ks)
    return worst <= 1e-12, worst, 1e-12, "including integer k up to 50"


def _spectrum_negative(cfg):
    rep = spectrum.no_negative_eigenvalues(-np.geomspace(1e-8, 1e4, 500))
    return rep.no_roots, rep.min_value, 1.0, "1 + 2 tanh(pi sqrt|lambda|)"


def _small_slope(cfg):
    s = asymptotics.small_defect_slope()
    return abs(s - 2.5) <= 0.2, s, 2.5, "|omega| in [1e-5, 1e-3]"


def _large_expansion(cfg):
    ratios = []
    for e2 in (2.5, 3.0, 3.5):
        mu = solve_from_omega(-e2 * e2, cfg.quad_tol, xtol=cfg.root_tol).mu
        ratios.append((mu - MU_LINE) / ((8.0 * math.pi / 3.0) * e2 * math.exp(-2.0 * math.pi * e2)))
    slope = asymptotics.large_defect_slope()
    ok = all(0.75 <= r <= 1.25 for r in ratios) and ratios[0] < ratios[1] < ratios[2] and abs(slope + 1.0) <= 0.1
    return ok, slope, -1.0, "ratios " + " ".join(f"{r:.4f}" for r in ratios)


def _elliptic_identities(cfg):
    x = np.linspace(-10.0, 10.0, 401)
    worst = 0.0
    for k in (0.0, 0.3, 0.9, 0.999999, 1.0):
        e = elliptic.jacobi(x, k)
        worst = max(worst, float(np.max(np.abs(e.sn ** 2 + e.cn ** 2 - 1.0))),
                    float(np.max(np.abs(e.dn ** 2 + k * k * e.sn ** 2 - 1.0))))
    return worst <= 1e-12, worst, 1e-12, "sn^2 + cn^2 and dn^2 + k^2 sn^2"


def _elliptic_limit(cfg):
    # the two-term forms hold where e^{2x}(1 - k) stays of order one
    k = 1.0 - 1e-6
    x = np.linspace(6.0, 8.0, 41)
    e = elliptic.jacobi(x, k)
    dn1, cn1 = elliptic.k1_expansion(x, k)
    env = (1.0 - k) * x * np.exp(-x)
    c = float(max(np.max(np.abs(e.dn - dn1) / env), np.max(np.abs(e.cn - cn1) / env)))
    s = float(np.max(np.abs(e.sn - 1.0)) / (1.0 - k))
    return c <= 100.0 and s <= 100.0, c, 100.0, f"x in [6, 8], 1-k = 1e-6, |sn-1|/(1-k) <= {s:.3g}"


def _trial_function(cfg):
    A = np.linspace(1e-3, 20.0, 2000)
    f = np.array([asymptotics.trial_function_f(a) for a in A])
    bound = asymptotics.TWO_THIRDS_POW2
    ok = asymptotics.trial_function_f(0.0) == 1.0 and bool(np.all(f < bound))
    return ok, float(f.max()), bound, "f(0) = 1 and f < 2^{2/3} on (0, 20]"


CHECKS: list[tuple[str, str, Check]] = [
    ("mass-endpoints", "mu tends to pi/4 and pi/2 at the ends of the sweep", _mass_endpoints),
    ("quadrature-error-budget", "certified quadrature bounds meet the accuracy budget", _quad_budget),
    ("kernel-consistency", "quadrature mass equals the elliptic-profile mass", _kernel_consistency),
    ("profile-elliptic-vs-ode", "closed-form profile matches ODE shooting", _elliptic_vs_ode),
    ("vertex-conditions", "continuity, Kirchhoff and symmetry at the vertex", _vertex_conditions),
    ("residual-order", "second-difference residual is second order", _residual_order),
    ("period-monotone", "T'(U0) < 0", _period_monotone),
    ("period-derivative-fd", "explicit T' agrees with finite differences", _period_fd),
    ("mass-curve-shape", "single interior maximum of mu", _mass_shape),
    ("critical-dual-method", "omega1 by F = G and by maximisation agree", _critical_dual),
    ("variational-bounds", "quotient inside the strict bounds, Nehari identity", _variational),
    ("wronskian-identity", "linearised Wronskian stays at 1", _wronskian),
    ("nondegeneracy", "vertex mismatch never vanishes", _nondegeneracy),
    ("spectrum-unitarity", "|b(k)| = 1", _spectrum_unitarity),
    ("spectrum-vertex", "generalised eigenfunctions satisfy the vertex conditions", _spectrum_vertex),
    ("spectrum-negative", "no negative eigenvalues", _spectrum_negative),
    ("asymptotics-small-slope", "small-omega defect decays like |omega|^{5/2}", _small_slope),
    ("asymptotics-large", "large-omega ratios and defect slope", _large_expansion),
    ("elliptic-identities", "Jacobi identities", _elliptic_identities),
    ("elliptic-hyperbolic-limit", "k -> 1 expansion of dn", _elliptic_limit),
    ("trial-function", "trial quotient stays below 2^{2/3}", _trial_function),
]


def run_checks(cfg: RunConfig, only: tuple[str, ...] = ()) -> list[CheckResult]:
    results = []
    for cid, desc, fn in CHECKS:
        if only and cid not in only:
            continue
        try:
            ok, measured, threshold, detail = fn(cfg)
            results.append(CheckResult(cid, desc, bool(ok), float(measured), float(threshold), detail))
        except Exception as exc:  # noqa: BLE001 - a crashing check is a failed check
            last = traceback.format_exception_only(type(exc), exc)[-1].strip()
            results.append(CheckResult(cid, desc, False, math.nan, math.nan, f"raised {last}"))
    return results


def as_records(results: list[CheckResult]) -> list[dict]:
    return [asdict(r) for r in results]


def format_text(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        lines.append(f"{tag}  {r.id:<28s} measured={r.measured:.6g} threshold={r.threshold:.6g}  {r.detail}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} invariants passed")
    return "\n".join(lines) + "\n"

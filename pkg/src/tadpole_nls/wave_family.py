"""The standing-wave family, parametrised either by the vertex height U0 or by omega.

Scaling: on the ring ``u(x) = eps U(eps^2 |x|)`` for ``x in [-pi, pi]`` (the
maximum sits at ``x = 0``, the vertex at ``x = +-pi``); on the tail
``v(x) = eps phi(eps^2 x + a)``; ``omega = -eps^4``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import integrate, optimize

from .elliptic import complete_K, jacobi
from .errors import DomainError, IntegrationError, NoRootError
from .quadrature import DEFAULT_TOL, mass_derivative_sign, mass_integral_B, period_T
from .scalar_model import ModelParams, RhoRoots, rho_roots, soliton_phi

MU_HALFLINE = math.pi / 4.0
MU_LINE = math.pi / 2.0
L_TRUNC_FACTOR = 20.0
# beyond this shift U0^2 ~ 2 e^{-2a} leaves the double range (|omega| ~ 1.2e4)
A_MAX_SHIFT = 350.0


@dataclass(frozen=True)
class WaveSolution:
    params: ModelParams
    eps: float
    omega: float
    mu: float
    rho: RhoRoots
    nu: float
    k: float
    #: complementary modulus from the roots directly; 1 - k^2 loses every digit when k -> 1
    kc: float
    T: float

    @property
    def U0(self) -> float:
        return self.params.U0

    @property
    def a(self) -> float:
        return self.params.a

    @property
    def half_length(self) -> float:
        """Scaled half ring length ``pi eps^2``."""
        return math.pi * self.eps ** 2

    def as_dict(self) -> dict:
        p = self.params
        return {
            "U0": p.U0, "E": p.E, "Uplus": p.Uplus, "a": p.a,
            "eps": self.eps, "omega": self.omega, "mu": self.mu,
            "rho1": self.rho.rho1, "rho2": self.rho.rho2, "rho3": self.rho.rho3,
            "nu": self.nu, "k": self.k, "kc": self.kc,
        }


def _elliptic_data(rho: RhoRoots) -> tuple[float, float, float]:
    r1, r2, s3 = rho.rho1, rho.rho2, -rho.rho3
    nu = math.sqrt(r1 * (r2 + s3))
    k = math.sqrt(s3 * (r1 - r2) / (r1 * (r2 + s3)))
    kc = math.sqrt(r2 * (r1 + s3) / (r1 * (r2 + s3)))
    return nu, k, kc


def _assemble(U0: float, tol: float, eps: Optional[float] = None, omega: Optional[float] = None) -> WaveSolution:
    params = ModelParams.from_U0(U0)
    T = period_T(U0, tol)
    if eps is None:
        eps = math.sqrt(T / math.pi)
        omega = -eps ** 4
    B = mass_integral_B(U0, tol)
    mu = 2.0 * B + math.atan(math.exp(-2.0 * params.a))
    rho = rho_roots(params.E)
    nu, k, kc = _elliptic_data(rho)
    return WaveSolution(params, eps, omega, mu, rho, nu, k, kc, T)


def solve_from_U0(U0: float, tol: float = DEFAULT_TOL) -> WaveSolution:
    """Full record of the wave whose ring meets the tail at scaled height ``U0``."""
    return _assemble(U0, tol)


def U0_from_a(a: float) -> float:
    return soliton_phi(a)[0]


def solve_from_omega(omega: float, tol: float = DEFAULT_TOL, xtol: float = 1e-14) -> WaveSolution:
    """The wave at frequency ``omega`` (strictly negative).

    ``eps^2 = sqrt(|omega|)`` and the shift ``a`` is found from
    ``T(phi(a)) = pi eps^2`` by Brent's method in ``log a``; the map
    ``a -> eps`` is increasing so the root is unique.
    """
    if not omega < 0.0:
        raise DomainError("omega must be negative")
    eps2 = math.sqrt(-omega)
    target = math.pi * eps2
    qtol = min(tol, 1e-9 * target)

    def f(log_a: float) -> float:
        return period_T(U0_from_a(math.exp(log_a)), qtol) - target

    # a ~ 2 pi eps^2 for small eps, a ~ pi eps^2 + log(3/4) for large eps
    lo = math.log(target) - 3.0
    hi = min(math.log(2.0 * target + 1.0) + 1.0, math.log(A_MAX_SHIFT))
    if not lo < hi:
        raise DomainError(f"|omega| too large to represent the vertex height, got {omega!r}")
    flo, fhi = f(lo), f(hi)
    # T decreases in U0 and U0 decreases in a, so f increases in log a
    for _ in range(20):
        if flo < 0.0 < fhi:
            break
        if flo >= 0.0:
            lo -= 2.0
            flo = f(lo)
        if fhi <= 0.0:
            if hi >= math.log(A_MAX_SHIFT):
                raise DomainError(f"|omega| too large to represent the vertex height, got {omega!r}")
            hi = min(hi + 1.0, math.log(A_MAX_SHIFT))
            fhi = f(hi)
    else:
        raise NoRootError(f"could not bracket a for omega={omega!r}")
    log_a = optimize.brentq(f, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)
    U0 = U0_from_a(math.exp(log_a))
    return _assemble(U0, tol, eps=math.sqrt(eps2), omega=omega)


def _dn_reflected(x: np.ndarray, kc: float) -> np.ndarray:
    """``dn(x; k)`` on ``[0, K]`` using ``dn(x) = kc / dn(K - x)`` on the upper half.

    Near the vertex of a large-eps wave ``dn`` is of order ``kc`` and the
    direct evaluation through ``cn`` loses all relative accuracy.
    """
    K = complete_K(kc=kc)
    out = np.empty_like(x)
    low = x <= 0.5 * K
    out[low] = jacobi(x[low], kc=kc).dn
    out[~low] = kc / jacobi(K - x[~low], kc=kc).dn
    return out


def _elliptic_profile(rho: RhoRoots, z: np.ndarray, derivative: bool):
    nu, k, kc = _elliptic_data(rho)
    r1, s3 = rho.rho1, -rho.rho3
    x = nu * z
    dn = _dn_reflected(x, kc)
    D = dn * dn
    den = r1 + s3 - r1 * D
    U = np.sqrt(r1 * s3 * D / den)
    if not derivative:
        return U, None
    ev = jacobi(x, kc=kc)
    # d(dn^2)/dz = -2 k^2 nu sn cn dn; sn cn via the evaluation, dn via the reflected value
    dD = -2.0 * k * k * nu * ev.sn * ev.cn * dn
    drho = r1 * s3 * (r1 + s3) * dD / (den * den)
    return U, drho / (2.0 * U)


def profile_exact(sol: WaveSolution, z, derivative: bool = False):
    """``U(z)`` on ``[0, pi eps^2]`` from the elliptic closed form, optionally with ``U'(z)``.

    ``rho = U^2 = rho1 |rho3| dn^2 / (rho1 + |rho3| - rho1 dn^2)`` with argument ``nu z``.
    """
    za = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(za < 0.0) or np.any(za > sol.half_length * (1.0 + 1e-12)):
        raise DomainError("z must lie in [0, pi eps^2]")
    U, dU = _elliptic_profile(sol.rho, za, derivative)
    if np.ndim(z) == 0:
        return (float(U[0]), float(dU[0])) if derivative else float(U[0])
    return (U, dU) if derivative else U


def profile_at_energy(E: float, z, derivative: bool = False):
    """Even orbit with first integral ``E`` and ``U(0) = U+(E)``, at ``z`` in the first half period."""
    za = np.atleast_1d(np.asarray(z, dtype=float))
    U, dU = _elliptic_profile(rho_roots(E), za, derivative)
    if np.ndim(z) == 0:
        return (float(U[0]), float(dU[0])) if derivative else float(U[0])
    return (U, dU) if derivative else U


@dataclass(frozen=True)
class OdeProfile:
    z: np.ndarray
    U: np.ndarray
    dU: np.ndarray
    energy_drift: float


def profile_ode(sol: WaveSolution, n: int = 201, rtol: float = 1e-13, atol: float = 1e-15) -> OdeProfile:
    """Integrate ``U'' = U - 3U^5`` from ``(U+, 0)`` with DOP853 and sample on ``n`` uniform nodes."""
    if n < 2:
        raise DomainError("n must be at least 2")
    L = sol.half_length
    z = np.linspace(0.0, L, n)

    def rhs(_, y):
        return [y[1], y[0] - 3.0 * y[0] ** 5]

    res = integrate.solve_ivp(
        rhs, (0.0, L), [sol.params.Uplus, 0.0], method="DOP853",
        t_eval=z, rtol=rtol, atol=atol,
    )
    if not res.success:
        raise IntegrationError(res.message)
    U, dU = res.y
    energy = dU ** 2 - U ** 2 + U ** 6
    return OdeProfile(z, U, dU, float(np.max(np.abs(energy - sol.params.E))))


@dataclass(frozen=True)
class GraphFunction:
    """Samples of ``(u, v)`` with their derivatives, in unscaled variables."""

    ring_x: np.ndarray
    ring_u: np.ndarray
    ring_du: np.ndarray
    tail_x: np.ndarray
    tail_v: np.ndarray
    tail_dv: np.ndarray
    L_trunc: float
    omega: float
    #: mass of the tail beyond L_trunc, known in closed form
    tail_remainder: float = 0.0

    @property
    def vertex_continuity_defect(self) -> float:
        v0 = self.tail_v[0]
        return max(abs(self.ring_u[0] - v0), abs(self.ring_u[-1] - v0))

    @property
    def kirchhoff_defect(self) -> float:
        return abs(self.ring_du[-1] - self.ring_du[0] - self.tail_dv[0])

    @property
    def symmetry_defect(self) -> float:
        return float(np.max(np.abs(self.ring_u - self.ring_u[::-1])))

    @property
    def monotone(self) -> bool:
        n = len(self.ring_x)
        half = self.ring_u[n // 2:]
        return bool(np.all(np.diff(half) <= 0.0) and np.all(np.diff(self.tail_v) <= 0.0))

    def trapezoid_mass(self) -> float:
        ring = integrate.trapezoid(self.ring_u ** 2, self.ring_x)
        tail = integrate.trapezoid(self.tail_v ** 2, self.tail_x)
        return float(ring + tail + self.tail_remainder)


def sample_graph_profile(
    sol: WaveSolution,
    n_ring: int = 2048,
    L_trunc: Optional[float] = None,
    n_tail: Optional[int] = None,
) -> GraphFunction:
    """Sample the wave on ``n_ring`` intervals of ``[-pi, pi]`` and ``n_tail`` of ``[0, L_trunc]``.

    ``n_ring`` is rounded up to an even number so that ``x = 0`` is a node.
    """
    if n_ring < 8:
        raise DomainError("n_ring must be at least 8")
    n_ring += n_ring % 2
    eps, eps2 = sol.eps, sol.eps ** 2
    if L_trunc is None:
        L_trunc = L_TRUNC_FACTOR / eps2
    if not L_trunc > 0.0:
        raise DomainError("L_trunc must be positive")
    n_tail = n_tail or 4 * n_ring

    x = np.linspace(-math.pi, math.pi, n_ring + 1)
    half = x[n_ring // 2:]
    U, dU = profile_exact(sol, np.minimum(eps2 * half, sol.half_length), derivative=True)
    u_half, du_half = eps * U, eps ** 3 * dU
    # exact mirror image; the left half is not re-evaluated
    ring_u = np.concatenate([u_half[:0:-1], u_half])
    ring_du = np.concatenate([-du_half[:0:-1], du_half])

    y = np.linspace(0.0, L_trunc, n_tail + 1)
    zt = eps2 * y + sol.a
    phi, dphi = _phi_arrays(zt)
    remainder = math.atan(math.exp(-2.0 * (sol.a + eps2 * L_trunc)))
    return GraphFunction(x, ring_u, ring_du, y, eps * phi, eps ** 3 * dphi, L_trunc, sol.omega, remainder)


def _phi_arrays(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    t = np.exp(-2.0 * np.abs(z))
    phi = np.sqrt(2.0 * t / (1.0 + t * t))
    return phi, -phi * np.tanh(2.0 * z)


@dataclass(frozen=True)
class ResidualReport:
    ring_residual: float
    tail_residual: float
    continuity_defect: float
    kirchhoff_defect: float
    h_ring: float
    h_tail: float

    @property
    def max_residual(self) -> float:
        return max(self.ring_residual, self.tail_residual)


def verify_residuals(gf: GraphFunction) -> ResidualReport:
    """Second-difference residual of ``-u'' - 3u^5 - omega u`` on both edges plus the vertex defects.

    The ring stencil is applied at interior nodes only; the vertex itself is a
    kink of ``u`` seen from the circle.
    """
    w = gf.omega

    def residual(x, f):
        h = x[1] - x[0]
        d2 = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / (h * h)
        r = -d2 - 3.0 * f[1:-1] ** 5 - w * f[1:-1]
        return float(np.max(np.abs(r))), float(h)

    rr, hr = residual(gf.ring_x, gf.ring_u)
    rt, ht = residual(gf.tail_x, gf.tail_v)
    return ResidualReport(rr, rt, gf.vertex_continuity_defect, gf.kirchhoff_defect, hr, ht)


@dataclass(frozen=True)
class VariationalData:
    quotient: float
    #: B_omega(Phi) = |Phi'|^2 + |omega| |Phi|^2 integrated over the graph
    B: float
    L6: float
    nehari_defect: float
    lower: float
    upper: float

    @property
    def inside_bounds(self) -> bool:
        return self.lower < self.quotient < self.upper


def _simpson(f, x):
    return float(integrate.simpson(f, x=x))


def variational_quotient(sol: WaveSolution, gf: Optional[GraphFunction] = None, n_ring: int = 4096) -> VariationalData:
    """``B_omega(Phi) / ||Phi||^2_{L^6}`` from the sampled profile (Simpson on each smooth piece).

    The ring is integrated over ``[0, pi]`` and doubled so that no panel
    straddles the vertex kink; the tail beyond ``L_trunc`` is added in closed form.
    """
    gf = gf or sample_graph_profile(sol, n_ring)
    w = abs(sol.omega)
    m = len(gf.ring_x) // 2
    xr, ur, dur = gf.ring_x[m:], gf.ring_u[m:], gf.ring_du[m:]
    kin = 2.0 * _simpson(dur ** 2, xr) + _simpson(gf.tail_dv ** 2, gf.tail_x)
    l2 = 2.0 * _simpson(ur ** 2, xr) + _simpson(gf.tail_v ** 2, gf.tail_x)
    l6 = 2.0 * _simpson(ur ** 6, xr) + _simpson(gf.tail_v ** 6, gf.tail_x)

    # tail beyond L_trunc: in z = eps^2 x + a, |v|^2 dx = phi^2 dz, |v'|^2 dx = eps^4 phi'^2 dz, v^6 dx = eps^4 phi^6 dz
    zb = sol.a + sol.eps ** 2 * gf.L_trunc
    s2 = math.atan(math.exp(-2.0 * zb))
    s6 = 0.5 * (s2 - 0.5 * _sech(2.0 * zb) * math.tanh(2.0 * zb))
    l2 += s2
    l6 += w * s6
    kin += w * (s2 - s6)

    B = kin + w * l2
    L6 = l6 ** (1.0 / 3.0)
    nehari = abs(B - 3.0 * l6) / B
    return VariationalData(B / L6, B, L6, nehari, 0.75 * (math.pi * w) ** (2 / 3), 0.75 * (2 * math.pi * w) ** (2 / 3))


def _sech(x: float) -> float:
    t = math.exp(-abs(x))
    return 2.0 * t / (1.0 + t * t)


def mass_elliptic(sol: WaveSolution, n: int = 4096) -> float:
    """``2 int rho(z) dz`` over the ring from the elliptic profile (Simpson) plus the tail mass."""
    z = np.linspace(0.0, sol.half_length, n + 1)
    U = profile_exact(sol, z)
    return 2.0 * _simpson(U ** 2, z) + math.atan(math.exp(-2.0 * sol.a))


@dataclass(frozen=True)
class MassSample:
    U0: float
    omega: float
    mu: float
    dmu_sign: int


@dataclass(frozen=True)
class MassCurve:
    samples: tuple[MassSample, ...]
    quad_tol: float
    root_tol: float = field(default=0.0)

    @property
    def omega(self) -> np.ndarray:
        return np.array([s.omega for s in self.samples])

    @property
    def mu(self) -> np.ndarray:
        return np.array([s.mu for s in self.samples])

    @property
    def signs(self) -> np.ndarray:
        return np.array([s.dmu_sign for s in self.samples], dtype=int)

    def sign_changes(self) -> int:
        s = self.signs
        s = s[s != 0]
        return int(np.count_nonzero(s[1:] != s[:-1]))

    def interior_maxima(self, ulps: float = 8.0) -> int:
        """Rises followed by falls of ``mu``, with steps within ``ulps`` units of rounding counted as ties.

        Beyond ``|omega| ~ 40`` the excess ``mu - pi/2`` is below one ulp and
        the curve is flat up to rounding noise, which must not count as maxima.
        """
        m = self.mu
        d = np.diff(m)
        res = ulps * np.spacing(np.maximum(np.abs(m[1:]), np.abs(m[:-1])))
        s = np.where(np.abs(d) <= res, 0, np.sign(d)).astype(int)
        s = s[s != 0]
        return int(np.count_nonzero((s[:-1] > 0) & (s[1:] < 0)))


def mass_curve(U0_grid: Sequence[float], tol: float = DEFAULT_TOL) -> MassCurve:
    """``(omega, mu, sign dmu/domega)`` at each ``U0``, sorted by ``omega``.

    ``omega`` increases with ``U0`` so ``sign dmu/domega = sign dmu/dU0``.
    """
    samples = []
    for U0 in U0_grid:
        if not (0.0 < U0 < 1.0):
            raise DomainError(f"grid point {U0!r} outside (0, 1)")
        sol = solve_from_U0(U0, tol)
        d = mass_derivative_sign(U0, tol)
        samples.append(MassSample(U0, sol.omega, sol.mu, int(np.sign(d))))
    samples.sort(key=lambda s: s.omega)
    return MassCurve(tuple(samples), tol)


def default_U0_grid(n: int = 400, omega_min: float = -1e4, omega_max: float = -1e-6) -> np.ndarray:
    """``n`` heights whose shifts ``a`` are log-uniform between the waves at ``omega_min`` and ``omega_max``."""
    a_lo = solve_from_omega(omega_max).a
    a_hi = solve_from_omega(omega_min).a
    a = np.geomspace(a_lo, a_hi, n)
    return np.array([U0_from_a(x) for x in a])


__all__ = [
    "MU_HALFLINE", "MU_LINE", "WaveSolution", "solve_from_U0", "solve_from_omega",
    "profile_exact", "profile_at_energy", "profile_ode", "OdeProfile", "GraphFunction", "sample_graph_profile",
    "ResidualReport", "verify_residuals", "VariationalData", "variational_quotient",
    "mass_elliptic", "MassSample", "MassCurve", "mass_curve", "default_U0_grid", "U0_from_a",
]

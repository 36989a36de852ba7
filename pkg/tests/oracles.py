"""Independent reference computations used by the tests.

Nothing here imports the package's numerics: values come from mpmath at
high precision, from scipy ODE integrators that the package does not use
(LSODA / Radau), or from plain finite differences.
"""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath as mp
import numpy as np
from scipy import integrate

DPS = 40


def _A(u):
    return u ** 2 - u ** 6


@lru_cache(maxsize=None)
def mp_turning_point(E: str) -> mp.mpf:
    """Largest root of ``E + u^2 - u^6`` by bisection on ``[3^{-1/4}, 1]``."""
    with mp.workdps(DPS):
        e = mp.mpf(E)
        lo, hi = mp.mpf(3) ** mp.mpf(-0.25), mp.mpf(1)
        for _ in range(200):
            mid = (lo + hi) / 2
            if e + _A(mid) > 0:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


def mp_orbit_integral(U0, weight=lambda u: 1, dps: int = DPS) -> mp.mpf:
    """``int_{U0}^{U+} w(u) / sqrt(E + A(u)) du`` with ``E = -(3/4) A(U0)``."""
    with mp.workdps(dps):
        U0 = mp.mpf(U0)
        E = -mp.mpf(3) / 4 * _A(U0)
        Up = mp_turning_point(mp.nstr(E, dps + 5))
        split = max(U0, Up / 2)
        total = mp.mpf(0)
        if split > U0:
            total += mp.quad(lambda s: weight(mp.e ** s) * mp.e ** s / mp.sqrt(E + _A(mp.e ** s)),
                             [mp.log(U0), mp.log(split)])

        def upper(t):
            u = Up - t * t
            return 2 * weight(u) / mp.sqrt((2 * Up - t * t) * (u ** 4 + u ** 2 * Up ** 2 + Up ** 4 - 1))

        total += mp.quad(upper, [0, mp.sqrt(Up - split)])
        return total


def mp_period(U0) -> float:
    return float(mp_orbit_integral(U0))


def mp_mass_B(U0) -> float:
    return float(mp_orbit_integral(U0, lambda u: u * u))


def mp_F(U0) -> float:
    s3 = mp.sqrt(3)
    return float(mp_orbit_integral(U0, lambda u: (1 - s3 * u * u) / (1 + s3 * u * u) ** 2))


def mp_mu_of_omega(omega: float, dps: int = 50) -> tuple[mp.mpf, mp.mpf]:
    """``(a, mu)`` of the wave at ``omega`` at high precision; ``mu - pi/2`` is resolved far below 1e-16."""
    with mp.workdps(dps):
        e2 = mp.sqrt(-mp.mpf(omega))

        def parts(a):
            U0 = mp.sqrt(mp.sech(2 * a))
            return mp_orbit_integral(U0, dps=dps), mp_orbit_integral(U0, lambda u: u * u, dps=dps)

        guess = 2 * mp.pi * e2 if e2 < 0.3 else mp.pi * e2 + mp.log(mp.mpf(3) / 4)
        a = mp.findroot(lambda a: parts(a)[0] - mp.pi * e2, guess)
        B = parts(a)[1]
        return a, 2 * B + mp.atan(mp.e ** (-2 * a))


def mp_jacobi(x: float, k: float) -> tuple[float, float, float]:
    m = mp.mpf(k) ** 2
    with mp.workdps(30):
        return (float(mp.ellipfun("sn", x, m=m)), float(mp.ellipfun("cn", x, m=m)),
                float(mp.ellipfun("dn", x, m=m)))


def quad_K(k: float) -> float:
    """``K(k)`` by adaptive quadrature of its defining integral."""
    val, _ = integrate.quad(lambda t: 1.0 / math.sqrt(1.0 - (k * math.sin(t)) ** 2), 0.0, math.pi / 2,
                            epsabs=0.0, epsrel=1e-13, limit=200)
    return val


def _ring_rhs(_, y):
    U, dU = y[0], y[1]
    return [dU, U - 3.0 * U ** 5]


def shoot_profile(Uplus: float, z: np.ndarray, method: str = "LSODA") -> tuple[np.ndarray, np.ndarray]:
    """``(U, U')`` from ``U(0) = U+``, ``U'(0) = 0`` with an integrator the package does not use."""
    res = integrate.solve_ivp(_ring_rhs, (0.0, float(z[-1])), [Uplus, 0.0], method=method, t_eval=z,
                              rtol=1e-13, atol=1e-15)
    assert res.success, res.message
    return res.y[0], res.y[1]


def shoot_time_to(Uplus: float, U0: float, weight=None) -> tuple[float, float]:
    """Time for the orbit started at ``(U+, 0)`` to fall to ``U0``, and ``int U^2 dz`` along the way."""
    def rhs(_, y):
        return [y[1], y[0] - 3.0 * y[0] ** 5, y[0] ** 2]

    def hit(_, y):
        return y[0] - U0

    hit.terminal, hit.direction = True, -1
    res = integrate.solve_ivp(rhs, (0.0, 1e3), [Uplus, 0.0, 0.0], method="Radau", events=hit,
                              rtol=1e-13, atol=1e-15)
    assert res.status == 1, res.message
    return float(res.t_events[0][0]), float(res.y_events[0][0][2])


def central_difference(f, x: float, h: float) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)

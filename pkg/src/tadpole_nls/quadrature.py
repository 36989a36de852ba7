"""Integrals over the ring orbit with a square-root singularity at the turning point.

All of them have the form ``int_{U0}^{U+} g(u) du / sqrt(E + A(u))``. The
kernel splits the interval at ``max(U0, U+/2)``:

* the upper piece uses ``u = U+ - t^2`` together with the exact factorisation
  ``E + A(u) = (U+^2 - u^2)(u^4 + u^2 U+^2 + U+^4 - 1)``, so the transformed
  integrand ``2 g(u) / sqrt((2 U+ - t^2)(u^4 + u^2 U+^2 + U+^4 - 1))`` is smooth
  and free of cancellation;
* the lower piece, present only for small ``U0``, uses ``u = e^s`` so that the
  many decades between ``U0`` and ``U+`` cost a bounded number of nodes.

Both pieces go to adaptive Gauss-Kronrod (QUADPACK via scipy).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

from scipy import integrate

from .errors import DomainError, ToleranceNotMet
from .scalar_model import (
    A_MAX,
    U_STAR,
    energy_from_U0,
    potential_A,
    potential_A_prime,
    turning_point_Uplus,
)

DEFAULT_TOL = 1e-10
DEFAULT_SUBDIVISIONS = 200
# absolute tolerances are floored at this fraction of the value (a few hundred ulps)
REL_FLOOR = 5e-14
SQRT3 = math.sqrt(3.0)

INTEGRANDS = ("period", "mass", "monotonicity-F", "period-derivative", "generic")


@dataclass(frozen=True)
class QuadratureSpec:
    integrand: str = "generic"
    lower: Optional[float] = None
    upper: Optional[float] = None
    tolerance: float = DEFAULT_TOL
    max_subdivisions: int = DEFAULT_SUBDIVISIONS

    def __post_init__(self):
        if self.integrand not in INTEGRANDS:
            raise DomainError(f"unknown integrand {self.integrand!r}")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be positive")
        if self.lower is not None and self.upper is not None and not self.lower < self.upper:
            raise DomainError("lower must be below upper")


def _quad(f, lo, hi, tol, limit, label):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(f, lo, hi, epsabs=tol, epsrel=REL_FLOOR, limit=limit, full_output=1)
    value, err = out[0], out[1]
    if not math.isfinite(value) or err > max(tol, REL_FLOOR * abs(value)):
        raise ToleranceNotMet(f"{label}: requested {tol:.1e}", value, err)
    return value, err


def integrate_sqrt_endpoint(
    g: Callable[[float], float],
    U0: float,
    Uplus: float,
    E: float,
    spec: Optional[QuadratureSpec] = None,
    return_error: bool = False,
):
    """``int_{U0}^{Uplus} g(u) / sqrt(E + A(u)) du`` to the spec's absolute tolerance.

    With ``return_error`` the pair ``(value, certified error bound)`` is returned.
    """
    spec = spec or QuadratureSpec()
    if spec.lower is not None and spec.lower != U0:
        raise DomainError("spec.lower disagrees with U0")
    if spec.upper is not None and spec.upper != Uplus:
        raise DomainError("spec.upper disagrees with Uplus")
    if not U0 < Uplus:
        raise DomainError(f"need U0 < Uplus, got {U0!r} >= {Uplus!r}")
    if E + potential_A(U0) <= 0.0:
        raise DomainError("E + A(U0) must be positive")

    tol = spec.tolerance
    split = max(U0, 0.5 * Uplus)
    total = 0.0
    total_err = 0.0

    if split > U0:

        def lower_integrand(s):
            u = math.exp(s)
            return g(u) * u / math.sqrt(E + potential_A(u))

        v, e = _quad(
            lower_integrand, math.log(U0), math.log(split), 0.5 * tol,
            spec.max_subdivisions, f"{spec.integrand} (lower piece)",
        )
        total += v
        total_err += e

    up2 = Uplus * Uplus
    up4 = up2 * up2

    def upper_integrand(t):
        t2 = t * t
        u = Uplus - t2
        u2 = u * u
        q = u2 * u2 + u2 * up2 + up4 - 1.0
        return 2.0 * g(u) / math.sqrt((2.0 * Uplus - t2) * q)

    v, e = _quad(
        upper_integrand, 0.0, math.sqrt(Uplus - split), 0.5 * tol,
        spec.max_subdivisions, f"{spec.integrand} (upper piece)",
    )
    if return_error:
        return total + v, total_err + e
    return total + v


def _orbit(U0: float) -> tuple[float, float]:
    E = energy_from_U0(U0)
    return E, turning_point_Uplus(E)


def _run(g, U0, integrand, tol, max_subdivisions, return_error=False):
    E, Uplus = _orbit(U0)
    spec = QuadratureSpec(integrand, U0, Uplus, tol, max_subdivisions)
    return integrate_sqrt_endpoint(g, U0, Uplus, E, spec, return_error)


def period_T(U0: float, tol: float = DEFAULT_TOL, max_subdivisions: int = DEFAULT_SUBDIVISIONS) -> float:
    """Half ring length ``pi eps^2`` of the orbit that meets the tail at height ``U0``."""
    return _run(lambda u: 1.0, U0, "period", tol, max_subdivisions)


def mass_integral_B(U0: float, tol: float = DEFAULT_TOL, max_subdivisions: int = DEFAULT_SUBDIVISIONS) -> float:
    """``int u^2 du / sqrt(E + A(u))``, half of the ring mass."""
    return _run(lambda u: u * u, U0, "mass", tol, max_subdivisions)


def period_and_mass_bounds(U0: float, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Certified quadrature error bounds of ``period_T`` and ``mass_integral_B`` at ``U0``."""
    _, eT = _run(lambda u: 1.0, U0, "period", tol, DEFAULT_SUBDIVISIONS, True)
    _, eB = _run(lambda u: u * u, U0, "mass", tol, DEFAULT_SUBDIVISIONS, True)
    return eT, eB


def _F_weight(u: float) -> float:
    w = SQRT3 * u * u
    return (1.0 - w) / (1.0 + w) ** 2


def monotonicity_F(U0: float, tol: float = DEFAULT_TOL, max_subdivisions: int = DEFAULT_SUBDIVISIONS) -> float:
    return _run(_F_weight, U0, "monotonicity-F", tol, max_subdivisions)


def period_bracket(u: float) -> float:
    """``1 - 2 A''(u) [A(u) - A(U*)] / A'(u)^2`` in its factored, regular form.

    Vanishes at ``u = U*`` where the unfactored quotient is 0/0.
    """
    w = SQRT3 * u * u
    u4 = u ** 4
    return 2.0 * (1.0 - w) * (1.0 + 3.0 * w + 3.0 * u4) / (3.0 * SQRT3 * u * u * (1.0 + w) ** 2)


def period_T_derivative(
    U0: float, tol: float = DEFAULT_TOL, max_subdivisions: int = DEFAULT_SUBDIVISIONS
) -> float:
    """Closed-form ``dT/dU0`` (one quadrature, no differencing)."""
    E, _ = _orbit(U0)
    integral = _run(period_bracket, U0, "period-derivative", tol, max_subdivisions)
    rhs = -0.375 * potential_A_prime(U0) * integral - A_MAX / (2.0 * math.sqrt(potential_A(U0)))
    return rhs / (E + A_MAX)


def monotonicity_G(U0: float) -> float:
    """``3 sqrt3 U0^2 sqrt(1 - U0^4) / (4 (1 - 3 U0^4))`` on ``(0, U*)``."""
    if not (0.0 < U0 < U_STAR):
        raise DomainError(f"G is defined on (0, U*) only, got U0={U0!r}")
    q = U0 ** 4
    return 3.0 * SQRT3 * U0 * U0 * math.sqrt(1.0 - q) / (4.0 * (1.0 - 3.0 * q))


def monotonicity_G_prime(U0: float) -> float:
    if not (0.0 < U0 < U_STAR):
        raise DomainError(f"G is defined on (0, U*) only, got U0={U0!r}")
    q = U0 ** 4
    return 3.0 * SQRT3 * U0 * (1.0 + q) / (2.0 * (1.0 - 3.0 * q) ** 2 * math.sqrt(1.0 - q))


def mass_derivative_sign(
    U0: float, tol: float = DEFAULT_TOL, max_subdivisions: int = DEFAULT_SUBDIVISIONS
) -> float:
    """``[E + A(U*)] dmu/dU0``; the prefactor is positive so the sign is that of ``dmu/dU0``."""
    F = monotonicity_F(U0, tol, max_subdivisions)
    return potential_A_prime(U0) * F / (2.0 * SQRT3) - 0.75 * U0 * U0 * math.sqrt(potential_A(U0))


def mass_derivative(U0: float, tol: float = DEFAULT_TOL) -> float:
    """``dmu/dU0`` itself."""
    E, _ = _orbit(U0)
    return mass_derivative_sign(U0, tol) / (E + A_MAX)

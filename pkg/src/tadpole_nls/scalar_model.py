"""Scalar objects of the reduced ring problem.

Everything here is expressed in the scaled variables in which the ring
profile solves ``-U'' + U - 3U^5 = 0`` and the tail is a shifted copy of the
half-line soliton ``phi(z) = sech(2z)^(1/2)``.

Symbols
-------
U0     value of the ring profile at the vertex
Uplus  turning point, ring maximum (largest root of ``E + A(u) = 0``)
E      first integral ``(U')^2 - U^2 + U^6``
a      shift of the soliton on the tail
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._roots import bisect_newton
from .errors import DomainError, NoRootError

#: critical point of A(u) = u^2 - u^6 on the positive axis
U_STAR = 3.0 ** -0.25
#: A(U_STAR), the maximum of the potential
A_MAX = 2.0 / (3.0 * math.sqrt(3.0))
#: degenerate energy level, the lower end of the admissible E interval
E_DEGENERATE = -A_MAX
#: soliton shift at which phi'' vanishes (phi = U_STAR there)
A_INFLECTION = 0.5 * math.acosh(math.sqrt(3.0))

# roots are driven to machine precision; the 1e-13 contract is a ceiling
ROOT_TOL = 0.0


def potential_A(u: float) -> float:
    """``A(u) = u^2 - u^6``."""
    u2 = u * u
    return u2 * (1.0 - u2 * u2)


def potential_A_prime(u: float) -> float:
    return 2.0 * u * (1.0 - 3.0 * u ** 4)


def _check_unit_interval(U0: float, name: str = "U0") -> None:
    if not (0.0 < U0 < 1.0):
        raise DomainError(f"{name} must lie in (0, 1), got {U0!r}")


def _check_energy(E: float) -> None:
    if not (E_DEGENERATE < E < 0.0):
        raise NoRootError(
            f"E must lie in ({E_DEGENERATE:.15g}, 0) for an admissible turning point, got {E!r}"
        )


def energy_from_U0(U0: float) -> float:
    """First integral of the ring orbit glued to the soliton at height ``U0``."""
    _check_unit_interval(U0)
    return -0.75 * potential_A(U0)


def turning_point_Uplus(E: float) -> float:
    """Largest root of ``E + A(u) = 0``; it lies in ``[U_STAR, 1)``."""
    if E == E_DEGENERATE:
        return U_STAR
    _check_energy(E)
    return bisect_newton(
        lambda u: E + potential_A(u), U_STAR, 1.0, df=potential_A_prime, xtol=ROOT_TOL
    )


def a_from_U0(U0: float) -> float:
    """Soliton shift ``a`` with ``phi(a) = U0``, from ``e^{2a} = (1 + sqrt(1 - U0^4)) / U0^2``."""
    _check_unit_interval(U0)
    q = U0 * U0
    # 1 - U0^4 factored to keep precision as U0 -> 1
    s = math.sqrt((1.0 - q) * (1.0 + q))
    return 0.5 * (math.log1p(s) - 2.0 * math.log(U0))


def soliton_phi(z: float) -> tuple[float, float, float]:
    """Half-line soliton ``phi(z) = sech(2z)^(1/2)`` with its first two derivatives."""
    t = math.exp(-2.0 * abs(z))
    sech = 2.0 * t / (1.0 + t * t)
    phi = math.sqrt(sech)
    dphi = -phi * math.tanh(2.0 * z)
    d2phi = phi - 3.0 * phi ** 5
    return phi, dphi, d2phi


@dataclass(frozen=True)
class RhoRoots:
    """Nonzero roots of ``E rho + rho^2 - rho^4`` ordered ``rho3 < 0 < rho2 < rho1``."""

    rho1: float
    rho2: float
    rho3: float

    def symmetric_defects(self, E: float) -> tuple[float, float, float]:
        r1, r2, r3 = self.rho1, self.rho2, self.rho3
        return (r1 + r2 + r3, r1 * r2 + r1 * r3 + r2 * r3 + 1.0, r1 * r2 * r3 - E)


def rho_roots(E: float) -> RhoRoots:
    """Roots of the quartic in ``rho = U^2``.

    ``|rho3|`` solves ``|E| = s (s^2 - 1)`` on ``(1, 2/sqrt(3))``; the positive
    pair follows from ``rho_{1,2} = s/2 +- sqrt(1 - 3 s^2 / 4)``. The small root
    is taken from the product ``rho1 rho2 rho3 = E`` to avoid cancellation.
    """
    _check_energy(E)
    absE = -E
    s = bisect_newton(
        lambda s: s * (s * s - 1.0) - absE,
        1.0,
        2.0 / math.sqrt(3.0),
        df=lambda s: 3.0 * s * s - 1.0,
        xtol=ROOT_TOL,
    )
    rho1 = 0.5 * s + math.sqrt(max(1.0 - 0.75 * s * s, 0.0))
    rho2 = absE / (rho1 * s)
    return RhoRoots(rho1=rho1, rho2=rho2, rho3=-s)


@dataclass(frozen=True)
class ModelParams:
    U0: float
    E: float
    Uplus: float
    a: float

    @classmethod
    def from_U0(cls, U0: float) -> "ModelParams":
        E = energy_from_U0(U0)
        return cls(U0=U0, E=E, Uplus=turning_point_Uplus(E), a=a_from_U0(U0))

"""Critical frequencies of the mass curve and the variational trichotomy.

``omega1`` is where the mass peaks: ``dmu/dU0 = 0`` reduces to ``F(U0) = G(U0)``
on ``(0, U*)``, and ``omega1 = -(T(U1)/pi)^2``. ``omega0 > omega1`` is where the
mass comes back down to the full-soliton value ``pi/2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from scipy import optimize

from .errors import DomainError, NoRootError
from .quadrature import monotonicity_F, monotonicity_G, period_T
from .scalar_model import U_STAR
from .wave_family import MU_LINE, solve_from_U0

#: bracket for the F = G root, kept away from both singular ends
U1_BRACKET = (0.01, U_STAR - 0.01)
#: upper end of the omega0 search in U0; mu is within 1e-6 of pi/4 there
U0_TOP = 1.0 - 1e-6
ROOT_XTOL = 1e-14
CRIT_TOL = 1e-13


class WaveClass(str, enum.Enum):
    GROUND_STATE = "GroundState"
    LOCAL_MINIMIZER = "LocalMinimizer"
    SADDLE_POINT = "SaddlePoint"


@dataclass(frozen=True)
class CriticalFrequencies:
    U1: float
    omega1: float
    mu_max: float
    U0_at_omega0: float
    omega0: float
    #: |F(U1) - G(U1)|
    fg_residual: float
    #: mu(omega0) - pi/2
    mu0_residual: float
    #: omega1 from direct maximisation of mu(U0)
    omega1_golden: float
    U1_golden: float

    @property
    def omega1_agreement(self) -> float:
        """Relative difference between the two routes to ``omega1``."""
        return abs(self.omega1 - self.omega1_golden) / abs(self.omega1)

    def as_dict(self) -> dict:
        return {
            "U1": self.U1, "omega1": self.omega1, "mu_max": self.mu_max,
            "U0_at_omega0": self.U0_at_omega0, "omega0": self.omega0,
            "fg_residual": self.fg_residual, "mu0_residual": self.mu0_residual,
            "omega1_golden": self.omega1_golden, "U1_golden": self.U1_golden,
            "omega1_agreement": self.omega1_agreement,
        }


def _fg(U0: float, tol: float) -> float:
    return monotonicity_F(U0, tol) - monotonicity_G(U0)


def find_U1(tol: float = CRIT_TOL, xtol: float = ROOT_XTOL) -> float:
    """Root of ``F - G`` on ``(0.01, U* - 0.01)``; ``F - G`` falls from positive to negative."""
    lo, hi = U1_BRACKET
    flo, fhi = _fg(lo, tol), _fg(hi, tol)
    if not (flo > 0.0 > fhi):
        raise NoRootError(f"F - G does not change sign on {U1_BRACKET}: {flo!r}, {fhi!r}")
    return optimize.brentq(_fg, lo, hi, args=(tol,), xtol=xtol, rtol=1e-15, maxiter=200)


def _mu(U0: float, tol: float) -> float:
    return solve_from_U0(U0, tol).mu


def maximize_mu_golden(tol: float = CRIT_TOL, xtol: float = 1e-9) -> float:
    """``argmax mu(U0)`` by golden-section search, independent of ``F`` and ``G``."""
    res = optimize.minimize_scalar(
        lambda u: -_mu(u, tol), bracket=(0.05, 0.2, 0.6), method="golden",
        options={"xtol": xtol},
    )
    return float(res.x)


def omega_of_U0(U0: float, tol: float = CRIT_TOL) -> float:
    return -(period_T(U0, tol) / math.pi) ** 2


def find_omega0(U1: float, tol: float = CRIT_TOL, xtol: float = ROOT_XTOL) -> float:
    """``U0`` in ``(U1, 1)`` with ``mu = pi/2``; ``mu`` strictly decreases there."""
    return optimize.brentq(lambda u: _mu(u, tol) - MU_LINE, U1, U0_TOP, xtol=xtol, rtol=1e-15, maxiter=200)


def find_critical(tol: float = CRIT_TOL) -> CriticalFrequencies:
    U1 = find_U1(tol)
    sol1 = solve_from_U0(U1, tol)
    omega1 = omega_of_U0(U1, tol)
    U0z = find_omega0(U1, tol)
    mu0 = _mu(U0z, tol)
    Ug = maximize_mu_golden(tol)
    return CriticalFrequencies(
        U1=U1,
        omega1=omega1,
        mu_max=sol1.mu,
        U0_at_omega0=U0z,
        omega0=omega_of_U0(U0z, tol),
        fg_residual=abs(_fg(U1, tol)),
        mu0_residual=mu0 - MU_LINE,
        omega1_golden=omega_of_U0(Ug, tol),
        U1_golden=Ug,
    )


@lru_cache(maxsize=1)
def critical_frequencies() -> CriticalFrequencies:
    """Cached ``find_critical()`` at the default tolerance."""
    return find_critical()


def classify(omega: float, crit: CriticalFrequencies | None = None) -> WaveClass:
    """Variational type of the wave at ``omega``.

    ``[omega0, 0)`` ground state, ``(omega1, omega0)`` local constrained
    minimiser, ``(-inf, omega1]`` saddle point. The degenerate point
    ``omega1`` itself is put with the saddles.
    """
    if not omega < 0.0:
        raise DomainError("omega must be negative")
    crit = crit or critical_frequencies()
    if omega >= crit.omega0:
        return WaveClass.GROUND_STATE
    if omega > crit.omega1:
        return WaveClass.LOCAL_MINIMIZER
    return WaveClass.SADDLE_POINT

"""Closed-form expansions of the family in both frequency limits, and the constants of the variational bounds.

Expansions are truncated exactly at their leading orders; the solver is the
reference against which they are measured.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
from scipy import optimize

from .errors import DomainError
from .wave_family import MU_HALFLINE, MU_LINE, solve_from_omega

#: relative error at which an expansion is considered valid
VALIDITY_TOL = 0.01
TWO_THIRDS_POW2 = 2.0 ** (2.0 / 3.0)


def _check_omega(omega: float) -> float:
    if not omega < 0.0:
        raise DomainError("omega must be negative")
    return -omega


def mu_small(omega: float) -> float:
    """``pi/4 + 20 pi^3 |omega|^{3/2}``."""
    w = _check_omega(omega)
    return MU_HALFLINE + 20.0 * math.pi ** 3 * w ** 1.5


def mu_large(omega: float) -> float:
    """``pi/2 + (8 pi / 3) |omega|^{1/2} exp(-2 pi |omega|^{1/2})``."""
    w = _check_omega(omega)
    e2 = math.sqrt(w)
    return MU_LINE + (8.0 * math.pi / 3.0) * e2 * math.exp(-2.0 * math.pi * e2)


def small_eps_params(eps: float) -> tuple[float, float]:
    """``(U+, a) = (1 - 3 pi^2 eps^4, 2 pi eps^2 - 28 pi^3 eps^6)``."""
    if not eps > 0.0:
        raise DomainError("eps must be positive")
    e2 = eps * eps
    return 1.0 - 3.0 * math.pi ** 2 * e2 * e2, 2.0 * math.pi * e2 - 28.0 * math.pi ** 3 * e2 ** 3


def large_eps_params(eps: float) -> tuple[float, float]:
    """``(k, a) = (1 - (8/3) exp(-2 pi eps^2), pi eps^2 + log(3/4))``."""
    if not eps >= 1.0:
        raise DomainError("the large-eps expansion needs eps >= 1")
    e2 = eps * eps
    return 1.0 - (8.0 / 3.0) * math.exp(-2.0 * math.pi * e2), math.pi * e2 + math.log(0.75)


@dataclass(frozen=True)
class BoundConstants:
    B_halfline: float
    B_line: float
    lambda_line: float
    lambda_halfline: float
    K_halfline: float


def bound_constants(omega: float) -> BoundConstants:
    w = _check_omega(omega)
    return BoundConstants(
        B_halfline=0.75 * (math.pi * w) ** (2.0 / 3.0),
        B_line=0.75 * (2.0 * math.pi * w) ** (2.0 / 3.0),
        lambda_line=(4.0 / (math.pi * w)) ** (1.0 / 6.0),
        lambda_halfline=(8.0 / (math.pi * w)) ** (1.0 / 6.0),
        K_halfline=16.0 / math.pi ** 2,
    )


def soliton_omega(x, omega: float):
    """``|omega|^{1/4} sech(2 |omega|^{1/2} x)^{1/2}`` on the line."""
    w = _check_omega(omega)
    y = 2.0 * math.sqrt(w) * np.abs(np.asarray(x, dtype=float))
    t = np.exp(-y)
    return w ** 0.25 * np.sqrt(2.0 * t / (1.0 + t * t))


def trial_function_f(A: float) -> float:
    """Quotient of the truncated-soliton trial state relative to ``(3/4)(pi |omega|)^{2/3}``."""
    if A < 0.0:
        raise DomainError("A must be nonnegative")
    s = math.sinh(A) if A < 700.0 else math.inf
    at = (2.0 / math.pi) * math.atan(s)
    # sinh / cosh^2 = tanh sech, written without overflow
    ts = math.tanh(A) / math.cosh(A) if A < 700.0 else 0.0
    num = 1.0 + at - 2.0 * ts / (3.0 * math.pi)
    den = 1.0 + at + 2.0 * ts / math.pi
    return num / den ** (1.0 / 3.0)


class Regime(str, enum.Enum):
    SMALL_OMEGA = "small_omega"
    LARGE_OMEGA = "large_omega"


@dataclass(frozen=True)
class AsymptoticRegime:
    regime: Regime
    #: |omega| at which the expansion's relative error on mu - mu_limit crosses VALIDITY_TOL
    validity_hint: float
    #: True when the crossing lies outside the range the solver resolves and was extrapolated
    extrapolated: bool = False
    note: str = ""

    def __post_init__(self):
        if not self.validity_hint > 0.0:
            raise DomainError("validity_hint must be positive")


def excess_error_small(omega: float) -> float:
    """Relative error of the small-omega correction: ``|mu - mu_small| / (mu - pi/4)``."""
    mu = solve_from_omega(omega).mu
    return abs(mu - mu_small(omega)) / (mu - MU_HALFLINE)


def excess_error_large(omega: float) -> float:
    """Relative error of the large-omega correction: ``|mu - mu_large| / (mu - pi/2)``."""
    mu = solve_from_omega(omega).mu
    return abs(mu - mu_large(omega)) / (mu - MU_LINE)


def small_omega_regime(lo: float = 1e-7, hi: float = 1e-2) -> AsymptoticRegime:
    """Largest ``|omega|`` up to which ``mu_small`` has 1% relative error in the excess mass."""
    g = lambda lw: excess_error_small(-math.exp(lw)) - VALIDITY_TOL
    llo, lhi = math.log(lo), math.log(hi)
    if not (g(llo) < 0.0 < g(lhi)):
        raise DomainError("validity crossing not bracketed")
    lw = optimize.brentq(g, llo, lhi, xtol=1e-6)
    return AsymptoticRegime(Regime.SMALL_OMEGA, math.exp(lw))


def remainder_constant_large(eps2_grid: Iterable[float] = (2.0, 2.5, 3.0, 3.5)) -> float:
    """``(mu - mu_large) e^{2 pi eps^2}`` averaged over a grid where the excess is resolved."""
    vals = []
    for e2 in eps2_grid:
        omega = -e2 * e2
        mu = solve_from_omega(omega).mu
        vals.append((mu - mu_large(omega)) * math.exp(2.0 * math.pi * e2))
    return float(np.mean(vals))


def large_omega_regime(eps2_grid: Iterable[float] = (2.0, 2.5, 3.0, 3.5)) -> AsymptoticRegime:
    """``|omega|`` beyond which ``mu_large`` has 1% relative error in the excess mass.

    The relative error behaves like ``|C| / ((8 pi / 3) eps^2)`` with ``C`` the
    constant of the exponential remainder, so the 1% crossing sits near
    ``eps^2 ~ 30``, where ``mu - pi/2 ~ e^{-190}`` is far below double
    resolution. ``C`` is measured on a resolved grid and the crossing is extrapolated.
    """
    C = remainder_constant_large(eps2_grid)
    e2 = abs(C) / (VALIDITY_TOL * 8.0 * math.pi / 3.0)
    return AsymptoticRegime(
        Regime.LARGE_OMEGA, e2 * e2, extrapolated=True,
        note=f"remainder constant {C:.6g} measured on eps^2 in {tuple(eps2_grid)}",
    )


def loglog_slope(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def small_defect_slope(omegas: Optional[np.ndarray] = None) -> float:
    """Slope of ``log |mu - mu_small|`` against ``log |omega|``; 5/2 expected."""
    w = np.geomspace(1e-5, 1e-3, 9) if omegas is None else np.abs(np.asarray(omegas))
    d = [abs(solve_from_omega(-x).mu - mu_small(-x)) for x in w]
    return loglog_slope(w, np.array(d))


def large_defect_slope(eps2: Optional[np.ndarray] = None) -> float:
    """Slope of ``log |mu - mu_large|`` against ``2 pi eps^2``; -1 expected."""
    e2 = np.linspace(2.0, 3.5, 7) if eps2 is None else np.asarray(eps2, dtype=float)
    d = [abs(solve_from_omega(-x * x).mu - mu_large(-x * x)) for x in e2]
    return float(np.polyfit(2.0 * math.pi * e2, np.log(d), 1)[0])


@dataclass(frozen=True)
class ComparisonRow:
    omega: float
    mu_solver: float
    mu_small: float
    mu_large: float


def comparison_table(omegas: Iterable[float]) -> list[ComparisonRow]:
    rows = []
    for w in omegas:
        rows.append(ComparisonRow(w, solve_from_omega(w).mu, mu_small(w), mu_large(w)))
    return rows

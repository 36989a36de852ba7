"""Kernel of the linearised operator along the family.

On the ring the even solution of ``-W'' + W - 15 U^4 W = 0`` is
``W = dU/dE``, started from ``W(0) = -1/A'(U+)``, ``W'(0) = 0``. A kernel
element exists only if ``2 W'/W`` at the vertex equals ``phi''(a)/phi'(a)``;
the mismatch between the two is what this module measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, IntegrationError
from .scalar_model import potential_A_prime, soliton_phi
from .wave_family import WaveSolution, solve_from_omega

#: below this |phi''(a)| the exceptional branch is used
EXCEPTIONAL_TOL = 1e-10
FD_STEP = 1e-5


@dataclass(frozen=True)
class LinearizedTrace:
    eps: float
    W_end: float
    dW_end: float
    mismatch: float
    wronskian_defect: float
    #: ``2 W' phi' - W phi''`` at the vertex: zero exactly when a kernel element exists, never singular
    cross: float = math.nan
    #: wronskian_defect divided by the size of the two terms, for large W where they cancel
    wronskian_defect_scaled: float = math.nan
    exceptional: bool = False


def _wronskian(U, dU, W, dW):
    return 2.0 * dU * dW - 2.0 * U * W * (1.0 - 3.0 * U ** 4)


def integrate_W(sol: WaveSolution, rtol: float = 1e-13, atol: float = 1e-15, n_check: int = 401) -> LinearizedTrace:
    """Integrate ``(U, W)`` jointly over ``[0, pi eps^2]`` with DOP853.

    The Wronskian-type quantity ``2U'W' - 2UW(1 - 3U^4)`` equals 1 at ``z = 0``
    by the choice of ``W(0)`` and is conserved; its largest deviation over
    ``n_check`` nodes is reported.
    """
    Up = sol.params.Uplus
    W0 = -1.0 / potential_A_prime(Up)
    L = sol.half_length

    def rhs(_, y):
        U, dU, W, dW = y
        return [dU, U - 3.0 * U ** 5, dW, W - 15.0 * U ** 4 * W]

    z = np.linspace(0.0, L, n_check)
    res = integrate.solve_ivp(rhs, (0.0, L), [Up, 0.0, W0, 0.0], method="DOP853", t_eval=z, rtol=rtol, atol=atol)
    if not res.success:
        raise IntegrationError(res.message)
    U, dU, W, dW = res.y
    dev = np.abs(_wronskian(U, dU, W, dW) - 1.0)
    scale = np.abs(2.0 * dU * dW) + np.abs(2.0 * U * W * (1.0 - 3.0 * U ** 4))
    defect = float(np.max(dev))
    defect_scaled = float(np.max(dev / np.maximum(scale, 1.0)))
    W_end, dW_end = float(W[-1]), float(dW[-1])
    _, dphi, d2phi = soliton_phi(sol.a)
    exceptional = abs(d2phi) < EXCEPTIONAL_TOL
    mismatch = 2.0 * dW_end / W_end - d2phi / dphi
    cross = 2.0 * dW_end * dphi - W_end * d2phi
    return LinearizedTrace(sol.eps, W_end, dW_end, mismatch, defect, cross, defect_scaled, exceptional)


def nondegeneracy_mismatch(sol: WaveSolution) -> float:
    """``2W'/W - phi''(a)/phi'(a)`` at the vertex; nonzero means a trivial kernel.

    At ``a = a0`` (``phi''(a0) = 0``) a kernel element would need
    ``W'(pi eps^2) = 0``; the returned value then reduces to ``2W'/W`` whose
    nonvanishing is the same statement.
    """
    tr = integrate_W(sol)
    if tr.W_end == 0.0:
        raise DomainError("W vanishes at the vertex")
    return tr.mismatch


def a_of_eps(eps: float) -> float:
    return solve_from_omega(-eps ** 4, tol=1e-13).a


def a_prime(eps: float, h: float = FD_STEP) -> float:
    """``da/deps`` by a central difference of the family map."""
    return (a_of_eps(eps + h) - a_of_eps(eps - h)) / (2.0 * h)


@dataclass(frozen=True)
class BCWCheck:
    lhs: float
    rhs: float
    a_prime: float

    @property
    def defect(self) -> float:
        return abs(self.lhs - self.rhs) / max(1.0, abs(self.rhs))


def check_BC_W_relation(sol: WaveSolution, h: float = FD_STEP) -> BCWCheck:
    """Compare ``2W'/W`` at the vertex with ``phi''(a) (a' - 4 pi eps) / (phi'(a) (a' - pi eps))``.

    The defect is absolute for values below one and relative above.
    """
    _, dphi, d2phi = soliton_phi(sol.a)
    if abs(d2phi) <= 1e-8:
        raise DomainError("relation degenerates at phi''(a) = 0")
    tr = integrate_W(sol)
    ap = a_prime(sol.eps, h)
    pe = math.pi * sol.eps
    rhs = d2phi * (ap - 4.0 * pe) / (dphi * (ap - pe))
    return BCWCheck(2.0 * tr.dW_end / tr.W_end, rhs, ap)


@dataclass(frozen=True)
class NondegeneracyScan:
    eps: np.ndarray
    mismatch: np.ndarray
    cross: np.ndarray
    wronskian_defect: np.ndarray

    @property
    def min_abs_mismatch(self) -> float:
        return float(np.min(np.abs(self.mismatch)))

    @property
    def min_abs_cross(self) -> float:
        return float(np.min(np.abs(self.cross)))

    @property
    def sign_changes(self) -> int:
        """Zero crossings of the mismatch.

        The ratio form also flips sign where ``W`` vanishes at the vertex
        (a pole, not a root), so the count is taken on ``cross``.
        """
        s = np.sign(self.cross)
        return int(np.count_nonzero(s[1:] != s[:-1]))


def scan(eps_grid) -> NondegeneracyScan:
    eps = np.asarray(eps_grid, dtype=float)
    traces = [integrate_W(solve_from_omega(-e ** 4)) for e in eps]
    return NondegeneracyScan(
        eps,
        np.array([t.mismatch for t in traces]),
        np.array([t.cross for t in traces]),
        np.array([t.wronskian_defect for t in traces]),
    )

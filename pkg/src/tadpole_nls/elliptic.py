"""Jacobi elliptic functions and the complete integral of the first kind.

The modulus ``k`` is used throughout (not the parameter ``m = k^2``). Close to
``k = 1`` the complementary modulus ``kc = sqrt(1 - k^2)`` cannot be recovered
from ``k`` in floating point, so every function also accepts ``kc`` directly;
when both are given ``kc`` wins for the AGM.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DomainError

ArrayLike = Union[float, np.ndarray]

_AGM_TOL = 2.0 * np.finfo(float).eps
_AGM_MAXITER = 64


@dataclass(frozen=True)
class EllipticEval:
    sn: ArrayLike
    cn: ArrayLike
    dn: ArrayLike
    x: ArrayLike
    k: float


def complementary_modulus(k: float) -> float:
    return math.sqrt((1.0 - k) * (1.0 + k))


def _resolve(k: Optional[float], kc: Optional[float]) -> tuple[float, float]:
    if k is None and kc is None:
        raise DomainError("either k or kc is required")
    if kc is None:
        if not (0.0 <= k <= 1.0):
            raise DomainError(f"modulus k must lie in [0, 1], got {k!r}")
        kc = complementary_modulus(k)
    else:
        if not (0.0 <= kc <= 1.0):
            raise DomainError(f"complementary modulus kc must lie in [0, 1], got {kc!r}")
        if k is None:
            k = math.sqrt((1.0 - kc) * (1.0 + kc))
    return k, kc


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two nonnegative numbers."""
    for _ in range(_AGM_MAXITER):
        if abs(a - b) <= _AGM_TOL * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def complete_K(k: Optional[float] = None, kc: Optional[float] = None) -> float:
    """``K(k) = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t)`` via ``pi / (2 AGM(1, kc))``."""
    k, kc = _resolve(k, kc)
    if kc == 0.0:
        raise DomainError("K(k) diverges at k = 1")
    return math.pi / (2.0 * agm(1.0, kc))


def jacobi(x: ArrayLike, k: Optional[float] = None, kc: Optional[float] = None) -> EllipticEval:
    """``sn``, ``cn``, ``dn`` at ``x`` (scalar or array) by descending Landen.

    The AGM ladder ``a_n, c_n`` depends only on the modulus and is built once.
    The amplitude ``phi_N = 2^N a_N x`` is then walked back down with
    ``phi_{n-1} = (phi_n + asin(c_n / a_n sin phi_n)) / 2``. ``dn`` is taken
    from ``sqrt(cn^2 + kc^2 sn^2)``, which has no cancellation when
    ``k sn`` approaches one.
    """
    k, kc = _resolve(k, kc)
    xa = np.asarray(x, dtype=float)

    if k == 0.0:
        sn, cn, dn = np.sin(xa), np.cos(xa), np.ones_like(xa)
    elif kc == 0.0:
        sn = np.tanh(xa)
        cn = 1.0 / np.cosh(xa)
        dn = cn.copy()
    else:
        a_seq = [1.0]
        c_seq = [k]
        a, b = 1.0, kc
        for _ in range(_AGM_MAXITER):
            if abs(c_seq[-1]) <= _AGM_TOL * a:
                break
            a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
            a_seq.append(a)
            c_seq.append(c)
        n = len(a_seq) - 1
        phi = (2.0 ** n) * a_seq[-1] * xa
        for i in range(n, 0, -1):
            phi = 0.5 * (phi + np.arcsin(c_seq[i] / a_seq[i] * np.sin(phi)))
        sn = np.sin(phi)
        cn = np.cos(phi)
        dn = np.hypot(cn, kc * sn)

    if np.ndim(x) == 0:
        return EllipticEval(float(sn), float(cn), float(dn), float(xa), k)
    return EllipticEval(sn, cn, dn, xa, k)


def k1_expansion(x: ArrayLike, k: float) -> tuple[ArrayLike, ArrayLike]:
    """Leading hyperbolic forms of ``dn`` and ``cn`` as ``k -> 1``, ``x -> inf``.

    ``dn ~ 2 e^{-x} + (1/4) e^{x} (1 - k)`` and ``cn ~ 2 e^{-x} - (1/4) e^{x} (1 - k)``.
    Both drop ``O(e^{-3x})`` from ``sech x``, so they are accurate only where
    ``e^{2x} (1 - k)`` stays bounded.
    """
    xa = np.asarray(x, dtype=float)
    lead = 2.0 * np.exp(-xa)
    corr = 0.25 * np.exp(xa) * (1.0 - k)
    return lead + corr, lead - corr


def dn_extended_expansion(x: ArrayLike, k: Optional[float] = None, kc: Optional[float] = None) -> ArrayLike:
    """``sech x + (1/4)(1 - k^2)(sinh x cosh x + x) tanh x sech x``, first order in ``1 - k^2``."""
    k, kc = _resolve(k, kc)
    xa = np.asarray(x, dtype=float)
    sech = 1.0 / np.cosh(xa)
    return sech + 0.25 * kc * kc * (np.sinh(xa) * np.cosh(xa) + xa) * np.tanh(xa) * sech

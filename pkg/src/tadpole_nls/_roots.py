"""Bracketed scalar root finding used throughout the package."""

from __future__ import annotations

import math
from typing import Callable, Optional

from .errors import NoRootError


def bisect_newton(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    df: Optional[Callable[[float], float]] = None,
    xtol: float = 1e-13,
    maxiter: int = 400,
) -> float:
    """Root of ``f`` on ``[lo, hi]`` by Newton steps safeguarded with bisection.

    A Newton step is accepted only when it stays strictly inside the current
    bracket; otherwise the bracket is halved. Without ``df`` this is plain
    bisection. Terminates when the bracket is narrower than ``xtol``, when a
    Newton correction falls below ``xtol`` (it is applied first), or when
    no representable point is left between the bracket ends. ``xtol=0``
    therefore means "to machine precision".
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise NoRootError(f"no sign change on [{lo!r}, {hi!r}]: f={flo!r}, {fhi!r}")

    x = 0.5 * (lo + hi)
    for _ in range(maxiter):
        fx = f(x)
        if fx == 0.0:
            return x
        if math.copysign(1.0, fx) == math.copysign(1.0, flo):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        if hi - lo <= xtol:
            return 0.5 * (lo + hi)

        x_new = None
        if df is not None:
            d = df(x)
            if d != 0.0 and math.isfinite(d):
                cand = x - fx / d
                if lo < cand < hi:
                    if abs(cand - x) <= max(xtol, 2.0 * math.ulp(x)):
                        return cand
                    x_new = cand
        if x_new is None:
            x_new = 0.5 * (lo + hi)
            if x_new in (lo, hi):
                return x_new
        x = x_new

    raise NoRootError(f"no convergence after {maxiter} iterations on [{lo!r}, {hi!r}]")

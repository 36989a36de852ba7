"""Spectrum of the Laplacian on the tadpole with Neumann-Kirchhoff conditions.

Ring ``[-pi, pi]`` with both ends glued to the start of the half-line.
Generalised eigenfunctions at ``lambda = k^2``:
``u = a(k) (e^{ikx} + e^{-ikx})``, ``v = e^{ikx} + b(k) e^{-ikx}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError


def _cos_sin_pi(k: float) -> tuple[float, float]:
    """``(cos pi k, sin pi k)`` with the argument reduced mod 2 first, exact at multiples of 1/2."""
    r = math.fmod(k, 2.0)
    if r == 0.0:
        return 1.0, 0.0
    if r == 1.0:
        return -1.0, 0.0
    if r == 0.5:
        return 0.0, 1.0
    if r == 1.5:
        return 0.0, -1.0
    return math.cos(math.pi * r), math.sin(math.pi * r)


@dataclass(frozen=True)
class ScatteringData:
    k: float
    a_coeff: complex
    b_coeff: complex

    @property
    def unitarity_defect(self) -> float:
        return abs(abs(self.b_coeff) - 1.0)

    def vertex_residuals(self) -> tuple[float, float, float]:
        """Continuity at ``x = pi`` and ``x = -pi`` and the flux balance, all should vanish."""
        k, a, b = self.k, self.a_coeff, self.b_coeff
        c, s = _cos_sin_pi(k)
        ep, em = complex(c, s), complex(c, -s)
        u_pi = a * (ep + em)
        u_mpi = a * (em + ep)
        v0 = 1.0 + b
        du_pi = 1j * k * a * (ep - em)
        du_mpi = 1j * k * a * (em - ep)
        dv0 = 1j * k * (1.0 - b)
        return abs(u_pi - v0), abs(u_mpi - v0), abs(du_pi - du_mpi - dv0)


def scattering(k: float) -> ScatteringData:
    """``a = 1/(cos pi k + 2i sin pi k)``, ``b = (cos pi k - 2i sin pi k) a``."""
    if k < 0.0:
        raise DomainError("k must be nonnegative")
    c, s = _cos_sin_pi(k)
    den = complex(c, 2.0 * s)
    a = 1.0 / den
    b = complex(c, -2.0 * s) / den
    return ScatteringData(k, a, b)


def a_modulus_squared(k: float) -> float:
    """``|a(k)|^2 = 1 / (1 + 3 sin^2 pi k)``."""
    return 1.0 / (1.0 + 3.0 * _cos_sin_pi(k)[1] ** 2)


@dataclass(frozen=True)
class EmbeddedEigenvalue:
    n: int
    lam: float
    eigenfunction: str
    #: max |u(+-pi)| (must match v(0) = 0)
    continuity_defect: float
    #: |u'(pi) - u'(-pi) - v'(0)|
    flux_defect: float
    #: max |-u'' - lam u| on a grid, from the analytic second derivative
    equation_residual: float


def embedded_eigenvalues(n_max: int, n_grid: int = 257) -> list[EmbeddedEigenvalue]:
    """Eigenvalues ``n^2`` carried by ``u = sin(nx)``, ``v = 0``, with their defects."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    x = np.linspace(-math.pi, math.pi, n_grid)
    out = []
    for n in range(1, n_max + 1):
        lam = float(n * n)
        u = np.sin(n * x)
        d2u = -n * n * np.sin(n * x)
        cont = max(abs(math.sin(n * math.pi)), abs(math.sin(-n * math.pi)))
        flux = abs(n * math.cos(n * math.pi) - n * math.cos(-n * math.pi) - 0.0)
        res = float(np.max(np.abs(-d2u - lam * u)))
        out.append(EmbeddedEigenvalue(n, lam, f"sin({n}x)", cont, flux, res))
    return out


@dataclass(frozen=True)
class NegativeSpectrumReport:
    lam_min: float
    lam_max: float
    n_points: int
    min_value: float

    @property
    def no_roots(self) -> bool:
        return self.min_value >= 1.0


def negative_characteristic(lam: float) -> float:
    """``1 + 2 tanh(pi sqrt|lambda|)``; a root would be a negative eigenvalue."""
    return 1.0 + 2.0 * math.tanh(math.pi * math.sqrt(abs(lam)))


def no_negative_eigenvalues(lambda_grid: Iterable[float]) -> NegativeSpectrumReport:
    lam = np.asarray(list(lambda_grid), dtype=float)
    if lam.size == 0 or np.any(lam >= 0.0):
        raise DomainError("lambda grid must be nonempty and strictly negative")
    vals = 1.0 + 2.0 * np.tanh(math.pi * np.sqrt(-lam))
    return NegativeSpectrumReport(float(lam.min()), float(lam.max()), int(lam.size), float(vals.min()))


def scattering_table(k_grid: Iterable[float]) -> list[ScatteringData]:
    return [scattering(float(k)) for k in k_grid]

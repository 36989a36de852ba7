"""Standing waves of the quintic NLS equation on the tadpole graph."""

from .errors import DomainError, IntegrationError, NoRootError, TadpoleError, ToleranceNotMet
from .scalar_model import ModelParams, RhoRoots
from .wave_family import GraphFunction, MassCurve, WaveSolution, solve_from_omega, solve_from_U0

__version__ = "0.1.0"

__all__ = [
    "DomainError", "IntegrationError", "NoRootError", "TadpoleError", "ToleranceNotMet",
    "ModelParams", "RhoRoots", "GraphFunction", "MassCurve", "WaveSolution",
    "solve_from_omega", "solve_from_U0",
]

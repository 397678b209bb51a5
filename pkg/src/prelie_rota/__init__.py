"""Exact Rota-Baxter, Reynolds, Nijenhuis and averaging operators on 2-dimensional pre-Lie algebras."""

__version__ = "0.1.0"

from .algebra import ALPHA, ALPHA_SAMPLES, CATALOG_NAMES, AlgebraSpec, catalog, prelie_check
from .gridkernel import BACKEND
from .poly import Polynomial, RationalFunction
from .solver import SolutionFamily, grid_enumerate, solve_families
from .systems import (
    AVERAGING,
    NIJENHUIS,
    REYNOLDS,
    EquationSystem,
    OperatorKind,
    OperatorMatrix,
    build_system,
    residual,
    rota_baxter,
)

__all__ = [
    "ALPHA",
    "ALPHA_SAMPLES",
    "AVERAGING",
    "BACKEND",
    "CATALOG_NAMES",
    "AlgebraSpec",
    "EquationSystem",
    "NIJENHUIS",
    "OperatorKind",
    "OperatorMatrix",
    "Polynomial",
    "REYNOLDS",
    "RationalFunction",
    "SolutionFamily",
    "build_system",
    "catalog",
    "grid_enumerate",
    "prelie_check",
    "residual",
    "rota_baxter",
    "solve_families",
]

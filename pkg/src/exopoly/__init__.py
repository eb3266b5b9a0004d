"""Exceptional orthogonal polynomials built by rational factorization, in exact arithmetic."""

from .classical import classical_jacobi_op, jacobi
from .diffop import DiffOp2, FirstOrderOp, Flag, preserves_flag
from .factorization import FactorizationData, Kind, factorize
from .quasirational import QuasiRational, from_log_derivative
from .ratpoly import Rat, RationalFunc, RationalPoly
from .x1_families import X1JacobiParams, X1LaguerreParams, x1_jacobi_poly, x1_laguerre_poly
from .xm_jacobi import XmParams, admissible, xm_operator, xm_poly, xm_weight

__version__ = "0.1.0"

__all__ = [
    "DiffOp2",
    "FactorizationData",
    "FirstOrderOp",
    "Flag",
    "Kind",
    "QuasiRational",
    "Rat",
    "RationalFunc",
    "RationalPoly",
    "X1JacobiParams",
    "X1LaguerreParams",
    "XmParams",
    "admissible",
    "classical_jacobi_op",
    "factorize",
    "from_log_derivative",
    "jacobi",
    "preserves_flag",
    "x1_jacobi_poly",
    "x1_laguerre_poly",
    "xm_operator",
    "xm_poly",
    "xm_weight",
]

"""Rational (Darboux) factorizations T = B o A + lambda0 and their partners."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .diffop import DiffOp2, FirstOrderOp, eigenpolynomials
from .quasirational import QuasiRational, RepresentationError, from_log_derivative
from .ratpoly import RationalFunc, RationalPoly, as_func, as_rat, func_sqrt


class EigenfunctionError(ValueError):
    """phi is not a formal eigenfunction with the stated eigenvalue."""

    def __init__(self, residual: RationalFunc):
        super().__init__(f"T(phi)/phi - lambda0 = {residual}, expected 0")
        self.residual = residual


class FactorizationError(ArithmeticError):
    pass


class ShapeInvarianceError(ValueError):
    pass


class Kind(str, enum.Enum):
    STATE_DELETING = "state-deleting"
    STATE_ADDING = "state-adding"
    ISOSPECTRAL = "isospectral"
    # polynomial phi that is not the lowest eigenpolynomial: outside the three
    # standard kinds, and the partner is singular on the interval
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class FactorizationData:
    T: DiffOp2
    phi: QuasiRational
    b: RationalFunc
    lambda0: Fraction
    w: RationalFunc
    b_hat: RationalFunc
    w_hat: RationalFunc
    A: FirstOrderOp
    B: FirstOrderOp
    partner: DiffOp2
    phi_hat: QuasiRational | None

    @property
    def kind(self) -> Kind:
        return classify(self)


def factorize(T: DiffOp2, phi: QuasiRational, b, lambda0) -> FactorizationData:
    """Factor T = B o A + lambda0 with A = b (y' - w y), w = phi'/phi."""
    b, lambda0 = as_func(b), as_rat(lambda0)
    resid = T.eigen_ratio(phi) - lambda0
    if not resid.is_zero():
        raise EigenfunctionError(resid)
    w = phi.log_derivative()
    b_hat = T.p / b
    w_hat = -w - T.q / T.p + b.derivative() / b
    A = FirstOrderOp(b, w)
    B = FirstOrderOp(b_hat, w_hat)
    if (B @ A) + lambda0 != T:
        raise FactorizationError("B o A + lambda0 does not reproduce T")
    try:
        phi_hat = from_log_derivative(w_hat)
    except RepresentationError:
        phi_hat = None
    return FactorizationData(T, phi, b, lambda0, w, b_hat, w_hat, A, B, (A @ B) + lambda0, phi_hat)


def dual_data(f: FactorizationData, W: QuasiRational) -> tuple[QuasiRational, QuasiRational]:
    """(W_hat, phi_hat) = (W b_hat / b, 1 / (W phi b_hat))."""
    W_hat = W * (f.b_hat / f.b)
    phi_hat = (W * f.phi * f.b_hat).inverse()
    return W_hat, phi_hat


def dual_factorization(f: FactorizationData) -> FactorizationData:
    """The factorization of the partner with the roles of A and B exchanged."""
    if f.phi_hat is None:
        raise RepresentationError("phi_hat has no quasi-rational representation")
    return factorize(f.partner, f.phi_hat, f.b_hat, f.lambda0)


def _max_degree(phi: RationalPoly) -> int:
    return max(phi.degree, 0)


def classify(f: FactorizationData) -> Kind:
    phi_poly = f.phi.as_polynomial()
    if phi_poly is not None:
        try:
            eps = eigenpolynomials(f.T, _max_degree(phi_poly))
        except (ValueError, ZeroDivisionError):
            eps = []
        if eps and eps[0].poly == phi_poly.monic():
            return Kind.STATE_DELETING
        return Kind.UNCLASSIFIED
    if f.phi_hat is not None and f.phi_hat.is_polynomial():
        return Kind.STATE_ADDING
    return Kind.ISOSPECTRAL


def intertwines(f: FactorizationData, y: RationalPoly) -> bool:
    """A T y == T_hat A y for a test polynomial y."""
    Ay = f.A.apply(y)
    return f.A.apply(f.T.apply(y)) == f.partner.apply(Ay)


def shape_gauge(p, P_kappa: QuasiRational, P_hkappa: QuasiRational) -> RationalFunc:
    """b with b^2 = p P_kappa / P_hkappa, up to a constant, with positive leading coefficient."""
    q = (P_kappa / P_hkappa).as_rational()
    if q is None:
        raise ShapeInvarianceError("P_kappa / P_hkappa is not rational")
    target = as_func(p) * q
    root = func_sqrt(target * (1 / target.num.lc))
    if root is None:
        raise ShapeInvarianceError(f"{target} is not a square up to a constant")
    return root


def apply_A_wronskian(f: FactorizationData, y: RationalPoly) -> RationalFunc:
    """(b / phi) (phi y' - phi' y); only for polynomial phi."""
    phi = f.phi.as_polynomial()
    if phi is None:
        raise ValueError("Wronskian form needs a polynomial phi")
    return f.b * RationalFunc(phi * y.derivative() - phi.derivative() * y, phi)


def norm_relation_check(f: FactorizationData, y: RationalPoly, lambda_j, W: QuasiRational, W_hat: QuasiRational, interval):
    """(<Ay, Ay>_{W_hat}, (lambda0 - lambda_j) <y, y>_W) by quadrature."""
    from .quadrature import WeightedInterval, inner_product

    Ay = f.A.apply(y)
    if not Ay.is_polynomial():
        raise ValueError("A y is not a polynomial")
    Ay = Ay.as_poly()
    lhs = inner_product(Ay, Ay, WeightedInterval(W_hat, interval))
    rhs = float(f.lambda0 - as_rat(lambda_j)) * inner_product(y, y, WeightedInterval(W, interval))
    return lhs, rhs

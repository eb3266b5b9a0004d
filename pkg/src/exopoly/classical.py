"""Classical Jacobi polynomials, their operator, ladders, norms and seeds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .diffop import DiffOp2, FirstOrderOp
from .quasirational import PowerFactor, QuasiRational
from .ratpoly import (
    ONE,
    X,
    RationalFunc,
    RationalPoly,
    Scalar,
    as_rat,
    gen_binomial,
    pochhammer,
)


@dataclass(frozen=True)
class JacobiParams:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rat(self.alpha))
        object.__setattr__(self, "beta", as_rat(self.beta))

    def shifted(self, da: int, db: int) -> "JacobiParams":
        return JacobiParams(self.alpha + da, self.beta + db)


_XM1_HALF = RationalPoly([Fraction(-1, 2), Fraction(1, 2)])  # (x - 1)/2
_XP1_HALF = RationalPoly([Fraction(1, 2), Fraction(1, 2)])  # (x + 1)/2


@lru_cache(maxsize=4096)
def _jacobi_cached(n: int, alpha: Fraction, beta: Fraction) -> RationalPoly:
    out = RationalPoly()
    for s in range(n + 1):
        c = gen_binomial(n + alpha, n - s) * gen_binomial(n + beta, s)
        if c:
            out = out + (_XM1_HALF**s) * (_XP1_HALF ** (n - s)) * c
    return out


def jacobi(n: int, alpha: Scalar, beta: Scalar) -> RationalPoly:
    """P_n^(alpha, beta) from the explicit finite sum; valid for any rational parameters.

    Zero for n < 0.
    """
    if n < 0:
        return RationalPoly()
    return _jacobi_cached(n, as_rat(alpha), as_rat(beta))


def jacobi_by_recurrence(n_max: int, alpha: Scalar, beta: Scalar) -> list[RationalPoly]:
    """P_0..P_{n_max} from the three-term recurrence (only for alpha, beta > -1)."""
    a, b = as_rat(alpha), as_rat(beta)
    out = [ONE, RationalPoly([(a - b) / 2, (a + b + 2) / 2])]
    for n in range(2, n_max + 1):
        s = 2 * n + a + b
        c1 = 2 * n * (n + a + b) * (s - 2)
        c2 = (s - 1) * (s * (s - 2))
        c3 = (s - 1) * (a * a - b * b)
        c4 = 2 * (n + a - 1) * (n + b - 1) * s
        out.append((out[-1] * RationalPoly([c3, c2]) - out[-2] * c4) * (1 / c1))
    return out[: n_max + 1]


def classical_eigenvalue(n: int, alpha: Scalar, beta: Scalar) -> Fraction:
    return -n * (n + as_rat(alpha) + as_rat(beta) + 1)


def _drift(alpha: Fraction, beta: Fraction) -> RationalPoly:
    return RationalPoly([beta - alpha, -(alpha + beta + 2)])


def classical_jacobi_op(alpha: Scalar, beta: Scalar) -> DiffOp2:
    """(1 - x^2) y'' + (beta - alpha - (alpha + beta + 2) x) y'."""
    a, b = as_rat(alpha), as_rat(beta)
    return DiffOp2(ONE - X * X, _drift(a, b), RationalPoly())


def raising_op(alpha: Scalar, beta: Scalar) -> FirstOrderOp:
    """y -> (1 - x^2) y' + (beta - alpha - (alpha + beta + 2) x) y."""
    a, b = as_rat(alpha), as_rat(beta)
    return FirstOrderOp(ONE - X * X, RationalFunc(-_drift(a, b), ONE - X * X))


def lowering_op() -> FirstOrderOp:
    return FirstOrderOp(ONE, RationalFunc.const(0))


def raise_(y: RationalPoly, alpha: Scalar, beta: Scalar) -> RationalPoly:
    a, b = as_rat(alpha), as_rat(beta)
    return (ONE - X * X) * y.derivative() + _drift(a, b) * y


def lower(y: RationalPoly) -> RationalPoly:
    return y.derivative()


def rodrigues(n: int, alpha: Scalar, beta: Scalar) -> RationalPoly:
    """n raising steps applied to 1, divided by (-2)^n n!."""
    a, b = as_rat(alpha), as_rat(beta)
    y = ONE
    for i in range(n - 1, -1, -1):
        y = raise_(y, a + i, b + i)
    return y * Fraction(1, (-2) ** n * math.factorial(n))


def identity_suite(alpha: Scalar, beta: Scalar, m: int, n: int) -> dict[str, RationalPoly]:
    """Residuals (lhs - rhs) of the standard Jacobi identities; all should be zero."""
    a, b = as_rat(alpha), as_rat(beta)
    P = jacobi
    reflect = RationalPoly([0, -1])
    return {
        "initial": P(0, a, b) - ONE,
        "negative_index": P(-1, a, b),
        "reflection": P(n, a, b) - P(n, b, a).compose(reflect) * ((-1) ** n),
        "shifted_derivative": (X - 1) * P(m, a, b).derivative() - (P(m, a - 1, b + 1) * (a + m) - P(m, a, b) * a),
        "derivative": P(n, a, b).derivative() - P(n - 1, a + 1, b + 1) * ((1 + a + b + n) / 2),
        "difference": P(n, a, b - 1) - P(n, a - 1, b) - P(n - 1, a, b),
    }


# -- norms ---------------------------------------------------------------------------


class DomainError(ValueError):
    pass


def norm_formula(n: int, alpha: Scalar, beta: Scalar) -> float:
    """2^(a+b+1) G(a+1+n) G(b+1+n) / (n! (a+b+2n+1) G(a+b+n+1)), evaluated without range checks."""
    a, b = mpmath.mpf(as_rat(alpha).numerator) / as_rat(alpha).denominator, mpmath.mpf(
        as_rat(beta).numerator
    ) / as_rat(beta).denominator
    with mpmath.workdps(30):
        # at n = 0 the product (a+b+1) G(a+b+1) is G(a+b+2), finite at a+b = -1
        tail = mpmath.gamma(a + b + 2) if n == 0 else (a + b + 2 * n + 1) * mpmath.gamma(a + b + n + 1)
        val = mpmath.power(2, a + b + 1) * mpmath.gamma(a + 1 + n) * mpmath.gamma(b + 1 + n) / (mpmath.factorial(n) * tail)
    return float(val)


def classical_norm(n: int, alpha: Scalar, beta: Scalar) -> float:
    """Squared norm of P_n^(alpha, beta) under (1-x)^alpha (1+x)^beta on (-1, 1)."""
    a, b = as_rat(alpha), as_rat(beta)
    if a <= -1 or b <= -1:
        raise DomainError("norm requires alpha, beta > -1")
    exact = classical_norm_exact(n, a, b)
    return float(exact) if exact is not None else norm_formula(n, a, b)


def classical_norm_exact(n: int, alpha: Scalar, beta: Scalar) -> Fraction | None:
    """Exact value for nonnegative integer parameters, else None."""
    a, b = as_rat(alpha), as_rat(beta)
    if a.denominator != 1 or b.denominator != 1 or a < 0 or b < 0:
        return None
    a, b = int(a), int(b)
    return Fraction(
        2 ** (a + b + 1) * math.factorial(a + n) * math.factorial(b + n),
        math.factorial(n) * (a + b + 2 * n + 1) * math.factorial(a + b + n),
    )


def gamma_ratio(x: Fraction, shift: int) -> Fraction:
    """Gamma(x + shift) / Gamma(x) for integer shift."""
    if shift >= 0:
        return pochhammer(x, shift)
    return 1 / pochhammer(x + shift, -shift)


def classical_norm_ratio(n: int, num: tuple, den: tuple) -> Fraction:
    """N^{num}_n / N^{den}_n exactly when the parameter pairs differ by integers."""
    a1, b1 = (as_rat(v) for v in num)
    a0, b0 = (as_rat(v) for v in den)
    da, db = a1 - a0, b1 - b0
    if da.denominator != 1 or db.denominator != 1:
        raise ValueError("parameter shifts must be integers")
    da, db = int(da), int(db)
    out = Fraction(2) ** (da + db)
    out *= gamma_ratio(a0 + 1 + n, da) * gamma_ratio(b0 + 1 + n, db)
    if n == 0:
        return out / gamma_ratio(a0 + b0 + 2, da + db)
    out /= gamma_ratio(a0 + b0 + n + 1, da + db)
    out *= (a0 + b0 + 2 * n + 1) / (a1 + b1 + 2 * n + 1)
    return out


# -- quasi-rational seeds -------------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    name: str
    phi: QuasiRational
    eigenvalue: Fraction


def _oriented(alpha_exp: Fraction, beta_exp: Fraction) -> tuple[PowerFactor, ...]:
    out = []
    if alpha_exp:
        out.append(PowerFactor(Fraction(1), alpha_exp, -1))
    if beta_exp:
        out.append(PowerFactor(Fraction(-1), beta_exp, 1))
    return tuple(sorted(out, key=lambda pf: pf.root))


def quasi_rational_seeds(alpha: Scalar, beta: Scalar, m: int) -> list[Seed]:
    """The four quasi-rational eigenfunction families of the Jacobi operator."""
    a, b = as_rat(alpha), as_rat(beta)

    def qr(pf, poly):
        return QuasiRational(power_factors=pf, rational_part=RationalFunc(poly))

    return [
        Seed("phi1", qr((), jacobi(m, a, b)), -m * (1 + a + b + m)),
        Seed("phi2", qr(_oriented(-a, -b), jacobi(m, -a, -b)), (1 + m) * (a + b - m)),
        Seed("phi3", qr(_oriented(-a, Fraction(0)), jacobi(m, -a, b)), (1 + b + m) * (a - m)),
        Seed("phi4", qr(_oriented(Fraction(0), -b), jacobi(m, a, -b)), (1 + a + m) * (b - m)),
    ]


def classical_weight(alpha: Scalar, beta: Scalar) -> QuasiRational:
    return QuasiRational.jacobi_weight(alpha, beta)


def state_deleting_factorization(alpha: Scalar, beta: Scalar):
    """T_{alpha,beta} = B o A with A = d/dx (phi = 1, lambda0 = 0); the partner is
    T_{alpha+1,beta+1} - (alpha + beta + 2)."""
    from .factorization import factorize

    return factorize(classical_jacobi_op(alpha, beta), QuasiRational.one(), ONE, 0)

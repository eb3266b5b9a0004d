"""X1-Jacobi and X1-Laguerre: codimension-one exceptional families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .diffop import DiffOp2, Flag, flag_matrix
from .flags import general_codim1_op
from .quasirational import PowerFactor, QuasiRational
from .ratpoly import ONE, X, RationalFunc, RationalPoly, as_rat, gen_binomial


class ParameterError(ValueError):
    pass


def _eigenvector(M: list[list[Fraction]], n: int) -> list[Fraction]:
    """Eigenvector of upper-triangular M for its n-th diagonal entry, last coordinate 1."""
    lam = M[n - 1][n - 1]
    v = [Fraction(0)] * n
    v[n - 1] = Fraction(1)
    for i in range(n - 2, -1, -1):
        d = M[i][i] - lam
        if d == 0:
            raise ParameterError(f"repeated eigenvalue {lam} in the flag matrix")
        v[i] = -sum(M[i][j] * v[j] for j in range(i + 1, n)) / d
    return v


def _truncation(n: int) -> int:
    # round up so consecutive degrees share one cached flag matrix
    return max(8, 1 << (n - 1).bit_length())


def _combine(basis: list[RationalPoly], v: list[Fraction]) -> RationalPoly:
    out = RationalPoly()
    for p, c in zip(basis, v):
        out = out + p * c
    return out


# -- X1-Jacobi ---------------------------------------------------------------------


@dataclass(frozen=True)
class X1JacobiParams:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = as_rat(self.alpha), as_rat(self.beta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        if a <= -1 or b <= -1:
            raise ParameterError("alpha, beta > -1 required")
        if a == b:
            raise ParameterError("alpha != beta required")
        if a * b <= 0:
            raise ParameterError("alpha and beta must be nonzero with equal sign")

    @property
    def a(self) -> Fraction:
        return (self.beta - self.alpha) / 2

    @property
    def b(self) -> Fraction:
        return (self.beta + self.alpha) / (self.beta - self.alpha)

    @property
    def c(self) -> Fraction:
        return self.b + 1 / self.a


def x1_jacobi_flag(prm: X1JacobiParams) -> Flag:
    """x - c, (x - b)^2, (x - b)^3, ..."""
    xb = X - prm.b
    return Flag(lambda k: X - prm.c if k == 1 else xb**k, "X1-Jacobi")


def x1_jacobi_op(prm: X1JacobiParams) -> DiffOp2:
    """(x^2 - 1) y'' + 2a (1 - b x)/(b - x) ((x - c) y' - y)."""
    s = RationalFunc((ONE - X * prm.b) * (2 * prm.a), RationalPoly([prm.b, -1]))
    return DiffOp2(X * X - 1, s * (X - prm.c), -s)


def x1_jacobi_specialization(prm: X1JacobiParams) -> DiffOp2:
    """The general codimension-one operator at k2 = 1, k1 = -2ab, k0 = a^2 (b^2 - 1),
    written in x through X = -a (x - b)."""
    a, b = prm.a, prm.b
    return general_codim1_op(a * a * (b * b - 1), -2 * a * b, 1).affine_substitute(-a, a * b)


def x1_jacobi_eigenvalue(prm: X1JacobiParams, n: int) -> Fraction:
    return (n - 1) * (prm.alpha + prm.beta + n)


def x1_jacobi_weight(prm: X1JacobiParams) -> QuasiRational:
    """(1 - x)^alpha (1 + x)^beta / (x - b)^2."""
    return QuasiRational.jacobi_weight(prm.alpha, prm.beta) * RationalFunc(ONE, (X - prm.b) ** 2)


def x1_jacobi_value_at_1(prm: X1JacobiParams, n: int) -> Fraction:
    return n * gen_binomial(prm.alpha + n - 1, n)


@lru_cache(maxsize=256)
def _x1_jacobi_polys(prm: X1JacobiParams, n_max: int) -> tuple[RationalPoly, ...]:
    F = x1_jacobi_flag(prm)
    M = flag_matrix(x1_jacobi_op(prm), F, n_max)
    basis = F.basis(n_max)
    out = []
    for n in range(1, n_max + 1):
        y = _combine(basis[:n], _eigenvector(M, n))
        v1 = y(Fraction(1))
        if v1 == 0:
            raise ParameterError(f"eigenpolynomial of degree {n} vanishes at x = 1")
        out.append(y * (x1_jacobi_value_at_1(prm, n) / v1))
    return tuple(out)


def x1_jacobi_poly(prm: X1JacobiParams, n: int) -> RationalPoly:
    """Degree-n X1-Jacobi polynomial (n >= 1), normalized by its value at 1."""
    if n < 1:
        raise ParameterError("n >= 1")
    return _x1_jacobi_polys(prm, _truncation(n))[n - 1]


# -- X1-Laguerre ---------------------------------------------------------------------


@dataclass(frozen=True)
class X1LaguerreParams:
    k: Fraction

    def __post_init__(self):
        k = as_rat(self.k)
        object.__setattr__(self, "k", k)
        if k <= 0:
            raise ParameterError("k > 0 required")


def x1_laguerre_flag(prm: X1LaguerreParams) -> Flag:
    """x + k + 1, (x + k)^2, (x + k)^3, ..."""
    xk = X + prm.k
    return Flag(lambda j: X + prm.k + 1 if j == 1 else xk**j, "X1-Laguerre")


def x1_laguerre_op(prm: X1LaguerreParams) -> DiffOp2:
    """-x y'' + (x - k)/(x + k) ((x + k + 1) y' - y)."""
    s = RationalFunc(X - prm.k, X + prm.k)
    return DiffOp2(-X, s * (X + prm.k + 1), -s)


def x1_laguerre_specialization(prm: X1LaguerreParams) -> DiffOp2:
    """The general codimension-one operator at k2 = 0, k1 = -1, k0 = k, shifted by x -> x + k."""
    return general_codim1_op(prm.k, -1, 0).affine_substitute(1, prm.k)


def x1_laguerre_eigenvalue(prm: X1LaguerreParams, n: int) -> Fraction:
    return Fraction(n - 1)


def x1_laguerre_weight(prm: X1LaguerreParams) -> QuasiRational:
    """e^(-x) x^k / (x + k)^2 on (0, inf)."""
    return QuasiRational(
        power_factors=(PowerFactor(Fraction(0), prm.k, 1),),
        exp_part=RationalPoly([0, -1]),
        rational_part=RationalFunc(ONE, (X + prm.k) ** 2),
    )


def x1_laguerre_leading(n: int) -> Fraction:
    return Fraction((-1) ** n, math.factorial(n - 1))


@lru_cache(maxsize=256)
def _x1_laguerre_polys(prm: X1LaguerreParams, n_max: int) -> tuple[RationalPoly, ...]:
    F = x1_laguerre_flag(prm)
    M = flag_matrix(x1_laguerre_op(prm), F, n_max)
    basis = F.basis(n_max)
    out = []
    for n in range(1, n_max + 1):
        y = _combine(basis[:n], _eigenvector(M, n))
        out.append(y * (x1_laguerre_leading(n) / y.lc))
    return tuple(out)


def x1_laguerre_poly(prm: X1LaguerreParams, n: int) -> RationalPoly:
    """Degree-n X1-Laguerre polynomial (n >= 1) with leading coefficient (-1)^n/(n-1)!."""
    if n < 1:
        raise ParameterError("n >= 1")
    return _x1_laguerre_polys(prm, _truncation(n))[n - 1]

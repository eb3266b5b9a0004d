"""Xm-Jacobi polynomials via an isospectral factorization of the Jacobi operator."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .classical import classical_jacobi_op, classical_norm_ratio, jacobi, norm_formula, quasi_rational_seeds
from .diffop import DiffOp2, Flag, FirstOrderOp
from .factorization import FactorizationData, factorize
from .quasirational import QuasiRational
from .ratpoly import ONE, X, RationalFunc, RationalPoly, as_rat, count_real_roots, gen_binomial, nullspace


class ParameterError(ValueError):
    pass


class AdmissibilityMismatch(AssertionError):
    """The closed-form inequalities and exact root counting disagree."""


@dataclass(frozen=True)
class XmParams:
    alpha: Fraction
    beta: Fraction
    m: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rat(self.alpha))
        object.__setattr__(self, "beta", as_rat(self.beta))
        if int(self.m) != self.m or self.m < 0:
            raise ParameterError("m must be a nonnegative integer")
        object.__setattr__(self, "m", int(self.m))


def xi(alpha, beta, m: int) -> RationalPoly:
    """xi_{alpha,beta,m} = P_m^(-alpha, beta)."""
    return jacobi(m, -as_rat(alpha), beta)


def rho(alpha, beta, m: int) -> RationalFunc:
    """xi'/xi."""
    x = xi(alpha, beta, m)
    return RationalFunc(x.derivative(), x)


def denominator(prm: XmParams) -> RationalPoly:
    """The polynomial whose square divides the Xm weight: xi_{alpha+1, beta-1, m}."""
    return xi(prm.alpha + 1, prm.beta - 1, prm.m)


# -- admissibility -----------------------------------------------------------------


VERDICTS = ("admissible", "degenerate-degree", "boundary-root", "interior-zero", "out-of-range")


@dataclass(frozen=True)
class Admissibility:
    verdict: str
    reasons: tuple[str, ...]
    degree: int
    interior_roots: int
    endpoint_values: tuple[Fraction, Fraction]

    @property
    def ok(self) -> bool:
        return self.verdict == "admissible"

    def __bool__(self):
        return self.ok


def _sgn(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def _verdict_by_inequalities(a: Fraction, b: Fraction, m: int) -> tuple[str, list[str]]:
    if m == 0:
        return "admissible", []
    d = a - b - m + 1
    if d.denominator == 1 and 0 <= d <= m - 1:
        return "degenerate-degree", [f"alpha - beta - m + 1 = {d} lies in 0..{m - 1}"]
    reasons = []
    if a.denominator == 1 and 0 <= a <= m - 1:
        reasons.append(f"alpha = {a} lies in 0..{m - 1}: root at x = 1")
    if b == 0:
        reasons.append("beta = 0: root at x = -1")
    if reasons:
        return "boundary-root", reasons
    if not (a > m - 2 and _sgn(a - m + 1) == _sgn(b)):
        return "interior-zero", [f"need alpha > m - 2 and sgn(alpha - m + 1) = sgn(beta); got alpha={a}, beta={b}"]
    return "admissible", []


def _verdict_by_roots(xi_: RationalPoly, m: int) -> tuple[str, int]:
    if xi_.degree < m:
        return "degenerate-degree", 0
    if xi_(Fraction(1)) == 0 or xi_(Fraction(-1)) == 0:
        return "boundary-root", 0
    nroots = count_real_roots(xi_, -1, 1)
    return ("interior-zero" if nroots else "admissible"), nroots


def admissible(prm: XmParams) -> Admissibility:
    """Classify (alpha, beta, m) by closed-form inequalities, cross-checked by Sturm counting."""
    a, b, m = prm.alpha, prm.beta, prm.m
    xi_ = denominator(prm)
    ends = (xi_(Fraction(-1)), xi_(Fraction(1)))
    if a <= -1 or b <= -1:
        return Admissibility("out-of-range", ("alpha, beta > -1 required",), xi_.degree, 0, ends)
    verdict, reasons = _verdict_by_inequalities(a, b, m)
    by_roots, nroots = _verdict_by_roots(xi_, m)
    if verdict != by_roots:
        raise AdmissibilityMismatch(f"{prm}: inequalities say {verdict}, root count says {by_roots}")
    if verdict == "interior-zero":
        reasons = reasons + [f"{nroots} root(s) of {xi_} in (-1, 1)"]
    return Admissibility(verdict, tuple(reasons), xi_.degree, nroots, ends)


def _check(prm: XmParams):
    v = admissible(prm)
    if v.verdict not in ("admissible", "degenerate-degree"):
        raise ParameterError(f"inadmissible parameters {prm}: {v.verdict}; " + "; ".join(v.reasons))


# -- the factorization chain ----------------------------------------------------------


def intertwiner_A(alpha, beta, m: int) -> FirstOrderOp:
    """A_{a,b,m}(y) = (1 - x) xi_{a,b,m} y' + (m - a) xi_{a+1,b+1,m} y, as a FirstOrderOp."""
    a, b = as_rat(alpha), as_rat(beta)
    g = (ONE - X) * xi(a, b, m)
    return FirstOrderOp(g, RationalFunc(xi(a + 1, b + 1, m) * (a - m), g))


def intertwiner_B(alpha, beta, m: int) -> FirstOrderOp:
    """B_{a,b,m}(y) = ((1 + x) y' + (1 + b) y) / xi_{a,b,m}."""
    a, b = as_rat(alpha), as_rat(beta)
    return FirstOrderOp(RationalFunc(ONE + X, xi(a, b, m)), RationalFunc(RationalPoly([-(1 + b)]), ONE + X))


def apply_A(alpha, beta, m: int, y: RationalPoly) -> RationalPoly:
    a, b = as_rat(alpha), as_rat(beta)
    return (ONE - X) * xi(a, b, m) * y.derivative() + xi(a + 1, b + 1, m) * y * (m - a)


def classical_factorization(alpha, beta, m: int) -> FactorizationData:
    """T_{alpha,beta} = B o A + (alpha - m)(beta + m + 1) with phi = (1 - x)^(-alpha) xi."""
    a, b = as_rat(alpha), as_rat(beta)
    seed = quasi_rational_seeds(a, b, m)[2]
    return factorize(classical_jacobi_op(a, b), seed.phi, (ONE - X) * xi(a, b, m), seed.eigenvalue)


@lru_cache(maxsize=256)
def _xm_operator(prm: XmParams) -> DiffOp2:
    return classical_factorization(prm.alpha + 1, prm.beta - 1, prm.m).partner


def xm_operator(prm: XmParams) -> DiffOp2:
    """T_{alpha,beta,m} = A o B + lambda0, the partner of the classical (alpha+1, beta-1) factorization."""
    return _xm_operator(prm)


def xm_displayed_operator(prm: XmParams) -> DiffOp2:
    """T_{alpha,beta}(y) - 2 rho_{alpha+1,beta-1,m} ((1 - x^2) y' + beta (1 - x) y) + m (alpha - beta - m + 1) y."""
    a, b, m = prm.alpha, prm.beta, prm.m
    r = rho(a + 1, b - 1, m)
    return classical_jacobi_op(a, b) + DiffOp2(
        RationalFunc.const(0), r * (ONE - X * X) * -2, r * (ONE - X) * (-2 * b) + m * (a - b - m + 1)
    )


def xm_eigenvalue(prm: XmParams, n: int) -> Fraction:
    j = n - prm.m
    return -j * (1 + prm.alpha + prm.beta + j)


def xm_value_at_1(prm: XmParams, n: int) -> Fraction:
    return gen_binomial(prm.alpha + n - prm.m, n) * math.comb(n, prm.m)


@lru_cache(maxsize=4096)
def _xm_poly(prm: XmParams, n: int) -> RationalPoly:
    a, b, m = prm.alpha, prm.beta, prm.m
    j = n - m
    den = a + 1 + j
    if den == 0:
        raise ParameterError(f"alpha + 1 + n - m = 0 at n = {n}")
    y = apply_A(a + 1, b - 1, m, jacobi(j, a + 1, b - 1))
    return y * (Fraction((-1) ** (m + 1)) / den)


def xm_poly(prm: XmParams, n: int, *, check: bool = True) -> RationalPoly:
    """Xm-Jacobi polynomial of degree n >= m (index n, eigenvalue -(n-m)(1+alpha+beta+n-m))."""
    if n < prm.m:
        raise ParameterError(f"n >= m = {prm.m} required")
    if check:
        _check(prm)
    return _xm_poly(prm, n)


def xm_flag(prm: XmParams) -> Flag:
    return Flag(lambda k: xm_poly(prm, prm.m + k - 1, check=False), f"X{prm.m}-Jacobi")


def xm_weight(prm: XmParams) -> QuasiRational:
    """(1 - x)^alpha (1 + x)^beta / xi_{alpha+1,beta-1,m}^2 on (-1, 1)."""
    return QuasiRational.jacobi_weight(prm.alpha, prm.beta) * RationalFunc(ONE, denominator(prm) ** 2)


def xm_norm_factor(prm: XmParams, n: int) -> Fraction:
    """(1 + alpha + j - m)(beta + m + j)/(alpha + 1 + j)^2, j = n - m."""
    a, b, m = prm.alpha, prm.beta, prm.m
    j = n - m
    return (1 + a + j - m) * (b + m + j) / (a + 1 + j) ** 2


def xm_norm(prm: XmParams, n: int) -> float:
    """Squared norm of xm_poly(prm, n) under xm_weight(prm)."""
    j = n - prm.m
    return float(xm_norm_factor(prm, n)) * norm_formula(j, prm.alpha + 1, prm.beta - 1)


def xm_norm_ratio_to_classical(prm: XmParams, n: int) -> Fraction:
    """xm_norm / N^{alpha,beta}_{n-m} exactly."""
    j = n - prm.m
    return xm_norm_factor(prm, n) * classical_norm_ratio(j, (prm.alpha + 1, prm.beta - 1), (prm.alpha, prm.beta))


# -- shape invariance ---------------------------------------------------------------


def lowering_op(prm: XmParams) -> FirstOrderOp:
    """(xi_{a+2,b,m}/xi_{a+1,b-1,m}) (y' - rho_{a+2,b,m} y): lowers index n -> n-1, params +1."""
    a, b, m = prm.alpha, prm.beta, prm.m
    return FirstOrderOp(RationalFunc(xi(a + 2, b, m), xi(a + 1, b - 1, m)), rho(a + 2, b, m))


def raising_op(prm: XmParams) -> FirstOrderOp:
    """(1 - x^2)(xi_{a+1,b-1,m}/xi_{a+2,b,m}) (y' - (rho_{a+1,b-1,m} + (a+1)/(1-x) - (b+1)/(1+x)) y)."""
    a, b, m = prm.alpha, prm.beta, prm.m
    gauge = RationalFunc((ONE - X * X) * xi(a + 1, b - 1, m), xi(a + 2, b, m))
    w = rho(a + 1, b - 1, m) + RationalFunc(RationalPoly([a + 1]), ONE - X) - RationalFunc(RationalPoly([b + 1]), ONE + X)
    return FirstOrderOp(gauge, w)


def _as_poly(f: RationalFunc) -> RationalPoly:
    if not f.is_polynomial():
        raise ValueError(f"ladder image {f} is not a polynomial")
    return f.as_poly()


def xm_lower(prm: XmParams, y: RationalPoly) -> RationalPoly:
    return _as_poly(lowering_op(prm).apply(y))


def xm_raise(prm: XmParams, y: RationalPoly) -> RationalPoly:
    """Raising step from parameters (alpha+1, beta+1) back to (alpha, beta)."""
    return _as_poly(raising_op(prm).apply(y))


def shape_invariant_factorization(prm: XmParams) -> FactorizationData:
    """T_{a,b,m} = B o A with phi = xi_{a+2,b,m}, b = xi_{a+2,b,m}/xi_{a+1,b-1,m}, lambda0 = 0."""
    a, b, m = prm.alpha, prm.beta, prm.m
    phi = QuasiRational.from_rational(xi(a + 2, b, m))
    return factorize(xm_operator(prm), phi, RationalFunc(xi(a + 2, b, m), xi(a + 1, b - 1, m)), 0)


def shape_invariance(prm: XmParams) -> tuple[DiffOp2, DiffOp2]:
    """(B o A, A o B + alpha + beta + 2) for the ladder pair; they should equal
    T_{alpha,beta,m} and T_{alpha+1,beta+1,m}."""
    A, B = lowering_op(prm), raising_op(prm)
    return B @ A, (A @ B) + (prm.alpha + prm.beta + 2)


# -- divisibility characterization of the flag ------------------------------------


def divisibility_residual(prm: XmParams, y: RationalPoly) -> RationalPoly:
    """((1 + x) y' + beta y) mod xi_{alpha+1,beta-1,m}; zero exactly on the Xm flag."""
    return ((ONE + X) * y.derivative() + y * prm.beta) % denominator(prm)


def divisibility_basis(prm: XmParams, n_max: int) -> list[RationalPoly]:
    """A degree-increasing basis of {y in P_{n_max} : divisibility_residual(y) = 0}, built
    independently of the factorization (exact kernel computation)."""
    cols = []
    for j in range(n_max + 1):
        r = divisibility_residual(prm, RationalPoly.monomial(j))
        cols.append(r)
    rows = max([c.degree for c in cols] + [0]) + 1
    mat = [[c.coeff(i) for c in cols] for i in range(rows)]
    pool = [list(v) for v in nullspace(mat, n_max + 1)]
    out: list[RationalPoly] = []
    # eliminate from the top degree down, so each pivot vector has its own degree
    for c in range(n_max, -1, -1):
        piv = next((v for v in pool if v[c] != 0), None)
        if piv is None:
            continue
        pool = [v for v in pool if v is not piv]
        pool = [[a - b * (v[c] / piv[c]) for a, b in zip(v, piv)] for v in pool]
        out.append(RationalPoly(piv))
    return sorted(out, key=lambda p: p.degree)

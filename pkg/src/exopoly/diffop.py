"""Second-order operators T(y) = p y'' + q y' + r y with rational coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from .quasirational import QuasiRational, from_log_derivative
from .ratpoly import (
    ONE,
    X,
    RationalFunc,
    RationalPoly,
    as_func,
    as_rat,
    count_real_roots,
    factor_rational,
    nullspace,
    poly_gcd,
    solve_linear,
    wronskian3,
)


class DecompositionError(ValueError):
    pass


class SingularSystemError(ValueError):
    pass


class ShapeError(ValueError):
    pass


def _lcm(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    return (a * b).exact_div(poly_gcd(a, b)).monic()


@dataclass(frozen=True, eq=False)
class DiffOp2:
    p: RationalFunc
    q: RationalFunc
    r: RationalFunc

    def __post_init__(self):
        for name in ("p", "q", "r"):
            object.__setattr__(self, name, as_func(getattr(self, name)))

    @classmethod
    def zero(cls) -> "DiffOp2":
        return cls(RationalFunc.const(0), RationalFunc.const(0), RationalFunc.const(0))

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero() and self.r.is_zero()

    @cached_property
    def common_form(self) -> tuple[RationalPoly, RationalPoly, RationalPoly, RationalPoly]:
        """(D, N2, N1, N0) with T(y) = (N2 y'' + N1 y' + N0 y) / D."""
        d = _lcm(_lcm(self.p.den, self.q.den), self.r.den)
        return (
            d,
            self.p.num * d.exact_div(self.p.den),
            self.q.num * d.exact_div(self.q.den),
            self.r.num * d.exact_div(self.r.den),
        )

    def apply(self, y) -> RationalFunc:
        if isinstance(y, RationalFunc):
            d1 = y.derivative()
            return self.p * d1.derivative() + self.q * d1 + self.r * y
        y = _as_poly(y)
        d, n2, n1, n0 = self.common_form
        return RationalFunc(n2 * y.derivative(2) + n1 * y.derivative() + n0 * y, d)

    __call__ = apply

    def apply_numerator(self, y: RationalPoly) -> RationalPoly:
        """D * T(y), a polynomial; cheap residual checks avoid the gcd."""
        _, n2, n1, n0 = self.common_form
        return n2 * y.derivative(2) + n1 * y.derivative() + n0 * y

    def eigen_ratio(self, phi: QuasiRational) -> RationalFunc:
        """T(phi)/phi as a rational function."""
        w = phi.log_derivative()
        return self.p * (w.derivative() + w * w) + self.q * w + self.r

    # -- algebra ------------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, DiffOp2):
            return DiffOp2(self.p + other.p, self.q + other.q, self.r + other.r)
        return DiffOp2(self.p, self.q, self.r + as_func(other))

    __radd__ = __add__

    def __neg__(self):
        return DiffOp2(-self.p, -self.q, -self.r)

    def __sub__(self, other):
        if isinstance(other, DiffOp2):
            return self + (-other)
        return self + (-as_func(other))

    def __mul__(self, c):
        """Left multiplication by a scalar or rational function."""
        c = as_func(c)
        return DiffOp2(c * self.p, c * self.q, c * self.r)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DiffOp2):
            return NotImplemented
        return self.p == other.p and self.q == other.q and self.r == other.r

    def __hash__(self):
        return hash((self.p, self.q, self.r))

    def affine_substitute(self, s, t) -> "DiffOp2":
        """The same operator written in x when its own variable is X = s*x + t."""
        s, t = as_rat(s), as_rat(t)
        return DiffOp2(
            self.p.compose_affine(s, t) * (1 / (s * s)),
            self.q.compose_affine(s, t) * (1 / s),
            self.r.compose_affine(s, t),
        )

    def is_polynomial(self) -> bool:
        return self.p.is_polynomial() and self.q.is_polynomial() and self.r.is_polynomial()

    def asymptotic_symbol(self) -> tuple[Fraction, Fraction, Fraction]:
        """(lim p/x^2, lim q/x, lim r); finite iff T does not raise degree."""
        return self.p.limit_coeff(2), self.q.limit_coeff(1), self.r.limit_coeff(0)

    def __repr__(self):
        return f"DiffOp2(p={self.p}, q={self.q}, r={self.r})"


def _as_poly(y) -> RationalPoly:
    if isinstance(y, RationalPoly):
        return y
    if isinstance(y, (int, Fraction)):
        return RationalPoly.const(y)
    raise TypeError(f"expected a polynomial, got {y!r}")


def apply(T: DiffOp2, y) -> RationalFunc:
    return T.apply(y)


@dataclass(frozen=True, eq=False)
class FirstOrderOp:
    """A(y) = gauge * (y' - logderiv * y)."""

    gauge: RationalFunc
    logderiv: RationalFunc

    def __post_init__(self):
        object.__setattr__(self, "gauge", as_func(self.gauge))
        object.__setattr__(self, "logderiv", as_func(self.logderiv))
        if self.gauge.is_zero():
            raise ValueError("first-order operator with zero gauge")

    def apply(self, y) -> RationalFunc:
        y = as_func(y)
        return self.gauge * (y.derivative() - self.logderiv * y)

    __call__ = apply

    def __matmul__(self, inner: "FirstOrderOp") -> DiffOp2:
        """self o inner as a second-order operator."""
        b, w = inner.gauge, inner.logderiv
        bh, wh = self.gauge, self.logderiv
        db = b.derivative()
        return DiffOp2(
            bh * b,
            bh * (db - b * (w + wh)),
            bh * (wh * b * w - db * w - b * w.derivative()),
        )

    def __eq__(self, other):
        if not isinstance(other, FirstOrderOp):
            return NotImplemented
        return self.gauge == other.gauge and self.logderiv == other.logderiv

    def __hash__(self):
        return hash((self.gauge, self.logderiv))


# -- poles ------------------------------------------------------------------------


@dataclass(frozen=True)
class Pole:
    factor: RationalPoly
    real_roots: int

    @property
    def location(self) -> Fraction | None:
        return -self.factor.coeff(0) if self.factor.degree == 1 else None

    @property
    def is_real(self) -> bool:
        return self.real_roots > 0


def is_polynomial_operator(T: DiffOp2) -> bool:
    return T.is_polynomial()


def poles(T: DiffOp2) -> list[Pole]:
    """Denominator factors of the reduced coefficients.

    Linear factors are split off at rational points; other factors are
    squarefree cofactors with their count of distinct real roots, so
    complex-conjugate pairs show up with ``real_roots == 0``.
    """
    d = T.common_form[0]
    if d.degree <= 0:
        return []
    _, factors = factor_rational(d)
    out = [Pole(f, count_real_roots(f)) for f, _ in factors]
    return sorted(out, key=lambda pl: (pl.factor.degree, pl.factor.coeffs))


def real_pole_count(T: DiffOp2) -> int:
    return sum(pl.real_roots for pl in poles(T))


# -- degree-homogeneous decomposition ------------------------------------------------


@dataclass(frozen=True)
class DegreeHomogeneousTerm:
    """x^d (alpha x^2 y'' + beta x y' + gamma y)."""

    d: int
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def monomial_factor(self, j: int) -> Fraction:
        return j * (j - 1) * self.alpha + j * self.beta + self.gamma

    def act_on_monomial(self, j: int) -> tuple[Fraction, int]:
        return self.monomial_factor(j), j + self.d

    def as_operator(self) -> DiffOp2:
        return DiffOp2(
            _laurent_monomial(self.alpha, self.d + 2),
            _laurent_monomial(self.beta, self.d + 1),
            _laurent_monomial(self.gamma, self.d),
        )


def _laurent_monomial(c: Fraction, e: int) -> RationalFunc:
    if e >= 0:
        return RationalFunc(RationalPoly.monomial(e, c))
    return RationalFunc(RationalPoly.const(c), RationalPoly.monomial(-e))


def _laurent_coeffs(f: RationalFunc) -> dict[int, Fraction]:
    den = f.den
    k = den.degree
    if den != RationalPoly.monomial(k):
        raise DecompositionError(f"denominator {den} is not a power of x")
    return {i - k: c for i, c in enumerate(f.num.coeffs) if c != 0}


def degree_decomposition(T: DiffOp2) -> list[DegreeHomogeneousTerm]:
    cp, cq, cr = (_laurent_coeffs(f) for f in (T.p, T.q, T.r))
    ds = {e - 2 for e in cp} | {e - 1 for e in cq} | set(cr)
    return [
        DegreeHomogeneousTerm(
            d,
            cp.get(d + 2, Fraction(0)),
            cq.get(d + 1, Fraction(0)),
            cr.get(d, Fraction(0)),
        )
        for d in sorted(ds)
    ]


def operator_from_terms(terms: Sequence[DegreeHomogeneousTerm]) -> DiffOp2:
    out = DiffOp2.zero()
    for t in terms:
        out = out + t.as_operator()
    return out


# -- flags -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Flag:
    """Flag U_k = span{basis(1), ..., basis(k)} given by a closed-form generator."""

    basis_gen: Callable[[int], RationalPoly]
    name: str = ""

    def basis(self, k_max: int) -> list[RationalPoly]:
        return [self.basis_gen(k) for k in range(1, k_max + 1)]

    def degree_sequence(self, k_max: int) -> list[int]:
        """n_k = max degree in U_k."""
        out, top = [], -1
        for p in self.basis(k_max):
            top = max(top, p.degree)
            out.append(top)
        return out

    def codimension_sequence(self, k_max: int) -> list[int]:
        return [n + 1 - k for k, n in enumerate(self.degree_sequence(k_max), start=1)]

    def is_degree_regular(self, k_max: int) -> bool:
        degs = [p.degree for p in self.basis(k_max)]
        return all(a < b for a, b in zip(degs, degs[1:]))

    def common_factor(self, k_max: int) -> RationalPoly:
        g = RationalPoly()
        for p in self.basis(k_max):
            g = poly_gcd(g, p)
        return g

    def is_primitive(self, k_max: int) -> bool:
        return self.common_factor(k_max).degree == 0


@dataclass
class FlagCertificate:
    ok: bool
    k_checked: int
    failing_k: int | None = None
    residual: RationalFunc | None = None
    coordinates: list[list[Fraction]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def coordinates_in(basis: Sequence[RationalPoly], target: RationalPoly) -> tuple[list[Fraction] | None, RationalPoly]:
    """Solve target = sum c_i basis_i exactly; returns (coords or None, residual)."""
    top = max([target.degree] + [b.degree for b in basis])
    if top < 0:
        return [Fraction(0)] * len(basis), RationalPoly()
    mat = [[b.coeff(i) for b in basis] for i in range(top + 1)]
    rhs = [target.coeff(i) for i in range(top + 1)]
    sol = solve_linear(mat, rhs)
    if sol is None:
        # least-effort residual: reduce by leading terms where possible
        res = target
        for b in sorted(basis, key=lambda b: -b.degree):
            if res.degree == b.degree and b.degree >= 0:
                res = res - b * (res.lc / b.lc)
        return None, res
    return sol, RationalPoly()


def preserves_flag(T: DiffOp2, F: Flag, k_max: int = 12) -> FlagCertificate:
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    basis = F.basis(k_max)
    coords = []
    for k in range(1, k_max + 1):
        img = T.apply(basis[k - 1])
        if not img.is_polynomial():
            return FlagCertificate(False, k, k, img, coords)
        c, res = coordinates_in(basis[:k], img.num)
        if c is None:
            return FlagCertificate(False, k, k, RationalFunc(res), coords)
        coords.append(c)
    return FlagCertificate(True, k_max, None, None, coords)


def flag_matrix(T: DiffOp2, F: Flag, n: int) -> list[list[Fraction]]:
    """Upper-triangular matrix of T restricted to U_n (column k = coords of T(basis_k))."""
    cert = preserves_flag(T, F, n)
    if not cert:
        raise ValueError(f"operator does not preserve flag {F.name!r} at k={cert.failing_k}")
    return [[(cert.coordinates[j][i] if i <= j else Fraction(0)) for j in range(n)] for i in range(n)]


# -- Cramer reconstruction and gauge ----------------------------------------------------


def _det3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def reconstruct_operator(ys: Sequence[RationalPoly], gs: Sequence[RationalPoly]) -> DiffOp2:
    """The unique T with T(y_i) = g_i, i = 1, 2, 3."""
    if len(ys) != 3 or len(gs) != 3:
        raise ValueError("need three polynomials and three images")
    if wronskian3(*ys).is_zero():
        raise SingularSystemError("inputs are linearly dependent (zero Wronskian)")
    rows = [[y.derivative(2), y.derivative(), y] for y in ys]
    w = _det3(rows)
    coeffs = []
    for col in range(3):
        m = [list(r) for r in rows]
        for i in range(3):
            m[i][col] = _as_poly(gs[i])
        coeffs.append(RationalFunc(_det3(m), w))
    return DiffOp2(*coeffs)


def gauge_transform(T: DiffOp2, g) -> DiffOp2:
    """g T g^{-1}: the operator y -> g * T(y / g)."""
    g = as_func(g)
    if g.is_zero():
        raise ValueError("gauge factor must be nonzero")
    h = g.inverse()
    l1 = h.derivative() * g
    l2 = h.derivative().derivative() * g
    return DiffOp2(T.p, T.q + 2 * T.p * l1, T.p * l2 + T.q * l1 + T.r)


# -- Sturm-Liouville data -------------------------------------------------------------


@dataclass(frozen=True)
class PSLPData:
    """P, W, R of the self-adjoint form; ``sign`` = -1 means the data is for -T.

    R is None when r vanishes identically (QuasiRational has no zero).
    """

    P: QuasiRational
    W: QuasiRational
    R: QuasiRational | None
    interval: tuple
    sign: int = 1

    def sample_points(self, n: int = 64) -> list[float]:
        lo, hi = self.interval
        lo = float(lo)
        if hi is None or math.isinf(float(hi)):
            return [lo + 0.05 + 0.5 * i for i in range(n)]
        h = (float(hi) - lo) / (n + 1)
        return [lo + h * (i + 1) for i in range(n)]

    def is_positive(self, n: int = 64) -> bool:
        pts = self.sample_points(n)
        return all(self.W(t) > 0 and self.P(t) > 0 for t in pts)


def _interior_point(interval) -> Fraction:
    lo, hi = interval
    if hi is None or (isinstance(hi, float) and math.isinf(hi)):
        return as_rat(lo) + 1
    return (as_rat(lo) + as_rat(hi)) / 2


def pslp_data(T: DiffOp2, interval) -> PSLPData:
    """P = exp(int q/p), W = P/p, R = -r W, oriented to be positive on the interval."""
    P = from_log_derivative(T.q / T.p, interval)
    sign = 1 if T.p(_interior_point(interval)) > 0 else -1
    W = P / (T.p * sign)
    R = None if T.r.is_zero() else W * (-T.r * sign)
    return PSLPData(P, W, R, interval, sign)


def green_residual(T: DiffOp2, f: RationalPoly, g: RationalPoly) -> RationalFunc:
    """W (T(f) g - f T(g)) - (P (f' g - f g'))', divided by P; zero for every T.

    Integrating the unreduced identity over (x1, x2) gives the symmetric Green's formula.
    """
    f, g = _as_poly(f), _as_poly(g)
    wr = RationalFunc(f.derivative() * g - f * g.derivative())
    lhs = (T.apply(f) * g - T.apply(g) * f) / T.p
    rhs = T.q / T.p * wr + wr.derivative()
    return lhs - rhs


# -- order-reduced bases ----------------------------------------------------------------


@dataclass(frozen=True)
class OrderReducedBasis:
    n: int
    gap: int
    corrections: tuple[Fraction, ...]

    def basis(self) -> list[RationalPoly]:
        out = [
            RationalPoly.monomial(j) + RationalPoly.monomial(self.gap, a)
            for j, a in enumerate(self.corrections)
        ]
        out += [RationalPoly.monomial(j) for j in range(self.gap + 1, self.n + 1)]
        return out


def order_reduced_basis(subspace: Sequence[RationalPoly], n: int) -> OrderReducedBasis:
    """Row-reduce a codimension-1 subspace of P_n to x^j + a_j x^gap (j < gap), x^j (j > gap)."""
    rows = [[p.coeff(i) for i in range(n + 1)] for p in subspace]
    if any(p.degree > n for p in subspace):
        raise ShapeError("element of degree > n")
    pivots: list[int] = []
    r = 0
    for c in range(n + 1):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if len(pivots) != n:
        raise ShapeError(f"subspace has codimension {n + 1 - len(pivots)} in P_{n}, expected 1")
    gap = next(c for c in range(n + 1) if c not in pivots)
    corrections = tuple(rows[i][gap] for i, c in enumerate(pivots) if c < gap)
    return OrderReducedBasis(n, gap, corrections)


# -- polynomial eigenfunctions ------------------------------------------------------


@dataclass(frozen=True)
class EigenPoly:
    degree: int
    eigenvalue: Fraction
    poly: RationalPoly
    multiplicity: int = 1


def eigenvalue_at_degree(T: DiffOp2, d: int) -> Fraction:
    a, b, c = T.asymptotic_symbol()
    return d * (d - 1) * a + d * b + c


def eigenpolynomials(T: DiffOp2, max_degree: int) -> list[EigenPoly]:
    """Polynomial solutions of T(y) = lambda y of each exact degree <= max_degree.

    The eigenvalue for degree d is forced by the behaviour of T at infinity,
    so each degree reduces to an exact nullspace computation.
    """
    d_den, n2, n1, n0 = T.common_form
    out = []
    for d in range(max_degree + 1):
        lam = eigenvalue_at_degree(T, d)
        cols = []
        for j in range(d + 1):
            m = RationalPoly.monomial(j)
            cols.append(n2 * m.derivative(2) + n1 * m.derivative() + n0 * m - d_den * m * lam)
        top = max([c.degree for c in cols] + [0])
        mat = [[c.coeff(i) for c in cols] for i in range(top + 1)]
        ns = nullspace(mat, d + 1)
        tops = [v for v in ns if v[d] != 0]
        if not tops:
            continue
        y = RationalPoly(tops[0])
        out.append(EigenPoly(d, lam, y.monic(), len(ns)))
    return out


def lowest_eigenpolynomial(T: DiffOp2, max_degree: int = 12) -> EigenPoly | None:
    eps = eigenpolynomials(T, max_degree)
    return eps[0] if eps else None


__all__ = [
    "DiffOp2",
    "FirstOrderOp",
    "DegreeHomogeneousTerm",
    "PSLPData",
    "Flag",
    "FlagCertificate",
    "OrderReducedBasis",
    "EigenPoly",
    "Pole",
    "apply",
    "is_polynomial_operator",
    "poles",
    "real_pole_count",
    "degree_decomposition",
    "operator_from_terms",
    "preserves_flag",
    "flag_matrix",
    "coordinates_in",
    "reconstruct_operator",
    "gauge_transform",
    "pslp_data",
    "order_reduced_basis",
    "eigenpolynomials",
    "eigenvalue_at_degree",
    "lowest_eigenpolynomial",
    "DecompositionError",
    "SingularSystemError",
    "ShapeError",
    "ONE",
    "X",
]

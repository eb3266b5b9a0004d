"""Quasi-rational functions: C * prod(oriented linear factor)^e * exp(s(x)) * R(x).

These hold weights, integrating factors and factorization eigenfunctions,
i.e. functions whose logarithmic derivative is rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.typing import ArrayLike

from .ratpoly import (
    ONE,
    RationalFunc,
    RationalPoly,
    as_func,
    as_rat,
    factor_rational,
    poly_gcd,
)


class RepresentationError(ValueError):
    """A rational function has no quasi-rational antiderivative of the supported shape."""


class DomainError(ValueError):
    """Evaluation at a singular or sign-invalid point."""


@dataclass(frozen=True)
class PowerFactor:
    """(x - root)^exponent if orientation is +1, (root - x)^exponent if -1."""

    root: Fraction
    exponent: Fraction
    orientation: int = 1

    def base(self, x):
        return (x - float(self.root)) if self.orientation > 0 else (float(self.root) - x)


@dataclass(frozen=True)
class QuasiRational:
    constant: Fraction = Fraction(1)
    power_factors: tuple[PowerFactor, ...] = ()
    exp_part: RationalPoly = field(default_factory=RationalPoly)
    rational_part: RationalFunc = field(default_factory=lambda: RationalFunc.const(1))

    def __post_init__(self):
        roots = [pf.root for pf in self.power_factors]
        if len(set(roots)) != len(roots):
            raise ValueError("power factors must have distinct roots")
        if self.constant == 0:
            raise ValueError("zero is not a quasi-rational function in this representation")

    # -- constructors ---------------------------------------------------------
    @classmethod
    def one(cls) -> "QuasiRational":
        return cls()

    @classmethod
    def from_rational(cls, f) -> "QuasiRational":
        f = as_func(f)
        return cls(rational_part=f)

    @classmethod
    def jacobi_weight(cls, alpha, beta) -> "QuasiRational":
        """(1 - x)^alpha (1 + x)^beta."""
        return cls(
            power_factors=_clean(
                [PowerFactor(Fraction(1), as_rat(alpha), -1), PowerFactor(Fraction(-1), as_rat(beta), 1)]
            )
        )

    # -- algebra ----------------------------------------------------------------
    def __mul__(self, other) -> "QuasiRational":
        if isinstance(other, (int, Fraction, RationalPoly, RationalFunc)):
            other = QuasiRational.from_rational(other)
        const = self.constant * other.constant
        merged: dict[Fraction, PowerFactor] = {pf.root: pf for pf in self.power_factors}
        for pf in other.power_factors:
            if pf.root not in merged:
                merged[pf.root] = pf
                continue
            cur = merged[pf.root]
            if cur.orientation == pf.orientation:
                merged[pf.root] = PowerFactor(pf.root, cur.exponent + pf.exponent, cur.orientation)
            elif pf.exponent.denominator == 1:
                # (root - x)^e = (-1)^e (x - root)^e for integer e
                const *= (-1) ** int(pf.exponent)
                merged[pf.root] = PowerFactor(pf.root, cur.exponent + pf.exponent, cur.orientation)
            elif cur.exponent.denominator == 1:
                const *= (-1) ** int(cur.exponent)
                merged[pf.root] = PowerFactor(pf.root, cur.exponent + pf.exponent, pf.orientation)
            else:
                raise RepresentationError(
                    f"cannot merge (x-{pf.root}) factors with opposite orientations and fractional exponents"
                )
        return _absorb(const, merged.values(), self.exp_part + other.exp_part, self.rational_part * other.rational_part)

    __rmul__ = __mul__

    def inverse(self) -> "QuasiRational":
        return QuasiRational(
            1 / self.constant,
            tuple(PowerFactor(pf.root, -pf.exponent, pf.orientation) for pf in self.power_factors),
            -self.exp_part,
            self.rational_part.inverse(),
        )

    def __truediv__(self, other) -> "QuasiRational":
        if isinstance(other, (int, Fraction, RationalPoly, RationalFunc)):
            other = QuasiRational.from_rational(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QuasiRational":
        return QuasiRational.from_rational(other) * self.inverse()

    def scaled(self, c) -> "QuasiRational":
        return QuasiRational(self.constant * as_rat(c), self.power_factors, self.exp_part, self.rational_part)

    # -- structure ---------------------------------------------------------------
    def log_derivative(self) -> RationalFunc:
        out = RationalFunc.const(0)
        for pf in self.power_factors:
            out = out + RationalFunc(RationalPoly([pf.exponent]), RationalPoly([-pf.root, 1]))
        out = out + self.exp_part.derivative()
        rp = self.rational_part
        out = out + RationalFunc(rp.num.derivative(), rp.num) + RationalFunc(-rp.den.derivative(), rp.den)
        return out

    def rationalized(self) -> "QuasiRational":
        """Fold integer-exponent power factors into the rational part."""
        keep, rat = [], RationalFunc.const(self.constant)
        for pf in self.power_factors:
            if pf.exponent.denominator == 1:
                lin = RationalPoly([-pf.root, 1]) if pf.orientation > 0 else RationalPoly([pf.root, -1])
                rat = rat * RationalFunc(lin) ** int(pf.exponent)
            else:
                keep.append(pf)
        rat = rat * self.rational_part
        c = rat.num.lc if not rat.is_zero() else Fraction(1)
        return QuasiRational(c, tuple(keep), self.exp_part, rat * (1 / c))

    def as_rational(self) -> RationalFunc | None:
        """The function as a RationalFunc when it is one, else None."""
        r = self.rationalized()
        if r.power_factors or not r.exp_part.is_zero():
            return None
        return r.rational_part * r.constant

    def as_polynomial(self) -> RationalPoly | None:
        f = self.as_rational()
        if f is None or not f.is_polynomial():
            return None
        return f.num

    def is_polynomial(self) -> bool:
        return self.as_polynomial() is not None

    def equals_up_to_constant(self, other: "QuasiRational") -> bool:
        return self.log_derivative() == other.log_derivative()

    def ratio_to(self, other: "QuasiRational") -> Fraction:
        """self / other when the two agree up to a rational constant."""
        if not self.equals_up_to_constant(other):
            raise ValueError("functions are not proportional")
        q = (self / other).as_rational()
        if q is None or not q.is_constant():
            raise ValueError("ratio is not a rational constant")
        return q.num.coeff(0)

    # -- evaluation -------------------------------------------------------------
    def __call__(self, x: ArrayLike):
        xs = np.asarray(x, dtype=float)
        out = np.full(xs.shape, float(self.constant))
        for pf in self.power_factors:
            base = pf.base(xs)
            e = pf.exponent
            if np.any(base == 0) and e < 0:
                raise DomainError(f"singular point x={pf.root}")
            if e.denominator != 1 and np.any(base < 0):
                raise DomainError(f"fractional power of a negative base near x={pf.root}")
            out = out * np.power(base, float(e)) if e.denominator != 1 else out * base ** int(e)
        if not self.exp_part.is_zero():
            out = out * np.exp(self.exp_part(xs))
        den = self.rational_part.den(xs)
        if np.any(den == 0):
            raise DomainError("pole of the rational part")
        out = out * self.rational_part.num(xs) / den
        return out if out.shape else float(out)

    def eval_mp(self, x):
        """Value at a single mpmath point (real result, same domain rules)."""
        import mpmath

        out = mpmath.mpf(self.constant.numerator) / self.constant.denominator
        for pf in self.power_factors:
            r = mpmath.mpf(pf.root.numerator) / pf.root.denominator
            base = x - r if pf.orientation > 0 else r - x
            e = pf.exponent
            if base == 0 and e < 0:
                raise DomainError(f"singular point x={pf.root}")
            if e.denominator != 1:
                if base < 0:
                    raise DomainError(f"fractional power of a negative base near x={pf.root}")
                out *= mpmath.power(base, mpmath.mpf(e.numerator) / e.denominator)
            else:
                out *= base ** int(e)
        if not self.exp_part.is_zero():
            out *= mpmath.exp(self.exp_part.eval_mp(x))
        den = self.rational_part.den.eval_mp(x)
        if den == 0:
            raise DomainError("pole of the rational part")
        return out * self.rational_part.num.eval_mp(x) / den

    def __str__(self):
        parts = [] if self.constant == 1 else [str(self.constant)]
        for pf in self.power_factors:
            if pf.orientation > 0:
                base = "x" if pf.root == 0 else f"(x {'-' if pf.root > 0 else '+'} {abs(pf.root)})"
            else:
                base = f"({pf.root} - x)"
            parts.append(f"{base}^({pf.exponent})")
        if not self.exp_part.is_zero():
            parts.append(f"exp({self.exp_part})")
        if self.rational_part != RationalFunc.const(1):
            parts.append(f"[{self.rational_part}]")
        return " * ".join(parts) if parts else "1"


def _absorb(const, factors, exp_part, rational: RationalFunc) -> QuasiRational:
    """Move linear factors of the rational part into power factors at the same root."""
    out = []
    num, den = rational.num, rational.den
    for pf in factors:
        lin = RationalPoly([-pf.root, 1])
        e = pf.exponent
        for sign, attr in ((1, "num"), (-1, "den")):
            while True:
                poly_ = num if attr == "num" else den
                q, r = poly_.divmod(lin)
                if not r.is_zero() or poly_.degree < 1:
                    break
                if attr == "num":
                    num = q
                else:
                    den = q
                e += sign
                if pf.orientation < 0:
                    const = -const  # x - r = -(r - x)
        out.append(PowerFactor(pf.root, e, pf.orientation))
    lc = num.lc
    return QuasiRational(const * lc, _clean(out), exp_part, RationalFunc(num * (1 / lc), den))


def _clean(factors) -> tuple[PowerFactor, ...]:
    return tuple(sorted((pf for pf in factors if pf.exponent != 0), key=lambda pf: pf.root))


def from_log_derivative(w, interval: tuple | None = None) -> QuasiRational:
    """Return phi with phi'/phi = w and unit constant.

    Every finite pole of w must be simple.  Poles at rational points become
    power factors; the remaining squarefree cofactors must carry one integer
    residue each and go into the rational part.  When ``interval`` is given,
    linear factors are oriented to be positive on it.
    """
    w = as_func(w)
    if w.is_zero():
        return QuasiRational()
    quot, rem = w.num.divmod(w.den)
    exp_part = quot.antiderivative()
    if rem.is_zero():
        return QuasiRational(exp_part=exp_part)
    den = w.den
    if poly_gcd(den, den.derivative()).degree > 0:
        raise RepresentationError(f"higher-order pole in {w}")
    _, factors = factor_rational(den)
    pfs: list[PowerFactor] = []
    rational = RationalFunc.const(1)
    for f, _e in factors:
        cof = den.exact_div(f)
        # numerator of the partial fraction over f: N_f = rem * cof^{-1} mod f
        inv = _mod_inverse(cof % f, f)
        nf = (rem * inv) % f
        if f.degree == 1:
            root = -f.coeff(0)
            res = nf.coeff(0)
            pfs.append(PowerFactor(root, res, _orientation(root, interval)))
            continue
        # residues equal c at all roots of f iff N_f = c f' mod f
        fp = f.derivative() % f
        c = nf.lc / fp.lc if nf.degree == fp.degree else None
        if c is None or nf != fp * c:
            raise RepresentationError(f"pole set {f} carries non-constant residues in {w}")
        if c.denominator != 1:
            raise RepresentationError(f"non-integer residue {c} at the roots of {f}")
        rational = rational * RationalFunc(f) ** int(c)
    return QuasiRational(Fraction(1), _clean(pfs), exp_part, rational)


def _orientation(root: Fraction, interval) -> int:
    if interval is None:
        return 1
    lo, hi = interval
    if hi is not None and hi != math.inf and root >= as_rat(_ratlike(hi)):
        return -1
    return 1


def _ratlike(v):
    return v if isinstance(v, (int, Fraction)) else Fraction(v).limit_denominator(10**12)


def _mod_inverse(a: RationalPoly, m: RationalPoly) -> RationalPoly:
    """Inverse of a modulo m via extended Euclid (a, m coprime)."""
    r0, r1 = m, a
    s0, s1 = RationalPoly(), ONE
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise RepresentationError("factor is not coprime to its cofactor")
    return s0 * (1 / r0.lc) % m


def log_derivative(f: QuasiRational) -> RationalFunc:
    return f.log_derivative()

"""Exact rational scalars, dense polynomials and rational functions.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Polynomials store ascending coefficients, so ``coeffs[i]``
multiplies ``x**i``.  Everything here is immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]


class DivisibilityError(ArithmeticError):
    """Exact division left a nonzero remainder."""


def as_rat(value) -> Fraction:
    """Convert ints, Fractions and strings like ``"5/4"`` or ``"0.25"`` exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("refusing to convert a float to an exact rational; pass a string")
    return Fraction(value)


def rat_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def gen_binomial(t: Scalar, k: int) -> Fraction:
    """Generalized binomial coefficient t(t-1)...(t-k+1)/k!."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    t = as_rat(t)
    out = Fraction(1)
    for i in range(k):
        out *= t - i
    return out / math.factorial(k)


def pochhammer(t: Scalar, k: int) -> Fraction:
    """Rising factorial (t)_k."""
    t = as_rat(t)
    out = Fraction(1)
    for i in range(k):
        out *= t + i
    return out


class RationalPoly:
    """Dense univariate polynomial over Q."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "RationalPoly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "RationalPoly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "RationalPoly":
        out = cls.const(1)
        for r in roots:
            out = out * cls([-as_rat(r), 1])
        return out

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return RationalPoly(c / lc for c in self.coeffs)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RationalPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly(c * other for c in self.coeffs)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = RationalPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lc
        if self.degree < dq:
            return RationalPoly(), self
        quot = [Fraction(0)] * (self.degree - dq + 1)
        for i in range(self.degree - dq, -1, -1):
            c = rem[i + dq] / lc
            quot[i] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[i + j] -= c * y
        return RationalPoly(quot), RationalPoly(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(_coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(_coerce(other))[1]

    def exact_div(self, other) -> "RationalPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / as_rat(other))
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DivisibilityError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "RationalPoly") -> bool:
        return (other % self).is_zero()

    def derivative(self, k: int = 1) -> "RationalPoly":
        cs = self.coeffs
        for _ in range(k):
            cs = tuple(i * c for i, c in enumerate(cs))[1:]
        return RationalPoly(cs)

    def antiderivative(self) -> "RationalPoly":
        return RationalPoly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def compose(self, inner: "RationalPoly") -> "RationalPoly":
        out = RationalPoly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def compose_affine(self, s: Scalar, t: Scalar) -> "RationalPoly":
        """Return p(s*x + t); requires s != 0."""
        s, t = as_rat(s), as_rat(t)
        if s == 0:
            raise ValueError("affine substitution needs s != 0")
        return self.compose(RationalPoly([t, s]))

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        if isinstance(x, (int, Fraction)):
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def eval_mp(self, x):
        """Horner evaluation with mpmath (or any numeric) arguments, exact coeffs converted once."""
        import mpmath

        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    # -- comparisons ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPoly.const(other)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"RationalPoly({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = rat_str(abs(c))
            if i == 0:
                body = mag
            else:
                xs = "x" if i == 1 else f"x^{i}"
                body = xs if abs(c) == 1 else f"{mag}*{xs}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if self.is_zero():
            return Fraction(1)
        num = reduce(math.gcd, (c.numerator for c in self.coeffs))
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in self.coeffs))
        return Fraction(num, den)

    def integer_coeffs(self) -> list[int]:
        c = self.content()
        return [int(q / c) for q in self.coeffs]


X = RationalPoly([0, 1])
ONE = RationalPoly([1])
ZERO = RationalPoly()


def _coerce(v):
    if isinstance(v, RationalPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return RationalPoly.const(v)
    return NotImplemented


def poly(*coeffs: Scalar) -> RationalPoly:
    """Shorthand: ``poly(c0, c1, c2)`` is c0 + c1 x + c2 x^2."""
    return RationalPoly(coeffs)


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def squarefree_part(p: RationalPoly) -> RationalPoly:
    if p.degree <= 0:
        return p.monic()
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: RationalPoly) -> list[tuple[RationalPoly, int]]:
    """Yun's algorithm: monic pairwise-coprime squarefree factors f_i with multiplicity i."""
    if p.degree <= 0:
        return []
    p = p.monic()
    out = []
    a = poly_gcd(p, p.derivative())
    b = p.exact_div(a)
    c = p.derivative().exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p: RationalPoly) -> list[Fraction]:
    """Distinct rational roots, ascending."""
    if p.degree <= 0:
        return []
    p = squarefree_part(p)
    roots: list[Fraction] = []
    # strip x factor first so the constant term is nonzero
    if p.coeff(0) == 0:
        roots.append(Fraction(0))
        p = p.exact_div(X)
    if p.degree <= 0:
        return sorted(roots)
    ints = p.integer_coeffs()
    lead, const = ints[-1], ints[0]
    cands = set()
    for num in _divisors(const):
        for den in _divisors(lead):
            cands.add(Fraction(num, den))
            cands.add(Fraction(-num, den))
    for r in sorted(cands):
        if p(r) == 0:
            roots.append(r)
    return sorted(roots)


def factor_rational(p: RationalPoly) -> tuple[Fraction, list[tuple[RationalPoly, int]]]:
    """Split p into constant * prod f_i^e_i.

    Linear factors ``x - r`` are separated for every rational root r; the
    remaining factors are squarefree cofactors without rational roots (not
    necessarily irreducible).
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    const = p.lc
    factors: list[tuple[RationalPoly, int]] = []
    for f, e in squarefree_decomposition(p):
        for r in rational_roots(f):
            lin = RationalPoly([-r, 1])
            factors.append((lin, e))
            f = f.exact_div(lin)
        if f.degree > 0:
            factors.append((f.monic(), e))
    return const, factors


def poly_sqrt(p: RationalPoly) -> RationalPoly | None:
    """Exact square root with positive leading coefficient, or None."""
    if p.is_zero():
        return p
    if p.degree % 2 or p.lc < 0:
        return None
    lc = p.lc
    rn, rd = math.isqrt(lc.numerator), math.isqrt(lc.denominator)
    if rn * rn != lc.numerator or rd * rd != lc.denominator:
        return None
    n = p.degree // 2
    # solve for coefficients from the top down
    root = [Fraction(0)] * (n + 1)
    root[n] = Fraction(rn, rd)
    for k in range(1, n + 1):
        # coefficient of x^{2n-k} in root^2
        acc = p.coeff(2 * n - k)
        for i in range(1, k):
            acc -= root[n - i] * root[n - k + i]
        root[n - k] = acc / (2 * root[n])
    cand = RationalPoly(root)
    return cand if cand * cand == p else None


def sturm_sequence(p: RationalPoly) -> list[RationalPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r)
    return seq


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: RationalPoly, lo: Scalar | None = None, hi: Scalar | None = None) -> int:
    """Number of distinct real roots in the open interval (lo, hi); None means infinite."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(p)

    def at(v, side):
        if v is None:
            # sign at +/- infinity from leading coefficients
            return [q.lc * (1 if side > 0 or q.degree % 2 == 0 else -1) for q in seq]
        return [q(as_rat(v)) for q in seq]

    n = _sign_changes(at(lo, -1)) - _sign_changes(at(hi, 1))
    # Sturm counts roots in (lo, hi]; remove a root sitting exactly at hi
    if hi is not None and p(as_rat(hi)) == 0:
        n -= 1
    return n


def wronskian3(y1: RationalPoly, y2: RationalPoly, y3: RationalPoly) -> RationalPoly:
    """Standard Wronskian: det of rows (y1, y2, y3), their first and second derivatives."""
    ys = (y1, y2, y3)
    (a, b, c), (d, e, f), (g, h, i) = [tuple(y.derivative(k) for y in ys) for k in range(3)]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


class RationalFunc:
    """Reduced quotient num/den with monic den."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = _as_poly(num)
        den = ONE if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = ONE
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num.exact_div(g), den.exact_div(g)
                lc = den.lc
                if lc != 1:
                    num, den = num * (1 / lc), den * (1 / lc)
        self.num: RationalPoly = num
        self.den: RationalPoly = den

    @classmethod
    def const(cls, c: Scalar) -> "RationalFunc":
        return cls(RationalPoly.const(c), ONE, _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> RationalPoly:
        if not self.is_polynomial():
            raise DivisibilityError(f"{self} is not a polynomial")
        return self.num

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.degree <= 0

    @property
    def order_at_infinity(self) -> int:
        """deg num - deg den (-inf convention: very negative for zero)."""
        if self.is_zero():
            return -(10**9)
        return self.num.degree - self.den.degree

    def limit_coeff(self, k: int) -> Fraction:
        """lim_{x->inf} self / x^k; requires order_at_infinity <= k."""
        if self.is_zero() or self.order_at_infinity < k:
            return Fraction(0)
        if self.order_at_infinity > k:
            raise ValueError(f"{self} grows faster than x^{k}")
        return self.num.lc / self.den.lc

    def __add__(self, other):
        other = _as_func(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunc(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        a = other.den.exact_div(g)
        b = self.den.exact_div(g)
        return RationalFunc(self.num * a + other.num * b, self.den * a)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _as_func(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunc(self.num * as_rat(other), self.den, _reduced=other != 0)
        other = _as_func(other)
        if other is NotImplemented:
            return other
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n = self.num.exact_div(g1) * other.num.exact_div(g2)
        d = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RationalFunc(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / as_rat(other))
        other = _as_func(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_func(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunc(self.num**n, self.den**n, _reduced=True)

    def derivative(self) -> "RationalFunc":
        n, d = self.num, self.den
        return RationalFunc(n.derivative() * d - n * d.derivative(), d * d)

    def compose_affine(self, s: Scalar, t: Scalar) -> "RationalFunc":
        return RationalFunc(self.num.compose_affine(s, t), self.den.compose_affine(s, t))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        return self.num(x) / d

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RationalPoly)):
            other = _as_func(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunc({self})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _as_poly(v) -> RationalPoly:
    if isinstance(v, RationalPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return RationalPoly.const(v)
    raise TypeError(f"cannot interpret {v!r} as a polynomial")


def _as_func(v):
    if isinstance(v, RationalFunc):
        return v
    if isinstance(v, RationalPoly):
        return RationalFunc(v, ONE, _reduced=True)
    if isinstance(v, (int, Fraction)):
        return RationalFunc.const(v)
    return NotImplemented


def as_func(v) -> RationalFunc:
    out = _as_func(v)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {v!r} as a rational function")
    return out


def func_sqrt(f: RationalFunc) -> RationalFunc | None:
    """Square root of a rational function with both num and den perfect squares."""
    n = poly_sqrt(f.num)
    d = poly_sqrt(f.den)
    if n is None or d is None:
        return None
    return RationalFunc(n, d)


def solve_linear(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact least-structure solve of a (possibly overdetermined) consistent system.

    Returns one solution (free variables set to zero) or None if inconsistent.
    """
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    pivots = []
    r = 0
    for c in range(ncols):
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
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol


def nullspace(matrix: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Exact basis of the right nullspace."""
    rows = [list(r) for r in matrix]
    pivots = []
    r = 0
    for c in range(ncols):
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
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def rank(matrix: list[list[Fraction]]) -> int:
    if not matrix:
        return 0
    ncols = len(matrix[0])
    return ncols - len(nullspace(matrix, ncols))

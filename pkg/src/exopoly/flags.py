"""Concrete polynomial flags and the operators known to preserve them."""

from __future__ import annotations

from functools import lru_cache

from .diffop import DiffOp2, Flag
from .ratpoly import ONE, X, RationalFunc, RationalPoly, as_rat


def standard_flag() -> Flag:
    return Flag(lambda k: RationalPoly.monomial(k - 1), "standard")


def gapped_flag() -> Flag:
    """1, x^2, x^3, ...: semi-stable codimension 1."""
    return Flag(lambda k: ONE if k == 1 else RationalPoly.monomial(k), "1,x^2,x^3,...")


def canonical_codim1_flag() -> Flag:
    """x+1, x^2, x^3, ...: the stable codimension-1 exceptional flag."""
    return Flag(lambda k: X + 1 if k == 1 else RationalPoly.monomial(k), "x+1,x^2,x^3,...")


def monomial_flag_without_constant() -> Flag:
    """x, x^2, ...: imprimitive, common factor x."""
    return Flag(lambda k: RationalPoly.monomial(k), "x,x^2,x^3,...")


@lru_cache(maxsize=None)
def hermite_he(n: int) -> RationalPoly:
    """Probabilists' Hermite He_n, eigenpolynomials of y'' - x y'."""
    if n == 0:
        return ONE
    if n == 1:
        return X
    return X * hermite_he(n - 1) - hermite_he(n - 2) * (n - 1)


def hermite_flag() -> Flag:
    return Flag(lambda k: hermite_he(k), "He_1,He_2,...")


def codim2_basis_poly(j: int) -> RationalPoly:
    """y_{2k-1} = x^{2k-1} - (2k-1) x,  y_{2k} = x^{2k} - k x^2  (j >= 3)."""
    if j < 3:
        raise ValueError("defined for j >= 3")
    if j % 2:
        return RationalPoly.monomial(j) - RationalPoly.monomial(1, j)
    return RationalPoly.monomial(j) - RationalPoly.monomial(2, j // 2)


def codim2_flag() -> Flag:
    """1, y_3, y_4, y_5, ...; degree sequence 0, 3, 4, 5, ..."""
    return Flag(lambda k: ONE if k == 1 else codim2_basis_poly(k + 1), "1,y_3,y_4,...")


# -- operators -------------------------------------------------------------------


def _f(num, den=None) -> RationalFunc:
    return RationalFunc(num, den)


def gapped_flag_operator() -> DiffOp2:
    """y'' - 2 y'/x."""
    return DiffOp2(_f(ONE), _f(RationalPoly.const(-2), X), _f(RationalPoly()))


def canonical_codim1_operator() -> DiffOp2:
    """y'' - 2(1 + 1/x) y' + (2/x) y."""
    return DiffOp2(_f(ONE), _f(-2 * X - 2, X), _f(RationalPoly.const(2), X))


def hermite_operator() -> DiffOp2:
    return DiffOp2(_f(ONE), _f(-X), _f(RationalPoly()))


def imprimitive_operator() -> DiffOp2:
    """y'' - 2y'/x + 2y/x^2 = x (d^2/dx^2) x^{-1}."""
    return DiffOp2(_f(ONE), _f(RationalPoly.const(-2), X), _f(RationalPoly.const(2), X * X))


def codim2_operators() -> dict[str, DiffOp2]:
    """Three operators preserving the codimension-2 flag 1, y_3, y_4, ..."""
    x2m1 = X * X - 1
    return {
        "T1": DiffOp2(_f(ONE), _f(X * (x2m1 - 4), x2m1), _f(RationalPoly())),
        "T2": DiffOp2(_f(X), _f(-2 * (x2m1 + 2), x2m1), _f(RationalPoly())),
        "T3": DiffOp2(_f(x2m1), _f(-2 * X), _f(RationalPoly())),
    }


def general_codim1_op(k0, k1, k2) -> DiffOp2:
    """(k2 x^2 + k1 x + k0) y'' - (x+1)(k1 + 2k0/x) y' + (k1 + 2k0/x) y."""
    k0, k1, k2 = as_rat(k0), as_rat(k1), as_rat(k2)
    if k0 == k1 == k2 == 0:
        raise ValueError("at least one of k0, k1, k2 must be nonzero")
    s = _f(X * k1 + 2 * k0, X)
    return DiffOp2(_f(RationalPoly([k0, k1, k2])), -(X + 1) * s, s)


WORKED_EXAMPLES = {
    1: (gapped_flag, {"T": gapped_flag_operator}),
    2: (canonical_codim1_flag, {"T": canonical_codim1_operator}),
    3: (hermite_flag, {"T": hermite_operator}),
    4: (monomial_flag_without_constant, {"T": imprimitive_operator}),
    5: (codim2_flag, {name: (lambda n=name: codim2_operators()[n]) for name in ("T1", "T2", "T3")}),
}


def example(number: int) -> tuple[Flag, dict[str, DiffOp2]]:
    """Flag and operator(s) of worked example ``number`` (1-5)."""
    flag_fn, ops = WORKED_EXAMPLES[number]
    return flag_fn(), {k: v() for k, v in ops.items()}


import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from exopoly.quasirational import (
    DomainError,
    PowerFactor,
    QuasiRational,
    RepresentationError,
    from_log_derivative,
)
from exopoly.ratpoly import ONE, X, RationalFunc, RationalPoly

from conftest import rationals


def laguerre_weight(k):
    return QuasiRational(
        power_factors=(PowerFactor(F(0), F(k), 1),),
        exp_part=RationalPoly([0, -1]),
        rational_part=RationalFunc(ONE, (X + k) ** 2),
    )


def test_integrate_laguerre_numerator():
    k = F(5, 2)
    phi = from_log_derivative(RationalFunc(RationalPoly([k]), X) - 1)
    assert phi.power_factors == (PowerFactor(F(0), k, 1),)
    assert phi.exp_part == RationalPoly([0, -1])


def test_zero_log_derivative():
    assert from_log_derivative(RationalFunc.const(0)) == QuasiRational.one()


def test_double_pole_denominator():
    b = F(3)
    phi = from_log_derivative(RationalFunc(RationalPoly([-2]), X - b))
    assert phi.log_derivative() == RationalFunc(RationalPoly([-2]), X - b)
    assert phi(4.0) == pytest.approx(1.0)


def test_jacobi_weight_log_derivative():
    a, b = F(1, 3), F(-1, 2)
    # -a/(1 - x) + b/(1 + x)
    want = RationalFunc(RationalPoly([a]), X - 1) + RationalFunc(RationalPoly([b]), X + 1)
    assert QuasiRational.jacobi_weight(a, b).log_derivative() == want


def test_laguerre_weight_log_derivative_and_value():
    k = 2
    W = laguerre_weight(k)
    want = RationalFunc.const(-1) + RationalFunc(RationalPoly([k]), X) - RationalFunc(RationalPoly([2]), X + k)
    assert W.log_derivative() == want
    assert W(2.0) == pytest.approx(math.exp(-2) / 4, rel=1e-15)


def test_one_log_derivative_and_self_ratio():
    W = QuasiRational.jacobi_weight(F(1, 3), F(2, 5))
    assert QuasiRational.one().log_derivative().is_zero()
    assert (W / W).as_rational() == RationalFunc.const(1)


def test_displayed_weight_at_zero():
    xi = RationalPoly([F(-41, 288), F(2, 288), F(7, 288)])
    W = QuasiRational.jacobi_weight(F(1, 3), F(-1, 2)) * RationalFunc(ONE, xi * xi)
    assert W(0.0) == pytest.approx(288**2 / 41**2, rel=1e-14)


def test_non_integer_residue_on_irreducible_factor():
    with pytest.raises(RepresentationError):
        from_log_derivative(RationalFunc(X, X * X + 1))  # residue 1/2 at +-i


def test_higher_order_pole_rejected():
    with pytest.raises(RepresentationError):
        from_log_derivative(RationalFunc(ONE, X * X))


def test_domain_errors():
    W = QuasiRational.jacobi_weight(F(-1, 2), F(1, 2))
    with pytest.raises(DomainError):
        W(1.0)
    with pytest.raises(DomainError):
        W(2.0)


def test_orientation_on_interval():
    phi = from_log_derivative(RationalFunc(RationalPoly([F(1, 2)]), X - 1), interval=(-1, 1))
    assert phi.power_factors[0].orientation == -1
    assert phi(0.0) == pytest.approx(1.0)


@st.composite
def quasi_rationals(draw):
    ea = draw(rationals(max_num=7, max_den=4))
    eb = draw(rationals(max_num=7, max_den=4))
    c = draw(rationals(max_num=3, max_den=2))
    r = draw(st.integers(-2, 2))
    rat = RationalFunc((X - 3) ** r if r >= 0 else ONE, ONE if r >= 0 else (X - 3) ** (-r))
    return QuasiRational.jacobi_weight(ea, eb) * QuasiRational(exp_part=RationalPoly([0, c])) * rat


@given(quasi_rationals())
def test_log_derivative_roundtrip(f):
    g = from_log_derivative(f.log_derivative(), interval=(-1, 1))
    assert g.equals_up_to_constant(f)
    xs = np.array([-0.5, 0.0, 0.3])
    ratio = f(xs) / g(xs)
    assert np.allclose(ratio, ratio[0], rtol=1e-12)


@given(quasi_rationals(), quasi_rationals())
def test_log_derivative_is_additive(f, g):
    assert (f * g).log_derivative() == f.log_derivative() + g.log_derivative()
    assert (f / g).log_derivative() == f.log_derivative() - g.log_derivative()


@given(quasi_rationals())
def test_mp_and_float_evaluation_agree(f):
    import mpmath

    for x in (-0.75, 0.1, 0.9):
        assert float(f.eval_mp(mpmath.mpf(x))) == pytest.approx(f(x), rel=1e-12)

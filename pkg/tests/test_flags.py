from fractions import Fraction as F

import pytest
from hypothesis import given

from exopoly.diffop import coordinates_in, eigenpolynomials, preserves_flag, poles
from exopoly.flags import (
    canonical_codim1_flag,
    codim2_basis_poly,
    codim2_flag,
    example,
    general_codim1_op,
    gapped_flag,
    hermite_flag,
    hermite_he,
    monomial_flag_without_constant,
    standard_flag,
)
from exopoly.ratpoly import X, RationalFunc, RationalPoly

from conftest import rationals


@pytest.mark.parametrize("number", [1, 2, 3, 4, 5])
def test_worked_examples_preserve_their_flags(number):
    flag, ops = example(number)
    for name, T in ops.items():
        cert = preserves_flag(T, flag, 12)
        assert cert, (number, name, cert.failing_k, cert.residual)
        assert cert.k_checked == 12


def test_codimension_sequences():
    assert standard_flag().codimension_sequence(6) == [0] * 6
    assert gapped_flag().codimension_sequence(6) == [0, 1, 1, 1, 1, 1]
    assert canonical_codim1_flag().codimension_sequence(6) == [1] * 6
    assert monomial_flag_without_constant().codimension_sequence(6) == [1] * 6
    assert codim2_flag().codimension_sequence(6) == [0, 2, 2, 2, 2, 2]


def test_primitivity():
    assert not monomial_flag_without_constant().is_primitive(8)
    assert monomial_flag_without_constant().common_factor(8) == X
    for flag in (standard_flag(), gapped_flag(), canonical_codim1_flag(), hermite_flag(), codim2_flag()):
        assert flag.is_primitive(8)


def test_degree_regularity():
    assert canonical_codim1_flag().is_degree_regular(8)
    assert codim2_flag().is_degree_regular(8)
    assert not monomial_flag_without_constant().is_primitive(3)


def test_codim2_basis():
    assert codim2_basis_poly(3) == X**3 - X * 3
    assert codim2_basis_poly(4) == X**4 - X * X * 2
    with pytest.raises(ValueError):
        codim2_basis_poly(2)


def test_codim2_poles():
    _, ops = example(5)
    assert [p.location for p in poles(ops["T3"])] == []
    assert sorted(p.location for p in poles(ops["T1"])) == [-1, 1]


def test_hermite_eigenpolynomials():
    _, ops = example(3)
    for ep in eigenpolynomials(ops["T"], 8):
        assert ep.eigenvalue == -ep.degree
        assert ep.poly == hermite_he(ep.degree)


def test_gapped_operator_rejects_standard_flag():
    _, ops = example(1)
    cert = preserves_flag(ops["T"], standard_flag(), 12)
    assert cert.failing_k == 2
    assert cert.residual == RationalFunc(RationalPoly.const(-2), X)


def test_canonical_operator_fails_on_gapped_flag():
    _, ops = example(2)
    assert not preserves_flag(ops["T"], gapped_flag(), 12)


def test_general_codim1_special_case():
    T = general_codim1_op(0, 0, 1)
    assert T.p == RationalFunc(X * X) and T.q.is_zero() and T.r.is_zero()
    assert preserves_flag(T, canonical_codim1_flag(), 12)
    with pytest.raises(ValueError):
        general_codim1_op(0, 0, 0)


@given(rationals(), rationals(), rationals())
def test_general_codim1_preserves_canonical_flag(k0, k1, k2):
    if k0 == k1 == k2 == 0:
        return
    assert preserves_flag(general_codim1_op(k0, k1, k2), canonical_codim1_flag(), 10)


def test_coordinates_of_non_member():
    basis = [X + 1, X * X]
    coords, resid = coordinates_in(basis, X * X * 3 + X + 1)
    assert coords == [F(1), F(3)] and resid.is_zero()
    coords, resid = coordinates_in(basis, X)
    assert coords is None and not resid.is_zero()

from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from exopoly.classical import classical_jacobi_op, classical_norm_ratio, jacobi, norm_formula
from exopoly.diffop import Flag, preserves_flag
from exopoly.factorization import Kind
from exopoly.quadrature import WeightedInterval, gram_matrix, inner_product, max_normalized_offdiag
from exopoly.quasirational import QuasiRational
from exopoly.ratpoly import ONE, X, RationalFunc, RationalPoly, nullspace
from exopoly.x1_families import X1JacobiParams, x1_jacobi_op, x1_jacobi_poly, x1_jacobi_weight
from exopoly.xm_jacobi import (
    ParameterError,
    XmParams,
    admissible,
    classical_factorization,
    denominator,
    divisibility_basis,
    divisibility_residual,
    lowering_op,
    shape_invariance,
    shape_invariant_factorization,
    xi,
    xm_displayed_operator,
    xm_eigenvalue,
    xm_flag,
    xm_lower,
    xm_norm,
    xm_norm_factor,
    xm_norm_ratio_to_classical,
    xm_operator,
    xm_poly,
    xm_raise,
    xm_value_at_1,
    xm_weight,
)

ADMISSIBLE = [XmParams(F(1, 3), F(-1, 2), 2), XmParams(F(5, 4), F(1, 2), 2), XmParams(F(5, 2), F(3, 2), 1),
              XmParams(F(7, 2), F(1, 2), 2), XmParams(F(1, 2), F(1, 3), 1)]
DEGENERATE = XmParams(F(3, 2), F(1, 2), 2)


def ids(p):
    return f"{p.alpha},{p.beta},{p.m}"


# -- admissibility ----------------------------------------------------------------


def test_admissibility_examples():
    assert admissible(XmParams(F(1, 3), F(-1, 2), 2)).verdict == "admissible"
    assert admissible(XmParams(F(5, 4), F(1, 2), 2)).verdict == "admissible"
    v = admissible(DEGENERATE)
    assert v.verdict == "degenerate-degree" and v.degree < 2 and not v
    assert admissible(XmParams(-1, 1, 2)).verdict == "out-of-range"


def test_admissibility_failure_kinds():
    assert admissible(XmParams(1, F(1, 2), 2)).verdict == "boundary-root"  # alpha in {0, 1}
    assert admissible(XmParams(F(5, 2), 0, 2)).verdict == "boundary-root"  # beta = 0
    v = admissible(XmParams(F(1, 2), F(1, 3), 3))  # alpha < m - 2
    assert v.verdict == "interior-zero" and v.interior_roots > 0


rat_param = st.builds(F, st.integers(-9, 50), st.sampled_from([2, 3, 4, 5, 7, 10]))


@settings(max_examples=150)
@given(rat_param, rat_param, st.integers(0, 4))
def test_inequalities_agree_with_root_counting(a, b, m):
    # admissible() raises AdmissibilityMismatch on disagreement
    v = admissible(XmParams(a, b, m))
    if v.verdict == "admissible":
        xi_ = denominator(XmParams(a, b, m))
        assert xi_.degree == m and v.interior_roots == 0
        assert all(e != 0 for e in v.endpoint_values)


def test_inadmissible_rejected():
    with pytest.raises(ParameterError):
        xm_poly(XmParams(1, F(1, 2), 2), 3)
    with pytest.raises(ParameterError):
        xm_poly(ADMISSIBLE[0], 1)  # n < m


# -- construction -------------------------------------------------------------------


@given(st.builds(F, st.integers(-4, 20), st.sampled_from([3, 5, 7])),
       st.builds(F, st.integers(-4, 20), st.sampled_from([3, 5, 7])), st.integers(0, 8))
def test_m0_is_classical(a, b, n):
    prm = XmParams(a, b, 0)
    assert xm_poly(prm, n, check=False) == jacobi(n, a, b)
    assert xm_operator(prm) == classical_jacobi_op(a, b)


@pytest.mark.parametrize("prm", ADMISSIBLE, ids=ids)
def test_lowest_member(prm):
    a, b, m = prm.alpha, prm.beta, prm.m
    want = jacobi(m, -a - 2, b) * (F((-1) ** m) * (1 + a - m) / (1 + a))
    assert xm_poly(prm, m) == want


def test_degenerate_collapse():
    for k in range(8):
        assert xm_poly(DEGENERATE, 2 + k) == jacobi(k, F(3, 2), F(1, 2)) * F(3, 8)
    assert denominator(DEGENERATE) == RationalPoly.const(F(3, 8))
    # the general weight formula gives (8/3)^2 W, not the displayed (3/8) W
    ratio = xm_weight(DEGENERATE).ratio_to(QuasiRational.jacobi_weight(F(3, 2), F(1, 2)))
    assert ratio == F(64, 9)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_eigenrelation(m):
    prm = {1: ADMISSIBLE[2], 2: ADMISSIBLE[1], 3: XmParams(F(7, 2), F(1, 3), 3)}[m]
    assert admissible(prm)
    T = xm_operator(prm)
    for n in range(m, m + 21):
        P = xm_poly(prm, n)
        assert P.degree == n
        assert P(1) == xm_value_at_1(prm, n)
        assert T.apply(P) == RationalFunc(P * xm_eigenvalue(prm, n))


def test_eigenvalue_examples():
    prm = XmParams(F(5, 4), F(1, 2), 2)
    assert xm_eigenvalue(prm, 4) == F(-19, 2)
    assert xm_eigenvalue(prm, 2) == 0


@pytest.mark.parametrize("prm", ADMISSIBLE + [DEGENERATE], ids=ids)
def test_operator_forms_agree(prm):
    a, b, m = prm.alpha, prm.beta, prm.m
    T = xm_operator(prm)
    assert T == xm_displayed_operator(prm)
    f = classical_factorization(a + 1, b - 1, m)
    assert (f.A @ f.B) - (m - a - 1) * (m + b) == T


@pytest.mark.parametrize("prm", ADMISSIBLE, ids=ids)
def test_isospectral_factorization(prm):
    a, b, m = prm.alpha, prm.beta, prm.m
    f = classical_factorization(a, b, m)
    assert f.lambda0 == -(m - a) * (m + b + 1)
    assert f.kind is Kind.ISOSPECTRAL


# -- weights, orthogonality, norms -------------------------------------------------


def test_displayed_weights():
    w1 = QuasiRational.jacobi_weight(F(1, 3), F(-1, 2)) * RationalFunc(RationalPoly.const(288**2), RationalPoly([-41, 2, 7]) ** 2)
    w2 = QuasiRational.jacobi_weight(F(5, 4), F(1, 2)) * RationalFunc(RationalPoly.const(128**2), RationalPoly([29, -14, 5]) ** 2)
    assert xm_weight(XmParams(F(1, 3), F(-1, 2), 2)).ratio_to(w1) == 1
    assert xm_weight(XmParams(F(5, 4), F(1, 2), 2)).ratio_to(w2) == 1
    pts = [mpmath.mpf(k) / 11 - mpmath.mpf(9) / 22 for k in range(10)]
    for prm, w in ((XmParams(F(1, 3), F(-1, 2), 2), w1), (XmParams(F(5, 4), F(1, 2), 2), w2)):
        ratios = [xm_weight(prm).eval_mp(x) / w.eval_mp(x) for x in pts]
        mean = sum(ratios) / len(ratios)
        assert sum((r - mean) ** 2 for r in ratios) / len(ratios) < 1e-20


@pytest.mark.parametrize("prm", ADMISSIBLE[:4], ids=ids)
def test_orthogonality(prm):
    wi = WeightedInterval(xm_weight(prm), (-1, 1))
    G = gram_matrix([xm_poly(prm, prm.m + k) for k in range(9)], wi)
    assert max_normalized_offdiag(G) < 1e-10


@pytest.mark.parametrize("prm", ADMISSIBLE[:4], ids=ids)
def test_norms_by_quadrature(prm):
    wi = WeightedInterval(xm_weight(prm), (-1, 1))
    for k in range(6):
        P = xm_poly(prm, prm.m + k)
        assert inner_product(P, P, wi) == pytest.approx(xm_norm(prm, prm.m + k), rel=1e-8)


def test_norm_example():
    prm = XmParams(F(5, 4), F(1, 2), 2)
    assert xm_norm_factor(prm, 2) == F(1, 4) * F(5, 2) / F(81, 16)
    assert xm_norm(prm, 2) == pytest.approx(float(F(10, 81)) * norm_formula(0, F(9, 4), F(-1, 2)), rel=1e-14)


@given(st.builds(F, st.integers(1, 30), st.sampled_from([3, 4, 5, 7])),
       st.builds(F, st.integers(1, 30), st.sampled_from([3, 4, 5, 7])), st.integers(0, 10))
def test_m0_norm_reduces_to_classical(a, b, k):
    assert xm_norm_ratio_to_classical(XmParams(a, b, 0), k) == 1


@pytest.mark.parametrize("prm", ADMISSIBLE[:3], ids=ids)
def test_norm_positivity(prm):
    assert all(xm_norm(prm, prm.m + k) > 0 for k in range(11))


# -- flag structure -------------------------------------------------------------------


@pytest.mark.parametrize("prm", ADMISSIBLE, ids=ids)
def test_flag_structure(prm):
    m = prm.m
    polys = [xm_poly(prm, m + k) for k in range(11)]
    assert [p.degree for p in polys] == list(range(m, m + 11))
    mat = [[p.coeff(i) for p in polys] for i in range(m + 11)]
    assert nullspace(mat, len(polys)) == []  # full rank
    flag = xm_flag(prm)
    assert flag.codimension_sequence(10) == [m] * 10
    assert preserves_flag(xm_operator(prm), flag, 12)


@pytest.mark.parametrize("prm", ADMISSIBLE, ids=ids)
def test_divisibility(prm):
    n_max = prm.m + 10
    for n in range(prm.m, n_max + 1):
        assert divisibility_residual(prm, xm_poly(prm, n)).is_zero()
    basis = divisibility_basis(prm, n_max)
    assert [p.degree for p in basis] == list(range(prm.m, n_max + 1))


# -- ladders and shape invariance --------------------------------------------------------


@pytest.mark.parametrize("prm", [p for p in ADMISSIBLE if p.m <= 2][:4], ids=ids)
def test_ladders(prm):
    up = XmParams(prm.alpha + 1, prm.beta + 1, prm.m)
    a, b, m = prm.alpha, prm.beta, prm.m
    assert xm_lower(prm, xm_poly(prm, m)).is_zero()
    for k in range(11):
        assert xm_raise(prm, xm_poly(up, m + k)) == xm_poly(prm, m + k + 1) * (-2 * (1 + k))
        if k >= 1:
            assert xm_lower(prm, xm_poly(prm, m + k)) == xm_poly(up, m + k - 1) * ((1 + a + b + k) / 2)


def test_m0_ladder_matches_classical():
    a, b = F(1, 2), F(2, 3)
    prm = XmParams(a, b, 0)
    for n in range(8):
        assert xm_raise(prm, jacobi(n, a + 1, b + 1)) == jacobi(n + 1, a, b) * (-2 * (n + 1))


@pytest.mark.parametrize("prm", ADMISSIBLE, ids=ids)
def test_shape_invariance(prm):
    BA, AB = shape_invariance(prm)
    assert BA == xm_operator(prm)
    assert AB == xm_operator(XmParams(prm.alpha + 1, prm.beta + 1, prm.m))
    f = shape_invariant_factorization(prm)
    assert f.A == lowering_op(prm) and f.kind is Kind.STATE_DELETING


@pytest.mark.parametrize("prm", ADMISSIBLE, ids=ids)
def test_factorization_web_closes(prm):
    a, b, m = prm.alpha, prm.beta, prm.m
    iso = classical_factorization(a + 1, b - 1, m)
    assert iso.partner == shape_invariant_factorization(prm).T


# -- relation to X1-Jacobi -------------------------------------------------------------


@pytest.mark.parametrize("ab", [(F(1, 2), F(5, 2)), (1, 2), (3, F(1, 3))])
def test_m1_is_x1_jacobi(ab):
    prm, x1 = XmParams(*ab, 1), X1JacobiParams(*ab)
    assert x1_jacobi_op(x1) == -xm_operator(prm)
    for n in range(1, 8):
        assert x1_jacobi_poly(x1, n) == xm_poly(prm, n)
    assert x1_jacobi_weight(x1).equals_up_to_constant(xm_weight(prm))

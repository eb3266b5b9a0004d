from fractions import Fraction as F

import pytest
from hypothesis import example, given, strategies as st

from exopoly.classical import (
    DomainError,
    classical_eigenvalue,
    classical_jacobi_op,
    classical_norm,
    classical_norm_exact,
    classical_norm_ratio,
    identity_suite,
    jacobi,
    jacobi_by_recurrence,
    lower,
    norm_formula,
    quasi_rational_seeds,
    raise_,
    rodrigues,
    state_deleting_factorization,
)
from exopoly.quadrature import WeightedInterval, gram_matrix, max_normalized_offdiag
from exopoly.quasirational import QuasiRational
from exopoly.ratpoly import ONE, X, RationalFunc, RationalPoly, gen_binomial

from conftest import jacobi_params, rationals

SAMPLES = [(F(0), F(0)), (F(1, 2), F(3, 2)), (F(1), F(2)), (F(-1, 3), F(2, 7)), (F(5, 4), F(-3, 5))]


def test_basic_values():
    assert jacobi(0, F(2, 3), F(-5, 7)) == ONE
    assert jacobi(2, 0, 0) == RationalPoly([F(-1, 2), 0, F(3, 2)])
    assert jacobi(-1, 1, 1).is_zero()


@given(rationals(), rationals(), st.integers(0, 8))
def test_value_at_one(a, b, n):
    assert jacobi(n, a, b)(1) == gen_binomial(a + n, n)


def test_x1_root_consistency():
    a, b = F(1), F(2)
    p = jacobi(1, -a - 1, b - 1)
    assert p((a + b) / (b - a)) == 0


@pytest.mark.parametrize("a,b", SAMPLES)
def test_eigenrelation_to_degree_30(a, b):
    T = classical_jacobi_op(a, b)
    for n in range(31):
        P = jacobi(n, a, b)
        assert P.degree == n
        assert T.apply(P) == RationalFunc(P * classical_eigenvalue(n, a, b))


def test_eigenvalue_examples():
    assert classical_eigenvalue(0, 3, 4) == 0
    assert classical_eigenvalue(2, 0, 0) == -6
    assert classical_eigenvalue(3, 1, 2) == -21
    P = jacobi(3, 1, 2)
    assert classical_jacobi_op(1, 2).apply(P) == RationalFunc(P * -21)


@pytest.mark.parametrize("a,b", SAMPLES)
def test_recurrence_matches_sum(a, b):
    rec = jacobi_by_recurrence(15, a, b)
    assert all(rec[n] == jacobi(n, a, b) for n in range(16))


@given(st.tuples(jacobi_params(), jacobi_params()), st.integers(0, 6), st.integers(0, 10))
def test_identities(prm, m, n):
    a, b = prm
    for name, resid in identity_suite(a, b, m, n).items():
        assert resid.is_zero(), name


def test_parity_needs_parameter_swap():
    # without exchanging alpha and beta the reflection identity is false
    a, b = F(1, 2), F(3, 2)
    for n in range(1, 11):
        literal = jacobi(n, a, b) - jacobi(n, a, b).compose(-X) * ((-1) ** n)
        assert not literal.is_zero()
        swapped = jacobi(n, a, b) - jacobi(n, b, a).compose(-X) * ((-1) ** n)
        assert swapped.is_zero()


def test_parity_literal_holds_when_symmetric():
    for n in range(8):
        assert jacobi(n, F(2, 3), F(2, 3)) == jacobi(n, F(2, 3), F(2, 3)).compose(-X) * ((-1) ** n)


def test_norms():
    assert classical_norm(0, 0, 0) == 2
    assert classical_norm(1, 0, 0) == pytest.approx(2 / 3, rel=1e-15)
    assert classical_norm(0, 1, 0) == 2
    assert classical_norm_exact(1, 0, 0) == F(2, 3)
    assert classical_norm_exact(1, F(1, 2), 0) is None
    with pytest.raises(DomainError):
        classical_norm(0, -1, 0)
    assert classical_norm(2, F(1, 2), F(3, 2)) == pytest.approx(norm_formula(2, F(1, 2), F(3, 2)), rel=1e-14)


@given(st.tuples(jacobi_params(), jacobi_params()), st.integers(0, 8))
@example((F(-1, 2), F(-1, 2)), 0)  # a+b = -1 at n = 0: removable Gamma pole
def test_norm_ratio_exact(prm, n):
    a, b = prm
    r = classical_norm_ratio(n, (a + 1, b + 1), (a, b))
    assert float(r) == pytest.approx(norm_formula(n, a + 1, b + 1) / norm_formula(n, a, b), rel=1e-12)


@pytest.mark.parametrize("a,b", [(F(0), F(0)), (F(1, 2), F(3, 2)), (F(1), F(2))])
def test_orthogonality_by_quadrature(a, b):
    wi = WeightedInterval(QuasiRational.jacobi_weight(a, b), (-1, 1))
    G = gram_matrix([jacobi(n, a, b) for n in range(13)], wi)
    assert max_normalized_offdiag(G) < 1e-10
    for n in range(13):
        assert G[n][n] == pytest.approx(classical_norm(n, a, b), rel=1e-12)


@pytest.mark.parametrize("a,b", SAMPLES)
def test_raising_and_lowering(a, b):
    for n in range(11):
        assert raise_(jacobi(n, a + 1, b + 1), a, b) == jacobi(n + 1, a, b) * (-2 * (n + 1))
        assert lower(jacobi(n + 1, a, b)) == jacobi(n, a + 1, b + 1) * ((n + 2 + a + b) / 2)
    assert lower(jacobi(4, a, b)) == jacobi(3, a + 1, b + 1) * ((5 + a + b) / 2)


@pytest.mark.parametrize("a,b", SAMPLES)
def test_ladder_composition_is_diagonal(a, b):
    for n in range(8):
        P = jacobi(n, a, b)
        assert raise_(lower(P), a, b) == P * classical_eigenvalue(n, a, b)
        Q = jacobi(n, a + 1, b + 1)
        assert lower(raise_(Q, a, b)) == Q * (classical_eigenvalue(n, a + 1, b + 1) - (a + b + 2))


def test_rodrigues():
    assert rodrigues(0, 1, 1) == ONE
    assert rodrigues(3, 0, 0) == jacobi(3, 0, 0)
    for a, b in SAMPLES:
        for n in range(11):
            assert rodrigues(n, a, b) == jacobi(n, a, b)


@given(st.tuples(jacobi_params(), jacobi_params()), st.integers(0, 5))
def test_seeds_are_eigenfunctions(prm, m):
    a, b = prm
    T = classical_jacobi_op(a, b)
    seeds = quasi_rational_seeds(a, b, m)
    assert [s.name for s in seeds] == ["phi1", "phi2", "phi3", "phi4"]
    for s in seeds:
        assert (T.eigen_ratio(s.phi) - s.eigenvalue).is_zero(), s.name


def test_seed_examples():
    a, b = F(1, 3), F(2, 5)
    s1 = quasi_rational_seeds(a, b, 0)[0]
    assert s1.phi == QuasiRational.one() and s1.eigenvalue == 0
    s = {x.name: x for x in quasi_rational_seeds(a, b, 2)}
    assert s["phi3"].eigenvalue == (1 + b + 2) * (a - 2)
    assert s["phi2"].eigenvalue == 3 * (a + b - 2)


def test_state_deleting_partner():
    a, b = F(1, 2), F(-1, 3)
    f = state_deleting_factorization(a, b)
    assert f.partner == classical_jacobi_op(a + 1, b + 1) - (a + b + 2)

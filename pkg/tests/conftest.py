import sys

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from exopoly.ratpoly import RationalPoly

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rationals(max_num=20, max_den=8, nonzero=False):
    s = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    return s.filter(lambda q: q != 0) if nonzero else s


def polys(max_degree=6, **kw):
    return st.lists(rationals(**kw), min_size=1, max_size=max_degree + 1).map(RationalPoly)


def nonzero_polys(max_degree=6):
    return polys(max_degree).filter(lambda p: not p.is_zero())


# parameters > -1 that avoid integers, so no boundary degeneracies
def jacobi_params():
    return st.builds(Fraction, st.integers(-5, 30), st.sampled_from([2, 3, 4, 5, 7])).filter(
        lambda q: q > -1 and q.denominator != 1
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])

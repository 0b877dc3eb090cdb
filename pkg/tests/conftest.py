import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bddlat import numerics as nm
from bddlat.gso import Basis

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

WORKED_BASIS = Basis.from_columns([(2, 1), (0, 2)])
WORKED_BASIS_ALT = Basis.from_columns([(4, 0), (-2, 1)])


def int_matrices(n_min=1, n_max=4, lo=-6, hi=6):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
        .map(nm.int_matrix))


def full_rank_bases(n_min=1, n_max=4, lo=-6, hi=6):
    return int_matrices(n_min, n_max, lo, hi).filter(lambda m: nm.determinant(m) != 0).map(Basis.from_matrix)


rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))


@pytest.fixture
def worked_basis():
    return WORKED_BASIS


def F(s):
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])

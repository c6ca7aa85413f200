from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from polarity_lab import ProjHyperplane, ProjPoint, Simplex
from polarity_lab import linalg

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small = st.integers(min_value=-9, max_value=9)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def coords(n):
    return st.lists(small, min_size=n + 1, max_size=n + 1).filter(any)


def generic_points(simplex):
    return coords(simplex.n).map(ProjPoint).filter(simplex.is_generic_point)


def generic_hyperplanes(simplex):
    return coords(simplex.n).map(ProjHyperplane).filter(simplex.is_generic_hyperplane)


def invertible_matrices(n):
    """Integer (n+1)x(n+1) matrices with nonzero determinant."""
    return st.lists(st.lists(small, min_size=n + 1, max_size=n + 1), min_size=n + 1, max_size=n + 1).filter(
        lambda m: linalg.det([[Fraction(x) for x in row] for row in m]) != 0
    )


def simplices(n):
    return invertible_matrices(n).map(lambda m: Simplex(tuple(ProjPoint(col) for col in zip(*m))))


def apply(m, p):
    return ProjPoint(linalg.matvec(m, list(p.coords)))


def apply_dual(m, h):
    """Image of a hyperplane under the point map m: h ↦ m^{-T} h."""
    inv_t = linalg.transpose(linalg.inverse([[Fraction(x) for x in row] for row in m]))
    return ProjHyperplane(linalg.matvec(inv_t, list(h.coords)))


@pytest.fixture
def tri():
    return Simplex.standard(2)


# --- acceptance bookkeeping -------------------------------------------------

ACCEPTANCE: dict = {}


def pytest_sessionstart(session):
    import time

    session.config._start_time = time.perf_counter()


def pytest_collection_modifyitems(config, items):
    """Tests marked ``run_last`` go to the end of the run."""
    last = [it for it in items if it.get_closest_marker("run_last")]
    items[:] = [it for it in items if not it.get_closest_marker("run_last")] + last


def pytest_configure(config):
    config.addinivalue_line("markers", "run_last: run after every other test")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key]["line"])

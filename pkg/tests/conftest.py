import sys

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from polyannulus.poly import make_poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def match_roots(a, b):
    """Greedy nearest-neighbour pairing of two root multisets; returns max relative gap."""
    a = list(np.asarray(a, complex))
    b = list(np.asarray(b, complex))
    assert len(a) == len(b)
    worst = 0.0
    for z in sorted(a, key=abs, reverse=True):
        j = int(np.argmin([abs(z - w) for w in b]))
        worst = max(worst, abs(z - b[j]) / max(abs(z), abs(b[j]), 1e-300))
        b.pop(j)
    return worst


def random_monic(rng, degree, box=1.0, nonzero_const=True):
    c = rng.uniform(-box, box, degree + 1) + 1j * rng.uniform(-box, box, degree + 1)
    c[-1] = 1.0
    if nonzero_const:
        while abs(c[0]) < 1e-3:
            c[0] = rng.uniform(-box, box) + 1j * rng.uniform(-box, box)
    return make_poly(c)


finite = st.floats(-2, 2, allow_nan=False, allow_infinity=False)
gauss = st.builds(complex, finite, finite)


@st.composite
def monic_polys(draw, min_degree=2, max_degree=8, nonzero_const=True):
    n = draw(st.integers(min_degree, max_degree))
    c = draw(st.lists(gauss, min_size=n, max_size=n))
    if nonzero_const and abs(c[0]) < 1e-2:
        c[0] = 0.5 + 0.25j
    return make_poly(c + [1.0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)

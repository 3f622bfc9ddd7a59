import pytest
from hypothesis import settings, strategies as st

from nichols_rank2.diagram import Diagram
from nichols_rank2.units import UnitGroup

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

PRIMES = (2, 3, 5, 7)


@st.composite
def torsion_groups(draw, primes=PRIMES, max_n=24):
    p = draw(st.sampled_from(primes))
    n = draw(st.integers(1, max_n).filter(lambda n: n % p))
    return UnitGroup(p, n)


@st.composite
def torsion_diagrams(draw, primes=PRIMES, max_n=12):
    g = draw(torsion_groups(primes, max_n))
    e = st.integers(0, g.torsion - 1)
    return Diagram(g.zeta(draw(e)), g.zeta(draw(e)), g.zeta(draw(e)))


@pytest.fixture
def z14_p3():
    return UnitGroup(3, 14)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])

import pytest
from hypothesis import given

from nichols_rank2.diagram import Diagram, cartan_entry, tau
from nichols_rank2.reflection import (Diverged, NotAllReflections, exchange_graph_dot, orbit,
                                      reflect, reflection_cases)
from nichols_rank2.units import UnitGroup

from conftest import torsion_diagrams


def generic(p=5, torsion=2):
    g = UnitGroup(p, torsion, 1)
    return g, g.gen(0)


def test_reflection_of_row_3_diagram():
    g, q = generic()
    m1 = g.minus_one()
    assert reflect(Diagram(q, m1, q.inv()), 2) == Diagram(m1, m1, q)


def test_symmetric_row_2_is_fixed():
    g, q = generic()
    d = Diagram(q, q, q.inv())
    assert "c1" in reflection_cases(d, 1)
    assert reflect(d, 1) == d and reflect(d, 2) == d


def test_row_7_second_diagram():
    g = UnitGroup(5, 6)
    z = g.zeta(2)
    d = Diagram(z, g.minus_one(), -z)
    assert reflect(d, 2) == Diagram(z.inv(), g.minus_one(), -z.inv())


def test_row_4_orbit_is_one_point():
    g, q = generic(7, 1)
    o = orbit(Diagram(q, q ** 2, q ** -2))
    assert len(o) == 1 and o.r1 == (0,) and o.r2 == (0,)


def test_row_3_orbit_is_a_path():
    g, q = generic()
    m1 = g.minus_one()
    d1 = Diagram(q, m1, q.inv())
    o = orbit(d1)
    assert set(o.points) == {d1, Diagram(m1, m1, q), tau(d1)}
    assert sorted(o.exchange_edges().values()) == [[1], [2]]
    dot = exchange_graph_dot(o)
    assert dot.count(" -- ") == 2
    assert 'label="2"' in dot and 'label="1"' in dot


def test_row_8_orbit_is_a_ten_cycle():
    g = UnitGroup(5, 12)
    z = g.zeta()
    o = orbit(Diagram(-(z ** 2), g.minus_one(), z))
    assert len(o) == 10
    edges = o.exchange_edges()
    assert len(edges) == 10
    degree = {x: 0 for x in range(10)}
    for x, y in edges:
        degree[x] += 1
        degree[y] += 1
    assert set(degree.values()) == {2}


def test_single_point_dot():
    g = UnitGroup(2)
    dot = exchange_graph_dot(orbit(Diagram(g.one(), g.one(), g.one())))
    assert " -- " not in dot and "peripheries=2" in dot


def test_not_all_reflections():
    g = UnitGroup(5, 1, 2)
    with pytest.raises(NotAllReflections):
        orbit(Diagram(g.gen(0), g.gen(1), g.gen(0) * g.gen(1)))


def test_cap_overflow_raises_diverged():
    g = UnitGroup(5, 12)
    z = g.zeta()
    with pytest.raises(Diverged) as exc:
        orbit(Diagram(-(z ** 2), g.minus_one(), z), cap=5)
    assert exc.value.cap == 5


def test_cap_must_be_positive():
    g = UnitGroup(2)
    with pytest.raises(ValueError):
        orbit(Diagram(g.one(), g.one(), g.one()), cap=0)


@given(torsion_diagrams())
def test_reflection_is_an_involution_and_preserves_cartan_row(d):
    for i in (1, 2):
        e = reflect(d, i)
        assert reflect(e, i) == d
        assert e.vertex(i) == d.vertex(i)
        assert cartan_entry(e.vertex(i), e.q0) == cartan_entry(d.vertex(i), d.q0)


@given(torsion_diagrams())
def test_overlapping_cases_agree(d):
    for i in (1, 2):
        cases = reflection_cases(d, i)
        assert cases, "some case must apply"
        assert len(set(cases.values())) == 1


@given(torsion_diagrams())
def test_torsion_orbits_close_below_n_cubed(d):
    try:
        o = orbit(d, cap=d.group.torsion ** 3 + 1)
    except NotAllReflections:
        return
    for x in range(len(o)):
        for i in (1, 2):
            assert o.r(i, o.r(i, x)) == x
            assert o.a(i, x) == o.a(i, o.r(i, x))


def test_exhaustive_involution_small_moduli():
    for p in (2, 3, 5, 7):
        for n in range(1, 13):
            if n % p == 0:
                continue
            g = UnitGroup(p, n)
            us = g.torsion_units()
            for a in us:
                for b in us:
                    for c in us:
                        d = Diagram(a, b, c)
                        for i in (1, 2):
                            assert reflect(reflect(d, i), i) == d

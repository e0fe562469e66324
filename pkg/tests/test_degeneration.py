from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import HAT_CASES, case_id, hat, hat_surface, triangle, wsa
from qgt.degeneration import (
    NegativeExponent, _power, build_family, degree_data, family_relations, special_biserial_check, tetrahedral_obstruction,
)
from qgt.quiver import spherical_triangulation_quiver, triangle_triangulation_quiver
from qgt.wsa import WSASpec, wsa_relations


def test_triangle_degrees():
    ws, _ = triangle()
    dd = degree_data(ws)
    assert dd.M == 12
    assert dd.u == {"alpha": 3, "beta": 3, "nu": 3, "delta": 3, "rho": 4, "sigma": 4}
    assert set(dd.v.values()) == {2}


@pytest.mark.parametrize("t", [0, 1, 2, Fraction(1, 2)])
def test_triangle_family_has_constant_dimension(t):
    ws, a = triangle()
    assert build_family(ws, t).dim == a.dim == 22


def test_triangle_family_degenerates_to_special_biserial():
    ws, _ = triangle()
    at0 = special_biserial_check(build_family(ws, 0))
    assert at0.passed
    assert set(at0.surviving) == {(x, ws.g(x)) for x in ws.quiver.arrow_names}
    at1 = special_biserial_check(build_family(ws, 1))
    assert not at1.passed and at1.right_violations


def test_relations_at_one_are_the_defining_relations():
    ws, _ = triangle()
    assert list(family_relations(ws, 1).scaled) == list(wsa_relations(ws))


def test_socle_relations_hold_in_the_algebra():
    ws, a = triangle()
    assert all(a.is_zero(e) for e in family_relations(ws, 1).socle)


def test_negative_exponent_at_zero():
    with pytest.raises(NegativeExponent):
        _power(Fraction(0), -1, Fraction)


def test_tetrahedral_obstruction_with_trivial_weights():
    ws, _ = wsa("tetrahedral")
    dd = degree_data(ws)
    assert set(dd.q.values()) == {3} and set(dd.v.values()) == {0}
    rep = tetrahedral_obstruction(ws)
    assert rep.applies and rep.tetrahedral and rep.contradiction is None
    assert set(rep.nonpositive) == set(ws.quiver.arrow_names)


def test_no_obstruction_on_the_triangle():
    ws, _ = triangle()
    rep = tetrahedral_obstruction(ws)
    assert rep.nonpositive == () and not rep.tetrahedral


def test_obstruction_outside_its_range():
    q, fp = spherical_triangulation_quiver()
    ws = WSASpec.make(q, fp, m={"xi": 1, "xi'": 1})
    rep = tetrahedral_obstruction(ws)
    assert rep.nonpositive and not rep.applies


@pytest.mark.parametrize("n,expected", [(2, 48), (3, 52), (4, 56)])
def test_spherical_family_dimension_is_constant(n, expected):
    q, fp = spherical_triangulation_quiver()
    ws = WSASpec.make(q, fp, m={"xi": n, "xi'": 2})
    assert {build_family(ws, t).dim for t in (0, 1, 2)} == {expected}


@pytest.mark.parametrize("case", HAT_CASES, ids=case_id)
def test_hat_families(case):
    ws = hat_surface(*case)
    _, a = hat(*case)
    dd = degree_data(ws)
    assert min(dd.v.values()) >= 1
    assert {build_family(ws, t).dim for t in (0, 1, 2)} == {a.dim}
    assert special_biserial_check(build_family(ws, 0)).passed
    assert not special_biserial_check(build_family(ws, 1)).passed


@settings(max_examples=40, deadline=None)
@given(rho=st.integers(2, 5), sigma=st.integers(2, 5), cyc=st.integers(1, 4))
def test_degrees_are_constant_on_orbits_and_v_is_integral(rho, sigma, cyc):
    q, fp = triangle_triangulation_quiver()
    ws = WSASpec.make(q, fp, m={"rho": rho, "sigma": sigma, "alpha": cyc})
    dd = degree_data(ws)
    for orbit in fp.g_orbits():
        assert len({dd.u[x] for x in orbit}) == 1
    for x in q.arrow_names:
        assert dd.u[x] * dd.q[x] == dd.M
        assert isinstance(dd.v[x], int)
        assert dd.v[x] == dd.M - dd.u[x] - dd.u[ws.f(x)] - dd.u[ws.f(ws.f(x))]

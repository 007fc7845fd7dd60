import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import J, box_integer_points
from tropos.polytrope import (
    DegeneratePolytropeWarning,
    EmptyPolytropeError,
    classical_vertices,
    contains,
    integer_points,
    is_standard_form,
    make_polytrope,
    normalize,
    tropical_vertices,
)
from tropos.trop import MAX_PLUS, MIN_PLUS, TropMatrix, kleene_star, rank_one

HEX = [[0, 1, 2], [4, 0, 3], [2, 1, 0]]


def test_make_polytrope():
    P = make_polytrope(J[4])
    assert P.canonical == TropMatrix(J[4]) and not P.empty
    E = make_polytrope([[0, 1], [-2, 0]])
    assert E.empty and E.witness.weight == -1
    with pytest.raises(EmptyPolytropeError):
        integer_points(E)
    with pytest.raises(ValueError):
        make_polytrope([[0, float("inf")], [0, 0]])


def test_tropical_vertices_hexagon():
    P = make_polytrope(HEX)
    assert sorted(tropical_vertices(P, MAX_PLUS)) == sorted([(-2, -1, 0), (2, 1, 0), (-1, 3, 0)])
    cols = [normalize(tuple(HEX[i][j] for i in range(3))) for j in range(3)]
    assert tropical_vertices(P, MIN_PLUS) == cols


def test_tropical_vertices_pyrope():
    P = make_polytrope(J[4])
    minus_e = [normalize(tuple(-int(i == k) for i in range(4))) for k in range(4)]
    e = [normalize(tuple(int(i == k) for i in range(4))) for k in range(4)]
    assert tropical_vertices(P, MIN_PLUS) == minus_e
    assert tropical_vertices(P, MAX_PLUS) == e


def test_rank_one_polytrope_is_a_point():
    u = (3, -1, 0)
    P = make_polytrope(rank_one(u))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert tropical_vertices(P, MIN_PLUS) == [u]
        assert tropical_vertices(P, MAX_PLUS) == [u]
    assert any(issubclass(w.category, DegeneratePolytropeWarning) for w in caught)
    assert integer_points(P) == [u]
    assert classical_vertices(P) == [tuple(Fraction(x) for x in u)]


def test_integer_points_examples():
    assert len(integer_points(make_polytrope(J[4]))) == 15
    assert len(integer_points(make_polytrope(J[3]))) == 7
    assert integer_points(make_polytrope([[0]])) == [(0,)]


def test_contains():
    assert contains(make_polytrope(J[3]), (0, 0, 0))
    P = make_polytrope(HEX)
    assert contains(P, (2, 3, 0))
    assert not contains(P, (3, 0, 0))


def test_standard_form():
    assert is_standard_form(J[4]) and is_standard_form(HEX)
    assert not is_standard_form([[0] * 3] * 3)


def test_classical_vertices():
    assert len(classical_vertices(make_polytrope(J[4]))) == 14
    assert len(classical_vertices(make_polytrope(J[3]))) == 6
    V = classical_vertices(make_polytrope(HEX))
    assert len(V) == 6
    assert (Fraction(2), Fraction(3), Fraction(0)) in V
    expected = {tuple(Fraction(x) for x in v) for v in [(1, 0, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0)]}
    assert expected <= set(classical_vertices(make_polytrope(J[4])))


polytrope_inputs = st.integers(2, 4).flatmap(
    lambda d: st.lists(st.lists(st.integers(0, 3), min_size=d, max_size=d), min_size=d, max_size=d))


@settings(max_examples=150, deadline=None)
@given(polytrope_inputs)
def test_integer_points_against_box_scan(N):
    d = len(N)
    N = [[0 if i == j else N[i][j] for j in range(d)] for i in range(d)]
    P = make_polytrope(N)
    pts = integer_points(P)
    assert pts == box_integer_points(N, 3 * d)
    assert all(contains(P, u) for u in pts)
    for u in pts:
        for v in pts:
            assert normalize(tuple(map(min, u, v))) in pts
            assert normalize(tuple(map(max, u, v))) in pts
    C = kleene_star(N)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegeneratePolytropeWarning)
        for sr in (MIN_PLUS, MAX_PLUS):
            assert all(contains(P, u) for u in tropical_vertices(P, sr))
    # canonical entries are attained: c_ij = max u_i - u_j
    for i in range(d):
        for j in range(d):
            assert max(u[i] - u[j] for u in pts) == C[i][j]
    for v in classical_vertices(P):
        assert all(v[i] - v[j] <= N[i][j] for i in range(d) for j in range(d))

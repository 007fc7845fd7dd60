import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ref_double_description, ref_polytope_vertices
from tropos import polyhedra as ph
from tropos.orders import region_hrep


def cube(n):
    rows, rhs = [], []
    for i in range(n):
        for s in (1, -1):
            rows.append([s * int(j == i) for j in range(n)])
            rhs.append(1 if s == 1 else 0)
    return ph.HCone.from_rows(n, rows, rhs)


def simplex(n):
    rows = [[-int(j == i) for j in range(n)] for i in range(n)] + [[1] * n]
    return ph.HCone.from_rows(n, rows, [0] * n + [1])


def test_hcone_normalisation():
    H = ph.HCone.from_rows(2, [[2, 4], [1, 2], [0, 0], [Fraction(1, 2), 1]])
    assert H.inequalities == ((1, 2),)
    with pytest.raises(ph.InfeasibleError):
        ph.HCone.from_rows(1, [[0]], [-1])


def test_orthant_rays():
    H = ph.HCone.from_rows(3, [[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
    V = ph.extreme_rays(H)
    assert V.lineality_basis == ()
    assert sorted(V.rays_or_vertices) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_region_lineality():
    assert len(ph.lineality(region_hrep(3))) == 2
    assert len(ph.lineality(region_hrep(4))) == 3
    assert ph.lineality(cube(3)) == []


def test_cube_and_simplex():
    H = cube(3)
    V = ph.polytope_vertices(H)
    assert len(V) == 8
    inc = ph.incidence(H, V)
    assert inc.facet_counts() == [3] * 8
    assert tuple(ph.f_vector(inc)) == (8, 12, 6)
    for n in (2, 3, 4, 5):
        S = simplex(n)
        inc = ph.incidence(S, ph.polytope_vertices(S))
        assert inc.facet_counts() == [n] * (n + 1)
        fv = ph.f_vector(inc)
        assert tuple(fv) == tuple(len(list(itertools.combinations(range(n + 1), k + 1))) for k in range(n))
        assert fv.satisfies_euler()


def test_polytope_errors():
    with pytest.raises(ph.UnboundedError):
        ph.polytope_vertices(ph.HCone.from_rows(2, [[-1, 0], [0, -1]], [0, 0]))
    with pytest.raises(ph.InfeasibleError):
        ph.polytope_vertices(ph.HCone.from_rows(1, [[1], [-1]], [0, -1]))
    with pytest.raises(ValueError):
        ph.polytope_vertices(ph.HCone.from_rows(1, [[1]]))


def test_ray_budget():
    with pytest.raises(ph.ComputationLimitError):
        ph.polytope_vertices(cube(4), max_rays=4)
    assert len(ph.polytope_vertices(cube(4), max_rays=16)) == 16


def test_region_census_d3_rays():
    H = region_hrep(3)
    V = ph.extreme_rays(H)
    assert len(V) == 5
    inc = ph.incidence(H, V)
    assert sorted(inc.facet_counts()) == [3, 3, 4, 4, 4]


def test_orbits_of_fixed_point():
    rep = ph.sd_orbits([(0,) * 6], 3, [0])
    assert rep.table() == [(1, 0)] and rep.total == 1
    with pytest.raises(AssertionError):
        ph.sd_orbits([(1, 0, 0, 0, 0, 0)], 3, [0])


def test_coordinate_permutation_convention():
    # transposition (0 1) sends position (0,2) to (1,2)
    perms = ph.sd_coordinate_permutations(3, [(1, 0, 2)])
    v = (0, 5, 0, 0, 0, 0)  # m_13 = 5
    w = tuple(v[s] for s in perms[0])
    assert w == (0, 0, 0, 5, 0, 0)  # m_23 = 5


def _extreme(H, rays, lin_dim):
    n = H.ambient_dim
    for r in rays:
        tight = [a for a in H.inequalities if sum(x * y for x, y in zip(a, r)) == 0]
        if ph.rank(tight) != n - lin_dim - 1:
            return False
    return True


def _cone_key(lin, rays, n):
    chart = ph.LinealityChart(lin, n)
    return len(lin), sorted({chart.ray(r) for r in rays})


random_cones = st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=1, max_size=9)))


@settings(max_examples=200, deadline=None)
@given(random_cones, st.randoms(use_true_random=False))
def test_double_description_against_reference(cone, rnd):
    n, rows = cone
    H = ph.HCone.from_rows(n, rows)
    if not H.inequalities:
        return
    lin, rays, _ = ph.double_description(H.inequalities, n)
    rlin, rrays = ref_double_description(H.inequalities, n)
    assert _cone_key(lin, rays, n) == _cone_key(rlin, rrays, n)
    assert all(H.contains(r) for r in rays)
    assert _extreme(H, rays, len(lin))
    shuffled = list(H.inequalities)
    rnd.shuffle(shuffled)
    lin2, rays2, _ = ph.double_description(shuffled, n)
    assert _cone_key(lin2, rays2, n) == _cone_key(lin, rays, n)


random_polytopes = st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=n, max_size=n), st.integers(1, 4)),
             min_size=1, max_size=8)))


@settings(max_examples=150, deadline=None)
@given(random_polytopes)
def test_polytope_vertices_against_reference(data):
    n, extra = data
    # a box keeps everything bounded; random cuts contain the origin
    H = ph.HCone.from_rows(n, [list(cube(n).inequalities[k]) for k in range(2 * n)] + [a for a, _ in extra],
                           [4] * (2 * n) + [b for _, b in extra])
    V = ph.polytope_vertices(H)
    assert list(V.rays_or_vertices) == ref_polytope_vertices(H)
    inc = ph.incidence(H, V)
    fv = ph.f_vector(inc)
    assert fv.counts[0] == len(V)
    assert fv.satisfies_euler()


def test_truncated_pyrope_vertices_against_reference():
    from tropos.orders import truncated_hrep
    J3 = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    H = truncated_hrep(J3)
    assert list(ph.polytope_vertices(H).rays_or_vertices) == ref_polytope_vertices(H)


def test_random_row_order_same_truncated_region():
    from tropos.orders import truncated_hrep
    H = truncated_hrep([[0, 2, 1], [1, 0, 2], [2, 1, 0]])
    base = ph.polytope_vertices(H)
    rows = list(zip(H.inequalities, H.rhs))
    random.Random(3).shuffle(rows)
    H2 = ph.HCone.from_rows(H.ambient_dim, [a for a, _ in rows], [b for _, b in rows])
    assert ph.polytope_vertices(H2) == base

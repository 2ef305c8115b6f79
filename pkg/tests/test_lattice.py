import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toriczeta.lattice import (
    SurfaceSingularity, derived_invariants, dual_sequence, embedding_ideal, hj_expand, hj_value,
    resolution_fan, segment_lattice_points, theta_vertices, toric_ideal,
)


@st.composite
def coprime(draw, q_max=200):
    q = draw(st.integers(2, q_max))
    p = draw(st.integers(1, q - 1).filter(lambda p: math.gcd(p, q) == 1))
    return p, q


def _eval(poly_terms, point):
    total = 0
    for c, mono in poly_terms:
        v = c
        for var, e in mono.items():
            v *= point[var] ** e
        total += v
    return total


def test_hj_examples():
    assert list(hj_expand(7, 3)) == [3, 2, 2]
    assert list(hj_expand(5, 2)) == [3, 2]
    assert list(hj_expand(5, 3)) == [2, 3]
    assert list(hj_expand(2, 1)) == [2]


@given(coprime())
def test_hj_value_inverts_expansion(pq):
    p, q = pq
    seq = hj_expand(q, p)
    assert hj_value(seq) == Fraction(q, p)
    assert all(x >= 2 for x in seq)


@given(coprime())
def test_dual_is_involution(pq):
    p, q = pq
    b = hj_expand(q, q - p)
    assert dual_sequence(dual_sequence(b)) == b
    assert dual_sequence(b) == hj_expand(q, p)


@given(coprime())
def test_length_relation(pq):
    p, q = pq
    b, c = list(hj_expand(q, q - p)), list(hj_expand(q, p))
    assert sum(x - 1 for x in b) == sum(x - 1 for x in c) == len(b) + len(c) - 1


@pytest.mark.parametrize("bad", [(0, 3), (3, 3), (2, 4), (5, 3), (-1, 4)])
def test_invalid_singularity(bad):
    with pytest.raises(ValueError):
        SurfaceSingularity(*bad)


@given(coprime())
def test_invariants_consistent(pq):
    res = resolution_fan(pq)
    a, r, b, d = derived_invariants(res)
    assert (a, r, b, d) == (res.a, res.r, res.b, res.d_list)
    assert b == a - r - 1 >= 0
    assert len(d) == r and all(x >= 1 for x in d)


def test_invariant_examples():
    res = resolution_fan((1, 5))
    assert (res.s, res.t, res.a, res.r, res.b, res.d_list) == (4, 1, 2, 1, 0, (2,))
    res = resolution_fan((3, 7))
    assert list(res.b_seq) == [2, 4] and list(res.c_seq) == [3, 2, 2]
    assert res.b == 1


def test_embedding_ideal_form():
    eqs = embedding_ideal([3, 2, 2])
    assert [str(e) for e in eqs] == ["x0*x2 = x1^3", "x1*x3 = x2^2", "x2*x4 = x3^2"]


@given(coprime(60), st.lists(st.integers(0, 6), min_size=2, max_size=2))
def test_toric_ideal_vanishes_on_monomial_parametrization(pq, uv):
    # x_i = s^{u_i[0]} t^{u_i[1]} with s = 2, t = 3 lies on the surface
    p, q = pq
    c = list(resolution_fan(pq).c_seq)
    u = [(1, 0), (0, 1)]
    for ck in c:
        u.append((ck * u[-1][0] - u[-2][0], ck * u[-1][1] - u[-2][1]))
    s, t = Fraction(2 + uv[0]), Fraction(3 + uv[1])
    point = [s ** a * t ** b for a, b in u]
    for eq in toric_ideal(c):
        assert _eval(eq, point) == 0
    for eq in embedding_ideal(c):
        assert _eval(eq.terms(), point) == 0


def test_toric_ideal_cuts_spurious_plane():
    # (2,5): a point with x1 = x2 = 0 satisfies the consecutive binomials only
    c = resolution_fan((2, 5)).c_seq
    point = [1, 0, 0, 1]
    assert all(_eval(eq.terms(), point) == 0 for eq in embedding_ideal(c))
    assert any(_eval(eq, point) != 0 for eq in toric_ideal(c))


def test_segment_points():
    assert segment_lattice_points((0, 0), (4, 6)) == 3
    assert segment_lattice_points((1, 1), (1, 1)) == 1


@given(coprime(80))
def test_theta_dual_vertices_support_edges(pq):
    th = theta_vertices(pq)
    assert th.dual_vertices[0] == (0, 1)
    assert th.dual_vertices[-1] == (pq[1], -pq[0])
    assert len(th.dual_vertices) == len(th.theta_vertices) + 1

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toriczeta import arcs
from toriczeta.arcs import ArcDecomposition, ConeND, check_star, hilbert_basis, jet_from_arc, star_scan
from toriczeta.lattice import coprime_pairs, resolution_fan, toric_ideal
from toriczeta.motivic import L, eval_L
from toriczeta.oracle import stabilized_image_count


def _coords(gens, m):
    # m in the real cone spanned by the simplicial gens
    n = len(gens)
    rows = [[Fraction(gens[j][i]) for j in range(n)] + [Fraction(m[i])] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if rows[r][c] != 0)
        rows[c], rows[piv] = rows[piv], rows[c]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                f = rows[r][c] / rows[c][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return [rows[i][n] / rows[i][i] for i in range(n)]


def brute_hilbert(cone, box):
    gens = cone.dual_generators
    pts = [m for m in itertools.product(range(-box, box + 1), repeat=cone.dim)
           if any(m) and all(x >= 0 for x in _coords(gens, m))]
    pset = set(pts)
    return sorted(m for m in pts
                  if not any(tuple(x - y for x, y in zip(m, a)) in pset for a in pts if a != m))


@pytest.mark.parametrize("cone", [
    arcs.COUNTEREXAMPLE_CONE, ConeND.from_surface(1, 2), ConeND.from_surface(2, 5),
    ConeND.from_surface(3, 7), ConeND([(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
])
def test_hilbert_basis_matches_brute_force(cone):
    assert sorted(hilbert_basis(cone)) == brute_hilbert(cone, 4 if cone.dim == 3 else 8)


def test_counterexample_generators():
    assert sorted(hilbert_basis(arcs.COUNTEREXAMPLE_CONE)) == [(0, 1, 0), (1, 0, 0), (1, 1, 1), (1, 1, 2)]
    assert not arcs.COUNTEREXAMPLE_CONE.is_smooth()


@given(st.sampled_from(list(coprime_pairs(40))))
@settings(max_examples=50, deadline=None)
def test_surface_basis_size(pq):
    assert len(hilbert_basis(ConeND.from_surface(*pq))) == resolution_fan(pq).t + 2


@given(st.sampled_from(list(coprime_pairs(20))), st.integers(1, 12), st.integers(1, 12))
@settings(max_examples=80, deadline=None)
def test_surface_cones_satisfy_star(pq, i, j):
    cone = ConeND.from_surface(*pq)
    nus = list(arcs.interior_vectors(cone, 12))
    nu = nus[(i * 13 + j) % len(nus)]
    r = check_star(cone, nu)
    assert r.satisfied
    assert set(r.minimizers) <= set(hilbert_basis(cone))


def test_star_violation_detail():
    r = check_star(arcs.COUNTEREXAMPLE_CONE, (2, 2, -1))
    assert not r.satisfied and r.basis is None
    assert sorted(r.minimizers) == [(0, 1, 0), (1, 0, 0), (1, 1, 2)]
    assert check_star(arcs.COUNTEREXAMPLE_CONE, (1, 1, 1)).satisfied


def test_interior_vectors_pair_positively():
    cone = arcs.COUNTEREXAMPLE_CONE
    for nu in arcs.interior_vectors(cone, 4):
        assert all(1 <= sum(a * b for a, b in zip(g, nu)) <= 4 for g in cone.dual_generators)


def test_star_scan_rejects_bad_bound():
    with pytest.raises(ValueError):
        star_scan(arcs.COUNTEREXAMPLE_CONE, 0)
    with pytest.raises(ValueError):
        check_star(arcs.COUNTEREXAMPLE_CONE, (0, 0, 1))


def test_jet_from_arc_example():
    cone = ConeND([(1, 0), (0, 1)])
    dec = ArcDecomposition(cone, (1, 2), {(1, 0): (1, 1), (0, 1): (2, 0)})
    assert jet_from_arc(dec, 2) == {(1, 0): [0, 1, 1], (0, 1): [0, 0, 2]}


def _mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= n:
                out[i + j] += x * y
    return out


@given(st.tuples(st.integers(1, 9), st.integers(-9, 9), st.integers(-9, 9)),
       st.tuples(st.integers(1, 9), st.integers(-9, 9), st.integers(-9, 9)),
       st.tuples(st.integers(1, 9), st.integers(-9, 9), st.integers(-9, 9)),
       st.sampled_from([(1, 1, 1), (2, 2, -1), (3, 1, -1), (1, 3, 1)]), st.integers(0, 5))
@settings(max_examples=30, deadline=None)
def test_jets_satisfy_the_binomial(u1, u2, u3, nu, n):
    # generators x1 = (1,0,0), x2 = (0,1,0), x3 = (1,1,1), x4 = (1,1,2) with x1 x2 x4 = x3^2
    cone = arcs.COUNTEREXAMPLE_CONE
    pad = (0,) * n
    u = {(1, 0, 0): u1 + pad, (0, 1, 0): u2 + pad, (1, 1, 1): u3 + pad}
    jet = jet_from_arc(ArcDecomposition(cone, nu, u), n)
    x1, x2, x3, x4 = (jet[g] for g in [(1, 0, 0), (0, 1, 0), (1, 1, 1), (1, 1, 2)])
    assert _mul(_mul(x1, x2, n), x4, n) == _mul(x3, x3, n)


def test_counterexample_class():
    assert arcs.counterexample_class() == L**9 - L**6 + 3 * L**5 - 6 * L**4 + 10 * L**3 - 9 * L**2 + 3 * L
    assert arcs.local_jet_class(arcs.COUNTEREXAMPLE_CONE) == 3 * L**5 - 6 * L**4 + 10 * L**3 - 9 * L**2 + 3 * L


@pytest.mark.parametrize("pq,n", [((1, 2), 1), ((1, 2), 2), ((1, 3), 1), ((1, 3), 2), ((2, 5), 1), ((1, 4), 2)])
def test_local_class_counts_liftable_jets(pq, n):
    res = resolution_fan(pq)
    got = eval_L(arcs.local_jet_class(ConeND.from_surface(*pq), n), 3)
    image, _, _ = stabilized_image_count(toric_ideal(res.c_seq), n, 3, res.t + 2,
                                         patience=2, max_space=10**12)
    assert got == image


def test_smooth_cone_global_class():
    cone = ConeND([(1, 0), (0, 1)])
    assert arcs.global_jet_class(cone, 2) == L**6


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_square_product_count(q):
    assert arcs.square_product_count(q) == Fraction((q - 1) ** 3, 2)
    assert math.gcd(q, 2) == 1

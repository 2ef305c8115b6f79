import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toriczeta.motivic import (
    DenomFactor, L, LaurentPoly, MotivicRational, PolyD, RationalFunctionD, dumps, eval_L,
    laurent_at_pole, mr_equal, proj_class, series_coeffs, substitute_T, topological_limit,
)

laurent = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9), max_size=5).map(LaurentPoly)
factors = st.builds(DenomFactor, st.integers(1, 3), st.integers(-3, 5))
motivic = st.builds(
    MotivicRational,
    st.dictionaries(st.tuples(st.integers(-4, 4), st.integers(0, 3)), st.integers(-5, 5), max_size=4),
    st.lists(factors, max_size=3),
)


@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(laurent, laurent, st.integers(-5, 5).filter(lambda q: q not in (0,)))
def test_eval_is_homomorphism(a, b, q):
    assert eval_L(a * b, q) == eval_L(a, q) * eval_L(b, q)
    assert eval_L(a + b, q) == eval_L(a, q) + eval_L(b, q)


@given(laurent)
def test_laurent_json_round_trip(a):
    assert LaurentPoly.from_json(json.loads(json.dumps(a.to_json()))) == a


@given(motivic)
def test_motivic_json_round_trip(x):
    y = MotivicRational.from_json(json.loads(dumps(x.to_json())))
    assert mr_equal(x, y)
    assert dumps(x.to_json()) == dumps(y.to_json())


@given(motivic, motivic, st.integers(0, 6))
def test_series_of_sum_and_product(x, y, order):
    sx, sy = series_coeffs(x, order), series_coeffs(y, order)
    assert series_coeffs(x + y, order) == [a + b for a, b in zip(sx, sy)]
    prod = [sum((sx[i] * sy[k - i] for i in range(k + 1)), LaurentPoly()) for k in range(order + 1)]
    assert series_coeffs(x * y, order) == prod


@given(motivic, motivic)
def test_mr_equal_detects_rewriting(x, y):
    f = DenomFactor(2, 1)
    widened = MotivicRational((x * MotivicRational({(0, 0): 1, (-1, 2): -1})).num, [*x.den.elements(), f])
    assert mr_equal(x, widened)
    assert mr_equal(x + y, y + x)
    assert not mr_equal(x, x + MotivicRational.one())


def test_geometric_series():
    g = MotivicRational({(0, 0): 1}, [DenomFactor(2, 3)])
    cs = series_coeffs(g, 6)
    assert cs == [LaurentPoly.const(1), LaurentPoly(), L**-3, LaurentPoly(), L**-6, LaurentPoly(), L**-9]


def test_substitute_T_shifts_coefficients():
    x = MotivicRational({(0, 1): 1}, [DenomFactor(1, 1)])
    y = substitute_T(x, 2)
    assert series_coeffs(y, 3) == [LaurentPoly(), L**2, L**3, L**4]


def test_proj_class():
    assert proj_class(2) == 1 + L + L**2
    assert proj_class(-1).is_zero()


def test_topological_limit_simple():
    # (L - 1) / (1 - L^-1 U) with U = L^-d tends to 1/(d + 1)
    x = MotivicRational({(1, 0): 1, (0, 0): -1}, [DenomFactor(1, 1)])
    assert topological_limit(x) == RationalFunctionD(PolyD.const(1), PolyD([1, 1]))


def test_topological_limit_two_factors():
    # (L-1)^2 / ((1 - L^-1 U)(1 - L^-2 U^2)) tends to 1/((d+1)(2d+2))
    num = ((L - 1) * (L - 1)).terms
    x = MotivicRational({(e, 0): c for e, c in num.items()}, [DenomFactor(1, 1), DenomFactor(2, 2)])
    want = RationalFunctionD(PolyD.const(1), PolyD([1, 1]) * PolyD([2, 2]))
    assert topological_limit(x) == want


def test_laurent_at_pole():
    # 1/(d+1)^2 + 3/(d+1) + d
    d = PolyD([0, 1])
    one = PolyD.const(1)
    f = RationalFunctionD(one, PolyD([1, 1]) ** 2) + RationalFunctionD(PolyD.const(3), PolyD([1, 1])) \
        + RationalFunctionD(d)
    info = laurent_at_pole(f, -1)
    assert (info.order, info.leading, info.residue) == (2, 1, 3)
    regular = laurent_at_pole(f, 0)
    assert regular.order == 0 and regular.leading == 4


def test_series_rejects_constant_factor():
    with pytest.raises(ValueError):
        series_coeffs(MotivicRational({(0, 0): 1}, [DenomFactor(0, 1)]), 2)


def test_rational_function_normalizes():
    f = RationalFunctionD(PolyD([2, 2]), PolyD([4, 4]))
    assert f == RationalFunctionD.const(Fraction(1, 2))

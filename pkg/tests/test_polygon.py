"""Polygon calculus and the combinatorial polygons HP and UP."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aswn.errors import EmptyInput, LengthMismatch, OutOfDomain
from aswn.polygon import (
    SlopeMultiset,
    b_u,
    c_sequence,
    from_slopes,
    geq,
    height,
    hodge_polygon,
    lower_hull,
    max_vertical_gap,
    oplus,
    scale_y,
    shift,
    slopes,
    up_polygon,
    y_u,
)

F = Fraction
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def test_hull_examples():
    assert lower_hull([(0, 0), (1, 0), (2, 1)]).vertices == ((0, 0), (1, 0), (2, 1))
    assert lower_hull([(0, 0), (1, 1), (2, 2)]).vertices == ((0, 0), (2, 2))
    assert lower_hull([(0, 0), (1, 5), (2, 1)]).vertices == ((0, 0), (2, 1))
    assert lower_hull([(0, 0), (1, None), (2, 1)]).vertices == ((0, 0), (2, 1))
    with pytest.raises(EmptyInput):
        lower_hull([(0, None)])


def test_slope_examples():
    assert slopes(lower_hull([(0, 0), (2, 1)])) == SlopeMultiset([F(1, 2), F(1, 2)])
    assert from_slopes([0, 1]).vertices == ((0, 0), (1, 0), (2, 1))
    P = oplus(from_slopes([0, 1]), from_slopes([F(1, 2)]))
    assert slopes(P) == SlopeMultiset([0, F(1, 2), 1])
    empty = from_slopes([])
    assert oplus(P, empty) == P


@given(st.lists(rationals, min_size=0, max_size=8))
def test_slope_roundtrip(sl):
    P = from_slopes(sl)
    assert slopes(P) == SlopeMultiset(sl)
    assert from_slopes(slopes(P)) == P


@given(st.lists(st.one_of(st.none(), rationals), min_size=1, max_size=9))
def test_hull_is_below_points_and_convex(ys):
    pts = list(enumerate(ys))
    if all(y is None for y in ys):
        return
    H = lower_hull(pts)
    for x, y in pts:
        if y is not None:
            assert height(H, x) <= y
    for x, y in H.vertices:
        assert ys[x] == y
    sl = H.segment_slopes()
    assert all(s0 < s1 for s0, s1 in zip(sl, sl[1:]))


def bump(sl, extra):
    """A polygon on the same interval lying above from_slopes(sl)."""
    out = sorted(sl)
    if out:
        out[0] = out[0] - extra
        out[-1] = out[-1] + extra
    return out


@settings(max_examples=60)
@given(st.lists(rationals, min_size=1, max_size=6), st.lists(rationals, min_size=1, max_size=6),
       st.fractions(min_value=0, max_value=2, max_denominator=4), st.fractions(min_value=0, max_value=2, max_denominator=4))
def test_oplus_monotone(s1, s2, e1, e2):
    # from_slopes(bump) lies below from_slopes(s) since steeper early/shallower late moves mass down
    P1, Q1 = from_slopes(s1), from_slopes(bump(s1, e1))
    P2, Q2 = from_slopes(s2), from_slopes(bump(s2, e2))
    assert geq(P1, Q1) and geq(P2, Q2)
    assert geq(oplus(P1, P2), oplus(Q1, Q2))


def test_height_shift_scale():
    P = lower_hull([(0, 0), (1, 0), (3, 4)])
    assert height(P, 3) == 4 and height(P, 2) == 2
    assert shift(P, 0) == P
    assert shift(P, F(1, 3)).vertices[0] == (0, F(1, 3))
    assert scale_y(P, F(1, 2)).segment_slopes() == [0, 1]
    with pytest.raises(OutOfDomain):
        height(P, 4)
    with pytest.raises(LengthMismatch):
        geq(P, from_slopes([0]))


def test_y_u_examples():
    assert y_u(3, 1, 2, 1, 0) == 0
    assert y_u(3, 1, 2, 1, 2) == 2
    assert y_u(3, 1, 1, 1, 1) == 1


def test_c_sequence_examples():
    cs = c_sequence(3, 1, 0)
    assert cs.b_u == 1 and cs.take(4) == [0, 2, 4, 6]
    cs = c_sequence(2, 2, 1)
    assert cs.b_u == 2 and cs.take(6) == [1, 2, 4, 5, 7, 8]
    assert c_sequence(3, 1, 1).take(4) == [1, 3, 5, 7]


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.data())
def test_c_sequence_invariants(p, a, data):
    Q = p**a - 1
    u = data.draw(st.integers(0, Q - 1))
    cs = c_sequence(p, a, u)
    b = b_u(p, a, u)
    assert (u * p**b) % Q == u % Q and all((u * p**i) % Q != u for i in range(1, b))
    seq = cs.take(3 * b)
    assert seq == sorted(seq)
    assert seq == [Q * (n // b) + sorted((u * p**i) % Q for i in range(b))[n % b] for n in range(3 * b)]


def test_hodge_examples():
    hp = hodge_polygon(3, 1, 1, 0, 4)
    assert all(height(hp, k) == k * (k - 1) for k in range(5))
    assert height(hodge_polygon(3, 1, 2, 1, 4), 2) == 2
    up = up_polygon(3, 1, 2, 0, 4)
    assert height(up, 0) == 0 and height(up, 2) == 1 and height(up, 1) == F(1, 2)
    assert up_polygon(3, 1, 1, 0, 4) == hodge_polygon(3, 1, 1, 0, 4)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 3), st.integers(1, 6), st.data())
def test_hodge_meets_curve_and_gap(p, a, d, data):
    if d % p == 0:
        return
    u = data.draw(st.integers(0, p**a - 2))
    x_max = 3 * d
    hp, up = hodge_polygon(p, a, d, u, x_max), up_polygon(p, a, d, u, x_max)
    for x in range(x_max + 1):
        assert height(hp, x) == y_u(p, a, d, u, x)
    gap = max_vertical_gap(up, hp)
    assert 0 <= gap <= F(a * d * (p - 1), 8)
    assert geq(up, hp)


def test_gap_examples():
    assert max_vertical_gap(up_polygon(3, 1, 1, 0, 3), hodge_polygon(3, 1, 1, 0, 3)) == 0
    assert max_vertical_gap(up_polygon(3, 1, 2, 0, 4), hodge_polygon(3, 1, 2, 0, 4)) == F(1, 2)


def test_csv_json_roundtrip():
    P = lower_hull([(0, 0), (1, F(1, 3)), (3, 2)])
    assert type(P).from_json(P.to_json()) == P
    assert P.to_csv().splitlines()[0] == "x,y_num,y_den"

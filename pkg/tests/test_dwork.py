"""Artin–Hasse series, tau-series arithmetic, the Dwork matrix and T-adic polygons."""
from fractions import Fraction
from itertools import zip_longest

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aswn.dwork import (
    DworkMatrix,
    SeriesRing,
    _divide_multiplicities,
    _f_lift,
    artin_hasse,
    artin_hasse_product,
    artin_hasse_rational,
    char_series,
    char_series_minors,
    ef_coeffs,
    lower_bound_check,
    nuclear_matrix,
    semilinear_power,
    series_valuation,
    stable_tadic_polygon,
    tadic_np,
    tadic_run,
    unit_leading_term,
)
from aswn.errors import MultiplicityNotDivisible, PrecisionExhausted
from aswn.fields import build_tower
from aswn.lfun import PolyOverFq
from aswn.polygon import Polygon, c_sequence, hodge_polygon, lower_hull, y_u


def exp_series(terms: dict, K: int) -> list[Fraction]:
    """exp of a power series with rational coefficients, through degree K."""
    g = [Fraction(0)] * (K + 1)
    for k, c in terms.items():
        if k <= K:
            g[k] += c
    out = [Fraction(1)] + [Fraction(0)] * K
    # out' = g' out
    for n in range(1, K + 1):
        out[n] = sum(k * g[k] * out[n - k] for k in range(1, n + 1)) / n
    return out


@pytest.mark.parametrize("p,K", [(2, 4), (2, 12), (3, 12), (5, 12), (7, 10)])
def test_artin_hasse_three_routes(p, K):
    rec = artin_hasse_rational(p, K)
    prod = artin_hasse_product(p, K)
    terms, e = {}, 1
    while e <= K:
        terms[e] = Fraction(1, e)
        e *= p
    assert rec == tuple(prod) == tuple(exp_series(terms, K))
    assert rec[0] == rec[1] == 1
    assert all(c.denominator % p for c in rec)


def test_artin_hasse_p2():
    assert artin_hasse_rational(2, 4) == (1, 1, 1, Fraction(2, 3), Fraction(2, 3))
    res = artin_hasse(2, 4, 5)
    assert res[3] * 3 % 32 == 2


RINGS = [(3, 1), (2, 2), (3, 2), (5, 1)]


def rand_series(ring, rng, *shape, sparse=0.0):
    x = rng.integers(0, ring.pM, size=shape + (ring.K, ring.a))
    if sparse:
        x[rng.random(x.shape[:-1]) < sparse] = 0
    return x.astype(np.int64)


@pytest.mark.parametrize("p,a", RINGS)
def test_packed_product_matches_reference(p, a):
    t = build_tower(p, a, 1)
    ring = SeriesRing(t, 9, 4)
    rng = np.random.default_rng(p * 10 + a)
    for _ in range(10):
        x, y = rand_series(ring, rng), rand_series(ring, rng)
        assert np.array_equal(ring.mul(x, y), ring.mul_reference(x, y))
    A, B = rand_series(ring, rng, 3, 4), rand_series(ring, rng, 4, 2)
    ref = np.zeros((3, 2, ring.K, a), dtype=np.int64)
    for i in range(3):
        for j in range(2):
            for k in range(4):
                ref[i, j] = (ref[i, j] + ring.mul_reference(A[i, k], B[k, j])) % ring.pM
    assert np.array_equal(ring.matmul(A, B), ref)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(RINGS), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_berkowitz_matches_minors(pa, n, seed):
    p, a = pa
    ring = SeriesRing(build_tower(p, a, 1), 6, 3)
    rng = np.random.default_rng(seed)
    A = rand_series(ring, rng, n, n, sparse=0.3)
    got = char_series(ring, A, n)
    ref = char_series_minors(ring, A, n)
    assert all(np.array_equal(x, y) for x, y in zip_longest(got, ref))


def test_char_series_small_cases():
    ring = SeriesRing(build_tower(3, 1, 1), 5, 3)
    A = ring.zeros(1, 1)
    A[0, 0, 1, 0] = 4
    r = char_series(ring, A, 3)
    assert len(r) == 2 and np.array_equal(r[0], ring.one())
    assert np.array_equal(r[1], (-A[0, 0]) % ring.pM)
    assert len(char_series(ring, A, 0)) == 1


def test_lower_bound_diagonal():
    t = build_tower(3, 1, 1)
    ring = SeriesRing(t, 12, 3, D=2)  # tau^2 = T
    Dm = ring.zeros(2, 2)
    Dm[0, 0, 2, 0] = 1
    Dm[1, 1, 4, 0] = 1
    assert lower_bound_check(ring, [([2, 4], Dm)], 2)
    rs = char_series(ring, Dm, 2)
    assert [series_valuation(r) for r in rs] == [0, 2, 6]
    assert tadic_np(rs, 2).vertices == ((0, 0), (1, 1), (2, 3))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(3, 1), (2, 2)]), st.integers(2, 4), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_lower_bound_random(pa, n, count, seed):
    p, a = pa
    ring = SeriesRing(build_tower(p, a, 1), 24, 3)
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(count):
        t = sorted(int(x) for x in rng.integers(0, 4, size=n))
        Mp = rand_series(ring, rng, n, n)
        Mi = ring.zeros(n, n)
        for i in range(n):
            Mi[i, :, t[i]:] = Mp[i, :, : ring.K - t[i]]
        mats.append((t, Mi))
    assert lower_bound_check(ring, mats, n)


def f_of(p, a, coeffs):
    t = build_tower(p, a, 1)
    return t, PolyOverFq.from_ints(t, coeffs)


def test_ef_coeffs_single_factor():
    t, f = f_of(3, 1, [0, 1])
    K, M = 21, 5
    E = ef_coeffs(t, _f_lift(t, f, M), 1, 10, K, M)
    lam = artin_hasse(3, 10, M)
    for j in range(11):
        expect = np.zeros((K, 1), dtype=np.int64)
        expect[2 * j, 0] = lam[j]
        assert np.array_equal(E[j], expect)


@pytest.mark.parametrize("p,a,coeffs", [(3, 1, [0, 1, 1]), (2, 2, [0, 1, 0, 1]), (5, 1, [2, 0, 1]), (3, 2, [[0, 1], 1])])
def test_ef_coeffs_decay_and_constant(p, a, coeffs):
    t, f = f_of(p, a, coeffs)
    q, d = t.q, f.degree
    K = 6 * d * (q - 1)
    E = ef_coeffs(t, _f_lift(t, f, 4), d, (K - 1) // (q - 1), K, 4)
    for j in range(E.shape[0]):
        v = series_valuation(E[j])
        assert v is None or v >= j * (q - 1)
    if coeffs[0] == 0:
        assert E[0][0, 0] == 1 and not E[0][0, 1:].any()


@pytest.mark.parametrize("p,a,coeffs,u", [(3, 1, [0, 1], 0), (3, 1, [0, 1], 1), (2, 2, [0, 1, 0, 1], 1), (5, 1, [0, 1, 1], 2)])
def test_nuclear_zero_pattern_and_rows(p, a, coeffs, u):
    t, f = f_of(p, a, coeffs)
    Q = t.q - 1
    n = 6
    N = nuclear_matrix(t, f, u, n, 40, 4)
    cs = c_sequence(p, a, u)
    assert N.c == tuple(cs[i] for i in range(n))
    for r in range(n):
        for s in range(n):
            num = p * N.c[r] - N.c[s]
            if num < 0 or num % Q:
                assert not N.data[r, s].any()
            v = series_valuation(N.data[r, s])
            assert v is None or v >= (p - 1) * N.c[r]
    if coeffs == [0, 1]:
        # f = x: an admissible entry is lambda_j tau^((p-1) c_{n'}) exactly
        lam = artin_hasse(p, 40, 4)
        for r in range(n):
            for s in range(n):
                num = p * N.c[r] - N.c[s]
                e = (p - 1) * N.c[r]
                if num >= 0 and num % Q == 0 and e < 40:
                    expect = np.zeros((40, a), dtype=np.int64)
                    expect[e, 0] = lam[num // Q]
                    assert np.array_equal(N.data[r, s], expect)
    assert N.to_json()["c"] == list(N.c)


def test_semilinear_power_a1_and_conjugation():
    t, f = f_of(3, 1, [0, 1])
    N = nuclear_matrix(t, f, 0, 4, 20, 4)
    assert np.array_equal(semilinear_power(N), N.data)
    t2, f2 = f_of(2, 2, [0, 1, 0, 1])
    N2 = nuclear_matrix(t2, f2, 1, 6, 60, 4)
    ring = N2.ring
    conj = DworkMatrix(ring.sigma(N2.data), N2.c, N2.header, ring)
    P1 = char_series(ring, semilinear_power(N2), 6)
    P2 = char_series(ring, semilinear_power(conj), 6)
    assert [series_valuation(x) for x in P1] == [series_valuation(x) for x in P2]


def test_tadic_examples():
    t, f = f_of(3, 1, [0, 1])
    st1 = stable_tadic_polygon(t, f, 1, k_max=2)
    assert st1.stable and st1.polygon.has_vertex(1, 1) and st1.polygon.has_vertex(2, y_u(3, 1, 1, 1, 2))
    r1 = st1.runs[0]
    assert unit_leading_term(r1.ring, r1.series, 1, 1, 1)
    assert unit_leading_term(r1.ring, r1.series, 0, 1, 1)
    st0 = stable_tadic_polygon(t, f, 0, k_max=3)
    assert st0.stable and all(st0.polygon.has_vertex(k, y_u(3, 1, 1, 0, k)) for k in range(4))
    hp = hodge_polygon(3, 1, 1, 0, st0.polygon.end)
    assert all(st0.polygon(x) >= hp(x) for x in range(st0.polygon.end + 1))


def test_unit_leading_term_guard():
    t, f = f_of(3, 1, [0, 1])
    r = tadic_run(t, f, 1, 3, 4, 3, 4)
    with pytest.raises(PrecisionExhausted):
        unit_leading_term(r.ring, r.series, 2, 1, 1)


def test_hp_bound_a2_every_truncation():
    t, f = f_of(2, 2, [0, 1, 0, 1])
    for n, K in ((12, 113), (24, 226)):
        run = tadic_run(t, f, 1, 12, n, K, 6)
        assert run.hp_ok
        assert (6, 6) in run.certified  # vertex of C^2 at x = 2*3, i.e. (3, y_1(3)) after dividing by b_u = 2


def test_multiplicity_tripwire_and_trivial_series():
    with pytest.raises(MultiplicityNotDivisible):
        _divide_multiplicities(lower_hull([(0, 0), (1, 1), (2, 3)]), 2)
    ring = SeriesRing(build_tower(3, 1, 1), 4, 3)
    assert tadic_np([ring.one()], 2) == Polygon(((0, Fraction(0)),))

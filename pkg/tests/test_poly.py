from fractions import Fraction as F

import pytest

from chainpoly.poly import (
    INF,
    Polynomial,
    falling_factorial,
    falling_transform,
    interlaces,
    is_interlacing_sequence,
    is_real_rooted_in,
    isolate_roots,
    moebius_inverse,
    moebius_substitute,
    squarefree_factorization,
    stirling1_signed,
    stirling2,
    sturm_count,
)

P = Polynomial
t = P.t()


def test_arithmetic_and_normal_form():
    assert P([1, 2, 0, 0]).coeffs == (F(1), F(2))
    assert P().coeffs == () and P().degree == -1
    assert (t + 1) ** 3 == P([1, 3, 3, 1])
    q, r = divmod(t**3 + 1, t + 1)
    assert q == P([1, -1, 1]) and not r
    assert (t**2 - 1) / (t - 1) == t + 1
    assert P([1, 1])(P([0, 2])) == P([1, 2])


def test_string_form():
    assert str(P([0, 1, 6, 6])) == "t+6t^2+6t^3"
    assert str(P([F(1, 2), 0, F(-3, 4)])) == "1/2-(3/4)t^2"
    assert str(P()) == "0"


def test_json_round_trip():
    f = P([F(1, 3), 0, -2])
    assert P.from_json(f.to_json()) == f
    assert f.to_json() == {"coeffs": ["1/3", "0", "-2"]}


def test_sturm_count_examples():
    assert sturm_count(t**2 + 2 * t, -INF, INF) == 2
    assert sturm_count(P([1, 6, 6]), -1, 0) == 2
    assert sturm_count(t**2 + 1, -INF, INF) == 0
    # half-open: (lo, hi]
    assert sturm_count(t * (t + 1), -1, 0) == 1
    with pytest.raises(ValueError, match="undefined root count"):
        sturm_count(P(), 0, 1)


def test_sturm_counts_distinct_roots():
    f = (t + 1) ** 3 * (t - 2)
    assert sturm_count(f, -INF, INF) == 2


def test_real_rooted_in():
    assert is_real_rooted_in(t + 2 * t**2, -1, 0)
    assert is_real_rooted_in(t**5, -1, 0)
    assert not is_real_rooted_in(1 + t + t**2, -1, 0)
    assert not is_real_rooted_in(t + 2, -1, 0)
    assert is_real_rooted_in(P(), -1, 0)
    assert is_real_rooted_in((t + 1) ** 2 * t, -1, 0)


def test_isolate_roots_examples():
    iso = isolate_roots(t * (t + 1))
    assert [(lo, hi, m) for lo, hi, m in iso.intervals] == [(-1, -1, 1), (0, 0, 1)]
    iso = isolate_roots(t + 2 * t**2)
    assert iso.exact_points == (F(-1, 2), F(0))
    iso = isolate_roots(t**3)
    assert iso.intervals == ((F(0), F(0), 3),)
    with pytest.raises(ValueError, match="complex roots present"):
        isolate_roots(t**2 + 1)


def test_isolate_irrational_roots_are_disjoint():
    f = P([1, 6, 6])
    iso = isolate_roots(f)
    (a, b, _), (c, d, _) = iso.intervals
    assert a < b <= c < d
    for lo, hi, _ in iso.intervals:
        assert f(lo) * f(hi) < 0


def test_interlacing_examples():
    assert interlaces(t + 2 * t**2, P([0, 1, 6, 6]))
    assert interlaces(P(), P([0, 1, 6, 6]))
    assert interlaces(t + 1, P())
    # roots -1,-1 against -1,0 satisfy beta_2 <= alpha_1 <= beta_1 and alpha_2 <= beta_2
    assert interlaces((t + 1) ** 2, t * (t + 1))
    assert not interlaces(t**2, (t + 1) ** 2)
    assert not interlaces(t**3, t)


def test_interlacing_sequences():
    assert is_interlacing_sequence([P([1])])
    # (1+t)^2 < t(1+t) < t^2 pairwise, but (1+t)^2 and t^2 fail both ways
    assert interlaces((1 + t) ** 2, t * (1 + t)) and interlaces(t * (1 + t), t**2)
    assert not is_interlacing_sequence([(1 + t) ** 2, t * (1 + t), t**2])
    assert not is_interlacing_sequence([t**2, t * (1 + t), (1 + t) ** 2])
    assert not is_interlacing_sequence([(1 + t) ** 2, t**2])
    assert is_interlacing_sequence([t * (1 + t), t**2])
    assert not is_interlacing_sequence([t**2, t * (1 + t)])


def test_moebius_substitute():
    assert moebius_substitute(t + 2 * t**2, 2) == t + t**2
    assert moebius_substitute(P([1]), 0) == P([1])
    assert moebius_substitute(t, 1) == t
    with pytest.raises(ValueError):
        moebius_substitute(t**3, 2)
    f = P([0, 1, 6, 6])
    assert moebius_inverse(moebius_substitute(f, 3), 3) == f


def test_stirling_numbers():
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]
    assert [stirling1_signed(4, k) for k in range(5)] == [0, -6, 11, -6, 1]


def test_falling_transform():
    assert falling_transform(t**2) == t**2 + t
    assert falling_transform(falling_factorial(3)) == t**3
    assert falling_transform(t**3 - t**2) == t**3 + 2 * t**2
    f = P([3, -1, 4, 1])
    assert falling_transform(falling_transform(f), inverse=True) == f


def test_squarefree_factorization():
    f = (t + 1) ** 3 * t * (t - 2) ** 2
    facs = dict((m, g) for g, m in squarefree_factorization(f))
    assert facs[1] == t
    assert facs[2] == (t - 2)
    assert facs[3] == t + 1

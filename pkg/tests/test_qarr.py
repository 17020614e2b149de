import itertools
import random
from fractions import Fraction as F

import pytest

from chainpoly import fq
from chainpoly.families import FamilySpec, family_rnk
from chainpoly.poly import Polynomial
from chainpoly.qarr import (
    FqArrangement,
    arrangement_theta,
    char_poly,
    char_poly_deletion_contraction,
    check_dn_identity,
    chi_basis,
    critical_count,
    dn_operator,
    flats_and_contractions,
    kernel_tally,
    rq_map,
    theta_expansion,
)

t = Polynomial.t()


def points_count(A):
    """#{x in F_q^n : <a, x> != 0 for every normal a}, i.e. chi(q)."""
    return sum(
        1
        for x in itertools.product(range(A.q), repeat=A.n)
        if all(sum(a * b for a, b in zip(v, x)) % A.q for v in A.normals)
    )


def test_canonicalization():
    A = FqArrangement(3, 2, [(2, 0), (1, 0), (0, 2)])
    assert A.normals == ((0, 1), (1, 0))
    with pytest.raises(ValueError):
        FqArrangement(2, 2, [(0, 0)])
    with pytest.raises(ValueError):
        FqArrangement(4, 2, [(1, 0)])
    assert FqArrangement.from_json(A.to_json()) == A


def test_char_poly_examples():
    assert char_poly(FqArrangement(2, 3, [])) == t**3
    path = FqArrangement(2, 3, [(1, 1, 0), (0, 1, 1)])
    assert char_poly(path) == t * (t - 1) ** 2
    full = FqArrangement(2, 2, [(1, 0), (0, 1), (1, 1)])
    assert char_poly(full) == (t - 1) * (t - 2)


def test_char_poly_counts_points():
    rng = random.Random(1)
    for q, n in ((2, 3), (3, 2), (3, 3), (5, 2)):
        pts = fq.projective_points(n, q)
        for _ in range(8):
            A = FqArrangement(q, n, rng.sample(pts, rng.randint(0, min(6, len(pts)))))
            assert char_poly(A)(q) == points_count(A)
            assert char_poly_deletion_contraction(A) == char_poly(A)


def test_chi_basis():
    assert chi_basis(3, 2, 2) == t * (t - 1) * (t - 2)
    assert chi_basis(4, 0, 7) == t**4
    assert chi_basis(2, 2, 3) == (t - 1) * (t - 3)
    for n in range(1, 11):
        for k in range(n):
            assert chi_basis(n, k + 1, 2) == chi_basis(n, k, 2) - 2**k * chi_basis(n - 1, k, 2)


def test_theta_examples():
    assert theta_expansion(t * (t - 1) ** 2, 3, 2) == [0, F(1, 2), F(1, 2), 0]
    assert theta_expansion(t**3, 3, 5) == [1, 0, 0, 0]
    assert theta_expansion((t - 1) * (t - 2), 2, 2) == [0, 0, 1]
    with pytest.raises(ValueError):
        theta_expansion(t**4, 3, 2)
    with pytest.raises(ValueError):
        theta_expansion(2 * t**3, 3, 2)
    coord = FqArrangement(2, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert arrangement_theta(coord).theta == [0, F(1, 4), F(5, 8), F(1, 8)]


def test_theta_rational_q():
    chi = chi_basis(3, 1, F(1, 2)) * F(1, 3) + chi_basis(3, 3, F(1, 2)) * F(2, 3)
    assert theta_expansion(chi, 3, F(1, 2)) == [0, F(1, 3), 0, F(2, 3)]


def test_critical_examples():
    A = FqArrangement(2, 2, [(1, 0), (0, 1)])
    assert critical_count(A, 1) == 1
    assert critical_count(FqArrangement(3, 2, []), 2) == 3**4
    full = FqArrangement(2, 2, [(1, 0), (0, 1), (1, 1)])
    assert critical_count(full, 2) == 6


def test_kernel_tally_per_flat():
    A = FqArrangement(2, 3, [(1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 1, 1)])
    for m in (1, 2):
        tally = kernel_tally(A, m)
        for F_, con in flats_and_contractions(A):
            mask = sum(1 << A.normals.index(v) for v in F_)
            assert tally.get(mask, 0) == char_poly(con)(2**m)


def test_dn_operator():
    f = chi_basis(3, 1, 2)
    assert dn_operator(f, 3, 2) == 4 * t**2
    assert dn_operator(t**5, 5, 3) == 0
    assert dn_operator(Polynomial([1]), 1, 3) == Polynomial([-2])
    for n in range(1, 7):
        for k in range(1, n + 1):
            q = 3
            assert dn_operator(chi_basis(n, k, q), n, q) == chi_basis(n - 1, k - 1, q) * (q ** (n - 1) * (q**k - 1))


def test_rq_map():
    assert rq_map(t**2, 2) == 1 + 3 * t + t**2
    assert rq_map(Polynomial([1]), 2) == Polynomial([1])
    assert rq_map(t * (t - 1), 2) == 2 * t + t**2
    for q in (2, 3, F(1, 2)):
        spec = FamilySpec("gaussian", 8, q=q)
        for n in range(9):
            for k in range(n + 1):
                assert rq_map(chi_basis(n, k, q), q) == family_rnk(spec, n, k)


def test_flats():
    one = flats_and_contractions(FqArrangement(2, 2, [(1, 0)]))
    assert [F_ for F_, _ in one] == [(), ((1, 0),)]
    assert one[1][1].n == 1
    assert len(flats_and_contractions(FqArrangement(2, 2, []))) == 1
    u23 = flats_and_contractions(FqArrangement(2, 2, [(1, 0), (0, 1), (1, 1)]))
    assert [len(F_) for F_, _ in u23] == [0, 1, 1, 1, 3]


def test_dn_identity_random():
    rng = random.Random(4)
    for q, n in ((2, 3), (3, 2), (3, 3)):
        pts = fq.projective_points(n, q)
        for _ in range(6):
            A = FqArrangement(q, n, rng.sample(pts, rng.randint(0, min(5, len(pts)))))
            assert check_dn_identity(A)

from fractions import Fraction as F

import pytest

from chainpoly.families import (
    FamilySpec,
    explicit_poset,
    factorial_function,
    family_lambda,
    family_lambda_table,
    family_matrix,
    family_rnk,
    rogers_szego,
)
from chainpoly.fq import q_binomial
from chainpoly.poly import Polynomial, stirling2
from chainpoly.poset import extract_matrix
from chainpoly.tnmat import matrix_from_lambda, whitney_reduce

t = Polynomial.t()

SPECS = [
    ("boolean", {}),
    ("gaussian", {"q": 2}),
    ("gaussian", {"q": 3}),
    ("gaussian", {"q": F(1, 2)}),
    ("cubical", {"r": 2}),
    ("cubical", {"r": 3}),
    ("cubical", {"r": 4}),
    ("partition", {}),
]


def test_parse_and_label():
    assert FamilySpec.parse("gaussian:3", 4) == FamilySpec("gaussian", 4, q=3)
    assert FamilySpec.parse("cubical:2", 4).label() == "cubical:2"
    assert FamilySpec.parse("gaussian:1/2", 2).label() == "gaussian:1/2"
    with pytest.raises(ValueError):
        FamilySpec.parse("boolean:2", 3)
    with pytest.raises(ValueError):
        FamilySpec("mystery", 3)
    with pytest.raises(ValueError):
        FamilySpec("cubical", 3, r=0)


def test_matrix_examples():
    assert family_matrix(FamilySpec("gaussian", 2, q=2)).dense()[2] == [1, 3, 1]
    assert family_matrix(FamilySpec("cubical", 2, r=2)).dense()[2] == [1, 2, 1]
    assert family_matrix(FamilySpec("partition", 3)).dense()[3] == [1, 7, 6, 1]


def test_rnk_examples():
    assert family_rnk(FamilySpec("boolean", 2), 2, 1) == t * (1 + t)
    assert family_rnk(FamilySpec("gaussian", 2, q=2), 2, 1) == 2 * t + t**2
    assert family_rnk(FamilySpec("partition", 2), 2, 1) == t**2 + 2 * t


def test_lambda_examples():
    assert family_lambda(FamilySpec("cubical", 5, r=3), 4, 2) == 3
    assert family_lambda(FamilySpec("partition", 6), 5, 2) == 3
    assert family_lambda(FamilySpec("gaussian", 4, q=2), 3, 2) == 4


@pytest.mark.parametrize("kind,kw", SPECS)
def test_closed_forms_match_reduction(kind, kw):
    spec = FamilySpec(kind, 8, **kw)
    cert = whitney_reduce(family_matrix(spec))
    assert cert.lam == family_lambda_table(spec)
    for n in range(9):
        for k in range(n + 1):
            assert cert.R(n, k) == family_rnk(spec, n, k)


def test_cubical_r1_uses_unnormalized_weights():
    spec = FamilySpec("cubical", 6, r=1)
    # the closed-form table has zeros above nonzero entries, so it is not the normalized output
    assert matrix_from_lambda(family_lambda_table(spec)).dense() == family_matrix(spec).dense()


@pytest.mark.parametrize(
    "spec,n",
    [
        (FamilySpec("boolean", 5), 5),
        (FamilySpec("gaussian", 3, q=2), 3),
        (FamilySpec("gaussian", 2, q=3), 2),
        (FamilySpec("cubical", 4, r=2), 4),
        (FamilySpec("cubical", 3, r=3), 3),
        (FamilySpec("partition", 4), 4),
    ],
)
def test_explicit_posets_match(spec, n):
    Q = explicit_poset(spec, n)
    assert extract_matrix(Q).dense() == family_matrix(FamilySpec(spec.kind, n, q=spec.q, r=spec.r)).dense()


def test_explicit_poset_sizes():
    assert explicit_poset(FamilySpec("gaussian", 2, q=2), 2).size == 5
    C = explicit_poset(FamilySpec("cubical", 2, r=2), 2)
    assert C.size == 4 and C.rank_generating() == Polynomial([1, 2, 1])
    assert explicit_poset(FamilySpec("partition", 2), 2).size == 5
    with pytest.raises(ValueError):
        explicit_poset(FamilySpec("partition", 9), 9)


def test_rogers_szego():
    assert rogers_szego(2, 2) == 1 + 3 * t + t**2
    assert rogers_szego(0, 5) == Polynomial([1])
    assert rogers_szego(3, 1) == (1 + t) ** 3
    for n in range(6):
        assert rogers_szego(n, 3) == Polynomial([q_binomial(n, k, 3) for k in range(n + 1)])


def test_factorial_identity():
    for spec in (FamilySpec("boolean", 7), FamilySpec("gaussian", 7, q=2)):
        R = family_matrix(spec)
        B = [factorial_function(spec, n) for n in range(8)]
        for n in range(8):
            for k in range(n + 1):
                assert R[n, k] == B[n] / (B[k] * B[n - k])


def test_partition_matrix_is_stirling():
    R = family_matrix(FamilySpec("partition", 7))
    assert all(R[n, k] == stirling2(n + 1, k + 1) for n in range(8) for k in range(n + 1))

import itertools

import pytest

from chainpoly import fq
from chainpoly.poly import Polynomial
from chainpoly.qposet import (
    QMatroid,
    QPoset,
    find_shelling,
    independent_spaces,
    is_shelling,
    q_h_vector,
    shelling_increments,
    verify_q_matroid,
)

P = Polynomial
t = P.t()

H1 = [(1, 0, 0), (0, 1, 0)]
H2 = [(1, 0, 0), (0, 0, 1)]
TWO_HYPERPLANES = QPoset.generated_by(2, 3, [H1, H2])
# two planes of F_2^4 that meet only in 0
SKEW = QPoset.generated_by(2, 4, [[(1, 0, 0, 0), (0, 1, 0, 0)], [(0, 0, 1, 0), (0, 0, 0, 1)]])


def test_closure_validation():
    with pytest.raises(ValueError, match="closed"):
        QPoset(2, 2, [((1, 0),)])
    assert TWO_HYPERPLANES.rank_generating() == P([1, 5, 2])
    assert QPoset.from_json(TWO_HYPERPLANES.to_json()).spaces == TWO_HYPERPLANES.spaces


def test_hyperplane_shellings():
    for order in itertools.permutations(TWO_HYPERPLANES.facets):
        assert is_shelling(TWO_HYPERPLANES, order).ok
    assert find_shelling(TWO_HYPERPLANES).ok
    single = QPoset.generated_by(2, 3, [H1])
    assert is_shelling(single, single.facets).ok


def test_skew_planes_not_shellable():
    for order in itertools.permutations(SKEW.facets):
        res = is_shelling(SKEW, order)
        assert not res.ok and res.failed_step == 1 and res.witness == ()
    assert not find_shelling(SKEW).ok


def test_non_pure_rejected():
    mixed = QPoset.generated_by(2, 3, [H1, [(0, 0, 1)]])
    with pytest.raises(ValueError, match="pure"):
        is_shelling(mixed, mixed.facets)
    with pytest.raises(ValueError):
        is_shelling(TWO_HYPERPLANES, TWO_HYPERPLANES.facets[:1])


def test_q_h_vectors():
    assert q_h_vector(TWO_HYPERPLANES).h == [1, 1, 0]
    assert q_h_vector(QPoset.generated_by(3, 3, [H1])).h == [1, 0, 0]
    U = independent_spaces(QMatroid.uniform(2, 1, 2))
    assert len(U.spaces) == 4
    assert q_h_vector(U).h == [1, 2]


def test_q_matroid_axioms():
    assert verify_q_matroid(QMatroid.uniform(3, 2, 2))[0]
    assert verify_q_matroid(QMatroid(3, 2, len))[0]
    ok, witness = verify_q_matroid(QMatroid(2, 3, lambda s: int(len(s) == 3)))
    assert not ok and witness[0] in ("monotone", "submodular")
    with pytest.raises(ValueError):
        QMatroid(5, 3, len)


def test_independent_spaces():
    free = independent_spaces(QMatroid(2, 2, len))
    assert free.spaces == frozenset(fq.all_subspaces(2, 2))
    U = independent_spaces(QMatroid.uniform(3, 2, 2))
    assert U.rank_generating() == P([1, 7, 7])
    res = find_shelling(U)
    assert res.ok and is_shelling(U, res.order).ok
    assert all(x >= 0 for x in q_h_vector(U).h)


def test_shelling_increments_match_images():
    for Q in (TWO_HYPERPLANES, independent_spaces(QMatroid.uniform(3, 2, 2))):
        order = find_shelling(Q).order
        steps = shelling_increments(Q, order)
        total = P([])
        for inc, image in steps:
            assert inc == image
            total = total + inc
        assert total == Q.rank_generating()

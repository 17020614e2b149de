import itertools
from fractions import Fraction as F

import pytest

from chainpoly.cubical import (
    Z,
    CubicalComplex,
    adin_equivalence_check,
    adin_h,
    ambient_complex,
    ambient_facets,
    boundary_of_square,
    complex_h,
    cubical_certificate,
    cubical_shelling_check,
    r_cubical_h,
    single_cube,
)
from chainpoly.families import FamilySpec, family_rnk
from chainpoly.poly import Polynomial

P = Polynomial
t = P.t()


def test_single_cube():
    sq = single_cube(2, 2)
    assert sq.f_polynomial() == P([1, 2, 1])
    assert complex_h(sq).h == [1, 0, 0]
    assert adin_h(sq.f_polynomial(), 2) == [1, 0, 0]
    assert adin_equivalence_check(sq.f_polynomial(), 2)
    for n, r in ((3, 2), (3, 3), (4, 2)):
        C = single_cube(n, r)
        assert C.f_polynomial() == family_rnk(FamilySpec("cubical", n, r=r), n, 0)
        assert complex_h(C).h == [1] + [0] * n
        assert cubical_shelling_check(C).ok


def test_boundary_of_square():
    B = boundary_of_square()
    assert B.f_polynomial() == P([1, 4, 4])
    assert complex_h(B).h == [1, 2, 1]
    assert adin_h(B.f_polynomial(), 2) == [1, 1, 1]
    assert adin_equivalence_check(B.f_polynomial(), 2)


def test_glued_squares():
    # two rank-2 edges sharing a vertex
    C = ambient_complex(2, 2, [(Z, 1), (1, Z)])
    assert C.f_polynomial() == P([1, 3, 2])
    assert complex_h(C).h == [1, 1, 0]


def test_errors():
    with pytest.raises(ValueError, match="degenerate"):
        r_cubical_h(P([1, 2, 1]), 2, 1)
    with pytest.raises(ValueError):
        adin_h(t**2, 2)
    with pytest.raises(ValueError):
        adin_h(P([1, 1, 0, 5]), 2)
    with pytest.raises(ValueError):
        CubicalComplex(2, 2, [{(1,): "a", (2,): "b"}])


def test_adin_agrees_on_synthesized_f():
    for n in (2, 3, 4):
        cert = cubical_certificate(n, 2)
        for h in itertools.product(range(3), repeat=n):
            hv = (1,) + h
            f = sum((cert.R(n, k) * c for k, c in enumerate(hv)), P([]))
            assert r_cubical_h(f, n, 2).h == list(hv)
            assert adin_equivalence_check(f, n)


def test_shelling_cyclic_square():
    B = boundary_of_square()
    # facets: (z,1), (1,z), (z,2), (2,z); cyclic order around the square
    res = cubical_shelling_check(B, [0, 1, 2, 3])
    assert res.ok and res.h == [1, 2, 1]
    assert res.types == [[0, 1, 0], [0, 1, 0], [0, 0, 1]]


def test_shelling_opposite_edges_fail():
    B = boundary_of_square()
    res = cubical_shelling_check(B, [0, 2, 1, 3])
    assert not res.ok and res.failed_step == 1
    assert "bottom" in res.reason


def test_shelling_ambient_rank3():
    # the four side faces of a 4-dimensional box, i.e. a cylinder
    facets = [f for f in ambient_facets(3, 2, 3) if f[0] == Z]
    C = ambient_complex(3, 2, facets)
    # an annulus: the last face always attaches along two opposite edges
    assert not any(cubical_shelling_check(C, list(o)).ok for o in itertools.permutations(range(4)))
    strip = ambient_complex(3, 2, [facets[0], facets[2], facets[1]])
    res = cubical_shelling_check(strip)
    assert res.ok and res.types == [[1, 1, 0], [1, 1, 0]]
    assert all(x >= 0 for x in res.h)


def test_json_round_trip():
    B = boundary_of_square()
    B2 = CubicalComplex.from_json(B.to_json())
    assert B2.f_polynomial() == B.f_polynomial()
    amb = CubicalComplex.from_json({"r": 2, "n": 2, "ambient": 2, "facets": [["z", 1], [1, "z"]]})
    assert amb.f_polynomial() == P([1, 3, 2])
    assert F(1) == complex_h(amb).h[0]

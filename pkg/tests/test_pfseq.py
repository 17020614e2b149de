from fractions import Fraction as F

import pytest

from chainpoly.chain import chain_polynomials
from chainpoly.pfseq import (
    PFGenFun,
    convolution_polynomials,
    forgacs_tran,
    is_pf_polynomial_values,
    pft_family,
    series_coeffs,
)
from chainpoly.poly import Polynomial, interlaces, is_real_rooted_in
from chainpoly.tnmat import is_tn, toeplitz

P = Polynomial
t = P.t()


def test_series_examples():
    assert series_coeffs(PFGenFun(gamma=1), 4) == [1, 1, F(1, 2), F(1, 6), F(1, 24)]
    assert series_coeffs(PFGenFun(betas=(1,)), 4) == [1] * 5
    assert series_coeffs(PFGenFun(alphas=(1, 1), N=1), 5) == [0, 1, 2, 1, 0, 0]
    assert series_coeffs(PFGenFun(C=3, betas=(F(1, 2),)), 3) == [3, F(3, 2), F(3, 4), F(3, 8)]


def test_gen_fun_validation_and_json():
    with pytest.raises(ValueError):
        PFGenFun(alphas=(-1,))
    with pytest.raises(ValueError):
        PFGenFun(C=-1)
    f = PFGenFun(C="1/2", gamma=2, alphas=(1,), betas=("1/3",), N=2)
    assert PFGenFun.from_json(f.to_json()) == f
    g = PFGenFun.from_json({"C": "1", "N": 0, "gamma": "0", "alphas": ["1", "1"], "betas": []})
    assert series_coeffs(g, 3) == [1, 2, 1, 0]


def test_pft_examples():
    rs, cert = pft_family(PFGenFun(betas=(1,)), 8)
    assert rs[0] == P([1])
    for n in range(1, 9):
        assert rs[n] == t * (1 + t) ** (n - 1)
    assert cert.ok and cert.interval == (-1, 0)
    rs, cert = pft_family(PFGenFun(gamma=1), 12)
    assert cert.ok
    with pytest.raises(ValueError, match="shift required"):
        pft_family(PFGenFun(N=1, betas=(1,)), 3)


def test_pft_matches_toeplitz_chain_polynomials():
    f = PFGenFun(alphas=(1, 2), betas=(F(1, 3),), gamma=F(1, 2))
    a = series_coeffs(f, 8)
    rs, _ = pft_family(f, 8)
    assert list(rs) == list(chain_polynomials(toeplitz(a, 8)).polys)


def test_toeplitz_of_pf_series_is_tn():
    for f in (PFGenFun(alphas=(1, 1)), PFGenFun(betas=(F(1, 2), 1)), PFGenFun(gamma=1, alphas=(3,))):
        a = series_coeffs(f, 8)
        assert is_tn(toeplitz([x / a[0] for x in a], 8))


def test_forgacs_tran_examples():
    qs, cert = forgacs_tran(1 - t, 1, 6)
    assert all(q == (1 + t) ** n for n, q in enumerate(qs))
    qs, _ = forgacs_tran((1 - t) ** 2, 1, 3)
    assert qs[2] == t**2 + 4 * t + 3
    qs, _ = forgacs_tran(1 - t, 2, 0)
    assert qs == [P([1])]
    with pytest.raises(ValueError):
        forgacs_tran(1 - t, 0, 3)
    with pytest.raises(ValueError):
        forgacs_tran(1 + t, 1, 3)
    with pytest.raises(ValueError):
        forgacs_tran(t - 1, 1, 3)


def test_forgacs_tran_shift_identity():
    # q_n = r_{n+r} / t for the polynomials generated by 1 / (1 - t x^r / Q(x))
    for Q, roots in (((1 - t) * (1 - t / 2), (1, 2)), ((1 - t) ** 3, (1, 1, 1))):
        for r in (1, 2, 3):
            qs, _ = forgacs_tran(Q, r, 10)
            f = PFGenFun(C=1 / Q[0], N=r, betas=tuple(F(1, x) for x in roots))
            rs = convolution_polynomials(series_coeffs(f, 10 + r), 10 + r)
            for n in range(11):
                assert rs[n + r] == qs[n].shift_up(1)


def test_pf_polynomial_values():
    ok, h = is_pf_polynomial_values(t**2)
    assert ok and h == t + t**2
    ok, h = is_pf_polynomial_values(P([1]))
    assert ok and h == P([1])
    ok, h = is_pf_polynomial_values(t**2 - t + 1)
    assert not ok and h == 1 - 2 * t + 3 * t**2
    ok, h = is_pf_polynomial_values(t**3)
    assert ok and h == t + 4 * t**2 + t**3


def test_certificates_interlace():
    rs, _ = pft_family(PFGenFun(alphas=(1, 1, 2)), 10)
    for a, b in zip(rs, rs[1:]):
        assert interlaces(a, b)
        assert is_real_rooted_in(b, -1, 0)

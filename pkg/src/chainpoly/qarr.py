"""Hyperplane arrangements over F_q and their characteristic polynomials."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import fq
from .poly import Polynomial, frac_str
from .tnmat import ResolutionCertificate


@dataclass(frozen=True)
class FqArrangement:
    """Hyperplanes {x : <a, x> = 0} in F_q^n given by projective normals."""

    q: int
    n: int
    normals: tuple

    def __init__(self, q: int, n: int, normals: Iterable[Sequence[int]]):
        fq.check_prime(q)
        canon = set()
        for v in normals:
            if len(v) != n:
                raise ValueError(f"normal {list(v)} has wrong length")
            if not any(x % q for x in v):
                raise ValueError("zero normal vector")
            canon.add(fq.canonical_vector(v, q))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "normals", tuple(sorted(canon)))

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "normals": [list(v) for v in self.normals]}

    @classmethod
    def from_json(cls, obj: dict) -> "FqArrangement":
        return cls(int(obj["q"]), int(obj["n"]), [tuple(v) for v in obj["normals"]])


def char_poly(A: FqArrangement) -> Polynomial:
    """sum over subsets S of (-1)^|S| t^{dim of the intersection}."""
    q, n = A.q, A.n
    coeffs = [0] * (n + 1)
    normals = A.normals

    def walk(i: int, basis: tuple, size: int):
        if i == len(normals):
            coeffs[n - len(basis)] += -1 if size % 2 else 1
            return
        walk(i + 1, basis, size)
        v = normals[i]
        if fq.contains(basis, v, q):
            walk(i + 1, basis, size + 1)
        else:
            walk(i + 1, fq.rref(list(basis) + [v], q), size + 1)

    walk(0, (), 0)
    return Polynomial(coeffs)


def contract(A: FqArrangement, flat_normals: Sequence) -> FqArrangement:
    """Contraction by the span of ``flat_normals``: the images of the other
    normals in F_q^n / span."""
    space = fq.rref(flat_normals, A.q)
    f, m = fq.quotient_map(space, A.n, A.q)
    imgs = []
    for v in A.normals:
        w = f(v)
        if any(w):
            imgs.append(w)
    return FqArrangement(A.q, m, imgs)


def char_poly_deletion_contraction(A: FqArrangement) -> Polynomial:
    """chi_B = chi_{B - e} - chi_{B / e}, recursively."""
    return _dc(A.q, A.n, A.normals)


@lru_cache(maxsize=None)
def _dc(q: int, n: int, normals: tuple) -> Polynomial:
    if not normals:
        return Polynomial.monomial(n)
    e = normals[-1]
    rest = FqArrangement(q, n, normals[:-1])
    con = contract(FqArrangement(q, n, normals), [e])
    return _dc(q, n, rest.normals) - _dc(q, con.n, con.normals)


def chi_basis(n: int, k: int, q: int) -> Polynomial:
    """t^{n-k} (t - 1)(t - q) ... (t - q^{k-1})."""
    p = Polynomial.monomial(n - k)
    for i in range(k):
        p = p * Polynomial((-(q**i), 1))
    return p


def theta_expansion(chi: Polynomial, n: int, q) -> list[Fraction]:
    """Coefficients theta_k with chi = sum_k theta_k chi_{n,k}.

    The basis element chi_{n,k} has lowest term (-1)^k q^{k(k-1)/2} t^{n-k},
    so the system is solved from the constant term upward.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    if chi.degree != n:
        raise ValueError(f"degree {chi.degree} differs from n = {n}")
    if chi.leading != 1:
        raise ValueError("characteristic polynomials are monic")
    rest = chi
    theta = [Fraction(0)] * (n + 1)
    for k in range(n, -1, -1):
        d = n - k
        low = Fraction((-1) ** k * q ** (k * (k - 1) // 2))
        theta[k] = rest[d] / low
        if theta[k]:
            rest = rest - chi_basis(n, k, q) * theta[k]
    if rest:
        raise ArithmeticError("expansion left a remainder")
    return theta


@dataclass
class ThetaReport:
    chi: Polynomial
    theta: list

    def to_json(self) -> dict:
        return {"chi": str(self.chi), "theta": [frac_str(x) for x in self.theta]}


def arrangement_theta(A: FqArrangement) -> ThetaReport:
    """Expansion of chi_A with the expected sign and sum checks."""
    chi = char_poly(A)
    th = theta_expansion(chi, A.n, A.q)
    if any(x < 0 for x in th) or sum(th) != 1 or th[0] != chi(1):
        raise AssertionError("theta expansion violates nonnegativity or normalization")
    return ThetaReport(chi, th)


def _functional_kernels(A: FqArrangement) -> list[int]:
    """For each functional on F_q^n, the bitmask of normals it kills."""
    q, n = A.q, A.n
    out = []
    for ell in itertools.product(range(q), repeat=n):
        m = 0
        for i, v in enumerate(A.normals):
            if sum(a * b for a, b in zip(ell, v)) % q == 0:
                m |= 1 << i
        out.append(m)
    return out


def kernel_tally(A: FqArrangement, m: int) -> dict[int, int]:
    """For every linear map F_q^n -> F_q^m, the set of normals in its kernel,
    tallied by bitmask.  Enumerates all q^{nm} maps."""
    if A.q ** (A.n * m) > 1 << 24:
        raise ValueError("enumeration too large; cap is q^(nm) <= 2^24")
    kers = _functional_kernels(A)
    full = (1 << len(A.normals)) - 1
    tally = {full: 1}
    for _ in range(m):
        nxt: dict[int, int] = {}
        for mask, c in tally.items():
            for k in kers:
                key = mask & k
                nxt[key] = nxt.get(key, 0) + c
        tally = nxt
    return tally


def critical_count(A: FqArrangement, m: int) -> int:
    """#{phi in Hom(F_q^n, F_q^m) : no normal lies in ker phi}."""
    return kernel_tally(A, m).get(0, 0)


def dn_operator(f: Polynomial, n: int, q: int) -> Polynomial:
    """f(q t) - q^n f(t)."""
    return f.scale_var(q) - f * (q**n)


def rq_map(f: Polynomial, q) -> Polynomial:
    """Linear map t^n -> R_n(t).

    ``q`` is either a number (Rogers-Szego polynomials R^q_n) or a
    certificate whose row polynomials are used instead.
    """
    from .families import rogers_szego

    out = Polynomial()
    for n, c in enumerate(f.coeffs):
        if c:
            row = q.R(n, 0) if isinstance(q, ResolutionCertificate) else rogers_szego(n, q)
            out = out + row * c
    return out


def flats(A: FqArrangement) -> list[tuple]:
    """All flats as sorted tuples of normals (closed under span)."""
    q = A.q
    normals = A.normals

    def closure(sub):
        sp = fq.rref(sub, q) if sub else ()
        return tuple(v for v in normals if fq.contains(sp, v, q))

    seen = {closure([])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for F in frontier:
            for v in normals:
                if v not in F:
                    G = closure(list(F) + [v])
                    if G not in seen:
                        seen.add(G)
                        nxt.append(G)
        frontier = nxt
    return sorted(seen, key=lambda F: (len(F), F))


def flats_and_contractions(A: FqArrangement) -> list[tuple[tuple, FqArrangement]]:
    return [(F, contract(A, F) if F else A) for F in flats(A)]


def check_dn_identity(A: FqArrangement) -> bool:
    """D_n chi_M = sum over flats F of chi_{M/F}(q) (chi_F - chi_M)."""
    q, n = A.q, A.n
    chi = char_poly(A)
    lhs = dn_operator(chi, n, q)
    rhs = Polynomial()
    for F, con in flats_and_contractions(A):
        chi_F = char_poly(FqArrangement(q, n, F))
        rhs = rhs + (chi_F - chi) * char_poly(con)(q)
    return lhs == rhs

"""Cubical complexes built from r-cubes and their h-vectors.

The rank-n r-cube is {0^} together with ({z} u [r])^{n-1} under the product
order in which every i in [r] lies below z; the rank of a tuple is
1 + (number of z coordinates).  Here z is encoded as 0.  A complex is a list
of facet charts, each mapping every tuple of the cube to a global label.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Optional, Sequence

from .chain import InvariantViolation
from .families import FamilySpec, cube_elements, family_rnk
from .poly import Polynomial, frac_str
from .poset import FinitePoset, HVector, expand_in_basis
from .tnmat import rnk_from_lambda, ResolutionCertificate

Z = 0


def _cube_leq(a: tuple, b: tuple) -> bool:
    return all(x == y or y == Z for x, y in zip(a, b))


def _cube_rank(c: tuple) -> int:
    return 1 + sum(1 for x in c if x == Z)


def _coord_str(c: tuple) -> str:
    return ",".join("z" if x == Z else str(x) for x in c)


def _parse_coord(s: str) -> tuple:
    if s in ("", "()"):
        return ()
    return tuple(Z if x.strip() == "z" else int(x) for x in s.split(","))


class CubicalComplex:
    def __init__(self, r: int, n: int, charts: Sequence[dict]):
        if r < 1 or n < 1:
            raise ValueError("need r >= 1 and n >= 1")
        self.r, self.n = r, n
        cube = cube_elements(n, r)
        self.charts = []
        for ch in charts:
            ch = {tuple(k): v for k, v in ch.items()}
            if set(ch) != set(cube):
                raise ValueError("chart must cover every element of the cube exactly once")
            if len(set(ch.values())) != len(ch):
                raise ValueError("chart is not injective")
            self.charts.append(ch)
        self._poset = None

    @property
    def num_facets(self) -> int:
        return len(self.charts)

    def poset(self) -> FinitePoset:
        if self._poset is not None:
            return self._poset
        labels: list = ["0^"]
        index: dict = {}
        covers = set()
        rank_of: dict = {}
        for ch in self.charts:
            for c, lab in ch.items():
                if lab not in index:
                    index[lab] = len(labels)
                    labels.append(lab)
                if rank_of.setdefault(lab, _cube_rank(c)) != _cube_rank(c):
                    raise ValueError(f"label {lab!r} has inconsistent ranks")
        for ch in self.charts:
            for c, lab in ch.items():
                if all(x != Z for x in c):
                    covers.add((0, index[lab]))
                for i, x in enumerate(c):
                    if x != Z:
                        covers.add((index[lab], index[ch[c[:i] + (Z,) + c[i + 1 :]]]))
        P = FinitePoset(len(labels), covers, [str(x) for x in labels])
        for ch in self.charts:
            top = index[ch[tuple([Z] * (self.n - 1))]]
            if bin(P.down[top]).count("1") != len(ch) + 1:
                raise ValueError("a facet's ideal is not a cube")
        self._poset = P
        return P

    def f_polynomial(self) -> Polynomial:
        return self.poset().rank_generating()

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "n": self.n,
            "facets": [{_coord_str(c): str(v) for c, v in sorted(ch.items())} for ch in self.charts],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CubicalComplex":
        r, n = int(obj["r"]), int(obj["n"])
        if "ambient" in obj:
            facets = [tuple(Z if x == "z" else int(x) for x in f) for f in obj["facets"]]
            return ambient_complex(int(obj["ambient"]), r, facets)
        charts = [{_parse_coord(k): v for k, v in f.get("chart", f).items()} for f in obj["facets"]]
        return cls(r, n, charts)


def ambient_facets(d: int, r: int, n: int) -> list[tuple]:
    """Tuples in ({z} u [r])^d with exactly n-1 coordinates equal to z."""
    return [e for e in itertools.product(range(r + 1), repeat=d) if sum(1 for x in e if x == Z) == n - 1]


def ambient_complex(d: int, r: int, facets: Sequence[tuple]) -> CubicalComplex:
    """Subcomplex of the rank-(d+1) r-cube generated by rank-n faces."""
    facets = [tuple(f) for f in facets]
    zs = {sum(1 for x in f if x == Z) for f in facets}
    if len(zs) != 1:
        raise ValueError("facets must all have the same rank")
    n = zs.pop() + 1
    charts = []
    for f in facets:
        free = [i for i, x in enumerate(f) if x == Z]
        ch = {}
        for c in cube_elements(n, r):
            g = list(f)
            for i, x in zip(free, c):
                g[i] = x
            ch[c] = _coord_str(tuple(g))
        charts.append(ch)
    return CubicalComplex(r, n, charts)


def single_cube(n: int, r: int) -> CubicalComplex:
    return ambient_complex(n - 1, r, [tuple([Z] * (n - 1))])


def boundary_of_square() -> CubicalComplex:
    return ambient_complex(2, 2, [(Z, 1), (1, Z), (Z, 2), (2, Z)])


# ---------------------------------------------------------------------------
# h-vectors


def cubical_certificate(n: int, r: int) -> ResolutionCertificate:
    spec = FamilySpec("cubical", n, r=r)
    rnk = tuple(tuple(family_rnk(spec, a, b) for b in range(a + 1)) for a in range(n + 1))
    lam = tuple(tuple(Fraction(x) for x in row) for row in _cubical_lambda(n, r))
    return ResolutionCertificate(lam, rnk)


def _cubical_lambda(n: int, r: int):
    return [[1 if k == 0 else (r if k < m else r - 1) for k in range(m + 1)] for m in range(n)]


def r_cubical_h(f: Polynomial, n: int, r: int) -> HVector:
    """Expand f in {R_{n,k}} of the r-cubical family."""
    if r < 2:
        raise ValueError("degenerate basis: r = 1 does not give a basis")
    return expand_in_basis(f, cubical_certificate(n, r), n)


def adin_h(f: Polynomial, n: int) -> list[Fraction]:
    """Cubical h-vector h_0..h_n of a rank-n complex with rank polynomial f.

    (1+t) h(t) = (-1)^n f(-1) t^{n+1} + f(0)(1 - ((1-t)/2)^n)
                 + ((1-t)/2)^n f(2t/(1-t))
    """
    if f.degree > n:
        raise ValueError(f"degree {f.degree} exceeds n = {n}")
    if f(0) != 1:
        raise ValueError("f(0) must be 1 (a bottom element is required)")
    one_minus = Polynomial((1, -1))
    half = Fraction(1, 2**n)
    sub = Polynomial()
    for i, c in enumerate(f.coeffs):
        if c:
            sub = sub + Polynomial.monomial(i, c * 2**i) * one_minus ** (n - i)
    sub = sub * half
    rhs = Polynomial.monomial(n + 1, (-1) ** n * f(-1)) + (Polynomial([1]) - one_minus**n * half) * f(0) + sub
    h, rem = divmod(rhs, Polynomial((1, 1)))
    if rem:
        raise ValueError("not a cubical f-polynomial: division by 1 + t is not exact")
    return [h[k] for k in range(n + 1)]


def adin_equivalence_check(f: Polynomial, n: int) -> bool:
    """The 2-cubical h-vector doubles the inner Adin entries."""
    a = adin_h(f, n)
    h = r_cubical_h(f, n, 2).h
    return all((h[k] == 2 * a[k]) if 0 < k < n else h[k] == a[k] for k in range(n + 1))


def complex_h(P: CubicalComplex) -> HVector:
    from .poset import check_family_poset

    cert = cubical_certificate(P.n, P.r)
    check_family_poset(P.poset(), cert)
    return r_cubical_h(P.f_polynomial(), P.n, P.r)


# ---------------------------------------------------------------------------
# shellings


@dataclass
class CubicalShellingResult:
    ok: bool
    failed_step: Optional[int] = None
    reason: Optional[str] = None
    witness: Optional[str] = None
    types: list = field(default_factory=list)
    h: Optional[list] = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failed_step": self.failed_step,
            "reason": self.reason,
            "witness": self.witness,
            "type_vectors": self.types,
            "h": [frac_str(x) for x in self.h] if self.h is not None else None,
        }


def _maximal_coords(cs: list) -> list:
    return [c for c in cs if not any(d != c and _cube_leq(c, d) for d in cs)]


def cubical_shelling_check(P: CubicalComplex, order: Optional[Sequence[int]] = None) -> CubicalShellingResult:
    """Check the shelling conditions facet by facet.

    At each step the intersection with earlier facets must be pure of rank
    n-1 (its facets are single fixed coordinates alpha at position i), and
    either some free coordinate has exactly one fixed value or every free
    coordinate has all r values fixed.
    """
    order = list(range(P.num_facets)) if order is None else list(order)
    if sorted(order) != list(range(P.num_facets)):
        raise ValueError("order must be a permutation of the facets")
    n, r = P.n, P.r
    t = Polynomial.t()
    seen: set = set()
    types = []
    for step, idx in enumerate(order):
        ch = P.charts[idx]
        if step == 0:
            seen.update(ch.values())
            continue
        inside = [c for c, lab in ch.items() if lab in seen]
        maxi = _maximal_coords(inside)
        if n >= 2 and not maxi:
            return CubicalShellingResult(False, step, "intersection is only the bottom element", "0^", types)
        A = [set() for _ in range(n - 1)]
        for c in maxi:
            if _cube_rank(c) != n - 1:
                return CubicalShellingResult(False, step, "intersection is not pure", _coord_str(c), types)
            i = next(j for j, x in enumerate(c) if x != Z)
            A[i].add(c[i])
        a = [sum(1 for s in A if len(s) == j) for j in range(r + 1)]
        types.append(a)
        if not (n == 1 or (len(a) > 1 and a[1] >= 1) or a[r] == n - 1):
            return CubicalShellingResult(False, step, "no singly covered coordinate and not fully covered", str(a), types)
        new = [c for c, lab in ch.items() if lab not in seen]
        cs = [0] * (n + 1)
        for c in new:
            cs[_cube_rank(c)] += 1
        expect = t
        for s in A:
            expect = expect * Polynomial((r - len(s), 1))
        if Polynomial(cs) != expect:
            raise InvariantViolation(f"step {step}: new faces {Polynomial(cs)} differ from {expect}")
        seen.update(ch.values())
    res = CubicalShellingResult(True, types=types)
    if r >= 2:
        h = complex_h(P)
        if not h.nonnegative:
            raise InvariantViolation("shellable complex has a negative h-vector")
        res.h = h.h
    return res

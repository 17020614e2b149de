"""Order ideals of subspace lattices over F_q, their shellings and q-matroids."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from . import fq
from .families import FamilySpec, family_matrix
from .poly import Polynomial
from .poset import FinitePoset, HVector, h_vector
from .qarr import FqArrangement, char_poly, rq_map
from .tnmat import whitney_reduce


class QPoset:
    """An order ideal of subspaces of F_q^n (closed under taking subspaces)."""

    def __init__(self, q: int, n: int, spaces: Iterable):
        fq.check_prime(q)
        self.q, self.n = q, n
        self.spaces = frozenset(fq.rref(s, q) if s else () for s in spaces)
        for s in self.spaces:
            for sub in fq.subspaces_of(s, n, q):
                if sub not in self.spaces:
                    raise ValueError("space set is not closed under subspaces")

    @classmethod
    def generated_by(cls, q: int, n: int, generators: Iterable) -> "QPoset":
        fq.check_prime(q)
        out = set()
        for g in generators:
            g = fq.rref(g, q) if g else ()
            out.update(fq.subspaces_of(g, n, q))
        return cls(q, n, out)

    @property
    def facets(self) -> list:
        out = []
        for s in self.spaces:
            if not any(s != u and len(u) > len(s) and fq.is_subspace(s, u, self.q) for u in self.spaces):
                out.append(s)
        return sorted(out)

    @property
    def rank(self) -> int:
        return max(len(s) for s in self.spaces)

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def rank_generating(self) -> Polynomial:
        cs = [0] * (self.rank + 1)
        for s in self.spaces:
            cs[len(s)] += 1
        return Polynomial(cs)

    def to_finite_poset(self) -> FinitePoset:
        spaces = sorted(self.spaces, key=lambda s: (len(s), s))
        index = {s: i for i, s in enumerate(spaces)}
        covers = []
        by_dim: dict[int, list] = {}
        for s in spaces:
            by_dim.setdefault(len(s), []).append(s)
        for s in spaces:
            for u in by_dim.get(len(s) + 1, []):
                if fq.is_subspace(s, u, self.q):
                    covers.append((index[s], index[u]))
        labels = [str([list(v) for v in s]) for s in spaces]
        return FinitePoset(len(spaces), covers, labels)

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "facets": [[list(v) for v in f] for f in self.facets]}

    @classmethod
    def from_json(cls, obj: dict) -> "QPoset":
        key = "facets" if "facets" in obj else "generators"
        gens = [[tuple(v) for v in f] for f in obj[key]]
        return cls.generated_by(int(obj["q"]), int(obj["n"]), gens)


@dataclass
class ShellingResult:
    ok: bool
    failed_step: Optional[int] = None
    witness: Optional[tuple] = None
    order: Optional[list] = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failed_step": self.failed_step,
            "witness": [list(v) for v in self.witness] if self.witness is not None else None,
            "order": [[list(v) for v in f] for f in self.order] if self.order is not None else None,
        }


def _maximal(spaces: list, q: int) -> list:
    uniq = list(dict.fromkeys(spaces))
    out = []
    for s in uniq:
        if not any(u != s and len(u) > len(s) and fq.is_subspace(s, u, q) for u in uniq):
            out.append(s)
    return out


def _step_hyperplanes(prev: Sequence, F, n: int, q: int):
    """Maximal elements of (union of previous ideals) meet <F>."""
    return _maximal([fq.intersect(G, F, n, q) for G in prev], q)


def is_shelling(P: QPoset, order: Sequence) -> ShellingResult:
    """Each new facet must meet the earlier ones in a pure ideal of corank 1."""
    order = [fq.rref(f, P.q) if f else () for f in order]
    if sorted(order) != P.facets:
        raise ValueError("order must list every facet exactly once")
    if not P.is_pure():
        raise ValueError("q-poset is not pure")
    r = P.rank
    for k in range(1, len(order)):
        for m in _step_hyperplanes(order[:k], order[k], P.n, P.q):
            if len(m) != r - 1:
                return ShellingResult(False, k, m)
    return ShellingResult(True, order=order)


def find_shelling(P: QPoset, exhaustive: Optional[bool] = None) -> ShellingResult:
    """Search for a shelling; backtracking up to 8 facets, greedy beyond."""
    facets = P.facets
    if not P.is_pure():
        raise ValueError("q-poset is not pure")
    if exhaustive is None:
        exhaustive = len(facets) <= 8
    r = P.rank

    def fits(prev, F):
        return all(len(m) == r - 1 for m in _step_hyperplanes(prev, F, P.n, P.q))

    if exhaustive:
        def dfs(prev, rest):
            if not rest:
                return prev
            for i, F in enumerate(rest):
                if not prev or fits(prev, F):
                    res = dfs(prev + [F], rest[:i] + rest[i + 1 :])
                    if res is not None:
                        return res
            return None

        found = dfs([], facets)
        return ShellingResult(found is not None, order=found)
    prev = [facets[0]]
    rest = facets[1:]
    while rest:
        nxt = next((F for F in rest if fits(prev, F)), None)
        if nxt is None:
            return ShellingResult(False, failed_step=len(prev))
        prev.append(nxt)
        rest.remove(nxt)
    return ShellingResult(True, order=prev)


def gaussian_certificate(q: int, N: int):
    return whitney_reduce(family_matrix(FamilySpec("gaussian", N, q=q)))


def q_h_vector(P: QPoset) -> HVector:
    cert = gaussian_certificate(P.q, P.rank)
    return h_vector(P.to_finite_poset(), cert)


def shelling_increments(P: QPoset, order: Sequence) -> list[tuple[Polynomial, Polynomial]]:
    """Per step (new rank polynomial, image of chi_H under t^m -> R_m).

    H is the arrangement of the corank-1 pieces inside the new facet.
    """
    q, n, r = P.q, P.n, P.rank
    cert = gaussian_certificate(q, r)
    order = [fq.rref(f, q) if f else () for f in order]
    seen: set = set()
    out = []
    for k, F in enumerate(order):
        subs = set(fq.subspaces_of(F, n, q))
        new = subs - seen
        seen |= subs
        cs = [0] * (r + 1)
        for s in new:
            cs[len(s)] += 1
        inc = Polynomial(cs)
        normals = []
        for H in _step_hyperplanes(order[:k], F, n, q) if k else []:
            coords = [fq.coordinates(v, F, q) for v in H]
            nv = fq.nullspace(coords, len(F), q)
            normals.append(nv[0])
        A = FqArrangement(q, len(F), normals)
        out.append((inc, rq_map(char_poly(A), cert)))
    return out


class QMatroid:
    """A rank function on the subspaces of F_q^n."""

    def __init__(self, q: int, n: int, rank: Callable):
        fq.check_prime(q)
        if q > 3 or n > 3:
            raise ValueError("q-matroid checks are capped at q <= 3, n <= 3")
        self.q, self.n = q, n
        self.table = {s: int(rank(s)) for s in fq.all_subspaces(n, q)}

    @classmethod
    def uniform(cls, n: int, r: int, q: int) -> "QMatroid":
        return cls(q, n, lambda s: min(len(s), r))

    def __call__(self, s) -> int:
        return self.table[s]


def verify_q_matroid(M: QMatroid):
    """Check the rank axioms; returns (True, None) or (False, (axiom, x, y))."""
    q, n = M.q, M.n
    spaces = list(M.table)
    for x in spaces:
        if not 0 <= M(x) <= len(x):
            return False, ("bounded", x, None)
    for x, y in itertools.product(spaces, repeat=2):
        if fq.is_subspace(x, y, q) and M(x) > M(y):
            return False, ("monotone", x, y)
        join = fq.span([x, y], q, n)
        meet = fq.intersect(x, y, n, q)
        if M(join) + M(meet) > M(x) + M(y):
            return False, ("submodular", x, y)
    return True, None


def independent_spaces(M: QMatroid) -> QPoset:
    P = QPoset(M.q, M.n, [s for s, v in M.table.items() if v == len(s)])
    if not P.is_pure():
        raise AssertionError("independent spaces should form a pure complex")
    return P

"""Finite posets, quasi-rank uniformity and the matrices they carry.

The quasi-rank of x is the length of the longest chain ending at x.  A
poset is quasi-rank uniform when the number of rank-k elements below x
depends only on the rank of x; those counts form a unit lower-triangular
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg
from .chain import InvariantViolation, chain_polynomials
from .poly import Polynomial, frac_str
from .tnmat import LowerTriMatrix, ResolutionCertificate


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """Poset on 0..size-1 given by its cover relations (x, y) with x < y."""

    def __init__(self, size: int, covers: Iterable[tuple[int, int]], labels: Optional[Sequence] = None):
        self.size = size
        self.covers = tuple(sorted(set((int(a), int(b)) for a, b in covers)))
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(size))
        if len(self.labels) != size:
            raise ValueError("labels must match size")
        self.lower = [[] for _ in range(size)]
        self.upper = [[] for _ in range(size)]
        for a, b in self.covers:
            if not (0 <= a < size and 0 <= b < size) or a == b:
                raise ValueError(f"bad cover ({a},{b})")
            self.lower[b].append(a)
            self.upper[a].append(b)
        self.order = self._topological()
        self.down = [0] * size
        for y in self.order:
            m = 1 << y
            for x in self.lower[y]:
                m |= self.down[x]
            self.down[y] = m
        self.up = [0] * size
        for y in range(size):
            for x in _bits(self.down[y]):
                self.up[x] |= 1 << y
        for a, b in self.covers:
            if bin(self.down[b] & self.up[a]).count("1") != 2:
                raise ValueError(f"({a},{b}) is not a cover relation")
        self._rank = None

    def _topological(self) -> list[int]:
        indeg = [len(self.lower[y]) for y in range(self.size)]
        stack = [y for y in range(self.size) if indeg[y] == 0]
        out = []
        while stack:
            x = stack.pop()
            out.append(x)
            for y in self.upper[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    stack.append(y)
        if len(out) != self.size:
            raise ValueError("cover relation has a cycle")
        return out

    @classmethod
    def from_relations(cls, size: int, relations: Iterable[tuple[int, int]], labels=None) -> "FinitePoset":
        """Build from any generating set of strict relations x < y."""
        rel = set(relations)
        below = [0] * size
        for a, b in rel:
            below[b] |= 1 << a
        return cls(size, _reduce_relations(size, below), labels)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def ideal(self, x: int) -> list[int]:
        return list(_bits(self.down[x]))

    def filter(self, x: int) -> list[int]:
        return list(_bits(self.up[x]))

    @property
    def rank(self) -> list[int]:
        if self._rank is None:
            r = [0] * self.size
            for y in self.order:
                if self.lower[y]:
                    r[y] = 1 + max(r[x] for x in self.lower[y])
            self._rank = r
        return self._rank

    def minimal(self) -> list[int]:
        return [x for x in range(self.size) if not self.lower[x]]

    def maximal(self) -> list[int]:
        return [x for x in range(self.size) if not self.upper[x]]

    @property
    def height(self) -> int:
        return max(self.rank) if self.size else -1

    def bottom(self) -> Optional[int]:
        m = self.minimal()
        return m[0] if len(m) == 1 else None

    def rank_generating(self) -> Polynomial:
        cs = [0] * (self.height + 1)
        for r in self.rank:
            cs[r] += 1
        return Polynomial(cs)

    def to_json(self) -> dict:
        return {"size": self.size, "covers": [list(c) for c in self.covers], "labels": list(self.labels)}

    @classmethod
    def from_json(cls, obj: dict) -> "FinitePoset":
        if "covers" not in obj:
            raise ValueError("poset JSON needs 'covers'")
        size = int(obj["size"])
        return cls(size, [tuple(c) for c in obj["covers"]], obj.get("labels"))

    def __repr__(self) -> str:
        return f"FinitePoset(size={self.size}, covers={len(self.covers)})"


def _reduce_relations(size: int, below: list[int]) -> list[tuple[int, int]]:
    # topological order of the relation graph
    indeg = [bin(below[y]).count("1") for y in range(size)]
    above = [[] for _ in range(size)]
    for y in range(size):
        for x in _bits(below[y]):
            above[x].append(y)
    stack = [y for y in range(size) if indeg[y] == 0]
    order = []
    while stack:
        x = stack.pop()
        order.append(x)
        for y in above[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                stack.append(y)
    if len(order) != size:
        raise ValueError("relations contain a cycle")
    strict = [0] * size
    for y in order:
        m = below[y]
        for x in _bits(below[y]):
            m |= strict[x]
        strict[y] = m
    covers = []
    for y in range(size):
        for x in _bits(strict[y]):
            # x is covered by y unless some z in (x, y)
            mid = strict[y] & ~(1 << x)
            if not any(strict[z] >> x & 1 for z in _bits(mid)):
                covers.append((x, y))
    return covers


class NonUniformError(ValueError):
    def __init__(self, x: int, y: int, n: int, k: int, cx: int, cy: int, what: str = "below"):
        self.x, self.y, self.n, self.k = x, y, n, k
        super().__init__(
            f"not uniform: elements {x} and {y} of rank {n} have {cx} and {cy} rank-{k} elements {what}"
        )


def extract_matrix(P: FinitePoset) -> LowerTriMatrix:
    """r_{n,k} = #{z <= x : rank z = k} for any x of rank n."""
    rank = P.rank
    N = P.height
    rows: list[Optional[list[int]]] = [None] * (N + 1)
    owner = [None] * (N + 1)
    for x in range(P.size):
        n = rank[x]
        counts = [0] * (n + 1)
        for z in _bits(P.down[x]):
            counts[rank[z]] += 1
        if rows[n] is None:
            rows[n] = counts
            owner[n] = x
        elif rows[n] != counts:
            k = next(i for i in range(n + 1) if rows[n][i] != counts[i])
            raise NonUniformError(owner[n], x, n, k, rows[n][k], counts[k])
    return LowerTriMatrix(rows)


def is_quasi_rank_uniform(P: FinitePoset) -> bool:
    try:
        extract_matrix(P)
    except NonUniformError:
        return False
    return True


def induced_subposet(P: FinitePoset, elements: Iterable[int]) -> FinitePoset:
    els = sorted(set(elements))
    index = {x: i for i, x in enumerate(els)}
    mask = 0
    for x in els:
        mask |= 1 << x
    covers = []
    for y in els:
        D = P.down[y] & mask & ~(1 << y)
        for x in _bits(D):
            if P.up[x] & D == 1 << x:
                covers.append((index[x], index[y]))
    return FinitePoset(len(els), covers, [P.labels[x] for x in els])


def rank_select(P: FinitePoset, S: Iterable[int]) -> FinitePoset:
    """Induced subposet on the elements whose quasi-rank lies in S."""
    S = set(S)
    return induced_subposet(P, [x for x in range(P.size) if P.rank[x] in S])


def chains_direct(P: FinitePoset, x: int) -> Polynomial:
    """Sum over chains x_0 < ... < x_j = x with rank(x_0) = 0 of t^j.

    Chains are enumerated one by one.  Minimal elements get 1.
    """
    rank = P.rank
    if rank[x] == 0:
        return Polynomial([1])
    counts: dict[int, int] = {}

    def walk(y: int, length: int):
        if rank[y] == 0 and length > 0:
            counts[length] = counts.get(length, 0) + 1
        for z in _bits(P.down[y] & ~(1 << y)):
            walk(z, length + 1)

    walk(x, 0)
    cs = [0] * (max(counts) + 1)
    for j, c in counts.items():
        cs[j] = c
    return Polynomial(cs)


def chain_polynomial_poset(Q: FinitePoset, check: bool = True) -> Polynomial:
    """sum over all chains C of Q (the empty chain included) of t^|C|."""
    t = Polynomial.t()
    c = [None] * Q.size
    total = Polynomial([1])
    for y in Q.order:
        acc = Polynomial([1])
        for z in _bits(Q.down[y] & ~(1 << y)):
            acc = acc + c[z]
        c[y] = acc * t
        total = total + c[y]
    if check and Q.size and Q.bottom() is not None and Q.size <= 4000:
        try:
            R = extract_matrix(hat(Q))
        except NonUniformError:
            return total
        p = chain_polynomials(R).polys[R.N]
        if (p * Polynomial((1, 1))).shift_down(1) != total:
            raise InvariantViolation("chain polynomial disagrees with the matrix identity")
    return total


def mobius_direct(P: FinitePoset, x: int, y: int) -> int:
    if not P.leq(x, y):
        raise ValueError(f"{x} is not below {y}")
    interval = P.up[x] & P.down[y]
    mu: dict[int, int] = {}
    for z in P.order:
        if not interval >> z & 1:
            continue
        if z == x:
            mu[z] = 1
        else:
            mu[z] = -sum(mu[w] for w in _bits(P.down[z] & interval & ~(1 << z)))
    return mu[y]


def hat(P: FinitePoset) -> FinitePoset:
    """Adjoin a new top element above everything."""
    top = P.size
    covers = list(P.covers) + [(m, top) for m in P.maximal()]
    return FinitePoset(P.size + 1, covers, list(P.labels) + ["top"])


def _monotone_check(R: LowerTriMatrix) -> None:
    for n in range(R.N + 1):
        for k in range(n + 1):
            v = R[n, k]
            if v.denominator != 1 or v < 0:
                raise ValueError(f"entry ({n},{k}) = {frac_str(v)} is not a nonnegative integer")
            if n < R.N and R[n + 1, k] < v:
                raise ValueError(f"column {k} decreases at entry ({n + 1},{k}): {R[n + 1, k]} < {v}")


def poset_from_matrix(R: LowerTriMatrix) -> FinitePoset:
    """Build a quasi-rank uniform poset realizing a matrix whose columns
    are weakly increasing.

    Starting from a point, each step adds a new top, new minimal elements
    and copies of the designated element of each rank (same strict ideal).
    """
    R.require_unit()
    _monotone_check(R)
    covers: list[tuple[int, int]] = []
    labels = ["0"]
    designated = {0: 0}
    top = 0
    for N in range(R.N):
        new_elems = []
        count0 = int(R[N + 1, 0] - R[N, 0])
        for i in range(count0):
            labels.append(f"m{N + 1}.{i}")
            new_elems.append(len(labels) - 1)
        for n in range(1, N + 1):
            x = designated[n]
            cnt = int(R[N + 1, n] - R[N, n])
            for i in range(cnt):
                labels.append(f"c{N + 1}.{n}.{i}")
                new_elems.append(len(labels) - 1)
                for c in _lower_covers_of(x, covers):
                    covers.append((c, len(labels) - 1))
        new_top = len(labels)
        labels.append(f"t{N + 1}")
        covers.append((top, new_top))
        for y in new_elems:
            covers.append((y, new_top))
        designated[N + 1] = new_top
        top = new_top
    return FinitePoset(len(labels), covers, labels)


def _lower_covers_of(x: int, covers) -> list[int]:
    return [a for a, b in covers if b == x]


class NotFamilyPoset(ValueError):
    def __init__(self, y: int, got: Polynomial, want: Polynomial):
        self.y = y
        super().__init__(f"ideal of element {y} has rank polynomial {got}, expected {want}")


def check_family_poset(Q: FinitePoset, cert: ResolutionCertificate) -> None:
    """Every principal ideal of Q must have rank polynomial R_{n,0}."""
    rank = Q.rank
    if Q.height > cert.N:
        raise ValueError(f"family order {cert.N} is below poset rank {Q.height}")
    for y in range(Q.size):
        cs = [0] * (rank[y] + 1)
        for x in _bits(Q.down[y]):
            cs[rank[x]] += 1
        got = Polynomial(cs)
        want = cert.R(rank[y], 0)
        if got != want:
            raise NotFamilyPoset(y, got, want)


@dataclass
class HVector:
    h: Optional[list]
    status: str
    f: Polynomial

    @property
    def nonnegative(self) -> bool:
        return self.h is not None and all(x >= 0 for x in self.h)

    def to_json(self) -> dict:
        return {
            "h": [frac_str(x) for x in self.h] if self.h is not None else None,
            "status": self.status,
            "f": str(self.f),
        }


def expand_in_basis(f: Polynomial, cert: ResolutionCertificate, r: int) -> HVector:
    """Solve f = sum_k h_k R_{r,k}."""
    A = [[cert.R(r, k)[i] for k in range(r + 1)] for i in range(max(r, f.degree) + 1)]
    b = [f[i] for i in range(len(A))]
    x, status = linalg.solve(A, b)
    if status == "inconsistent":
        return HVector(None, "not_expandable", f)
    return HVector(x, status, f)


def h_vector(Q: FinitePoset, cert: ResolutionCertificate) -> HVector:
    check_family_poset(Q, cert)
    return expand_in_basis(Q.rank_generating(), cert, Q.height)


def wupho_matrix(P: FinitePoset) -> LowerTriMatrix:
    """rbar_{n,k} = #{z >= x : rank z = n} for x of rank k (ranks <= height)."""
    rank = P.rank
    M = P.height
    cols: list[Optional[list[int]]] = [None] * (M + 1)
    owner = [None] * (M + 1)
    for x in range(P.size):
        k = rank[x]
        counts = [0] * (M + 1)
        for z in _bits(P.up[x]):
            counts[rank[z]] += 1
        if cols[k] is None:
            cols[k] = counts
            owner[k] = x
        elif cols[k] != counts:
            n = next(i for i in range(M + 1) if cols[k][i] != counts[i])
            raise NonUniformError(owner[k], x, k, n, cols[k][n], counts[n], what="above")
    return LowerTriMatrix([[cols[k][n] for k in range(n + 1)] for n in range(M + 1)])

"""Set partitions, graphs, chromatic polynomials and partition-poset shellings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .chain import InvariantViolation
from .families import FamilySpec, family_matrix, set_partitions
from .poly import Polynomial, falling_factorial, falling_transform, frac_str, stirling2
from .poset import FinitePoset, HVector, h_vector
from .tnmat import whitney_reduce


class SetPartition:
    """Partition of {1..n}; blocks ordered by their largest element."""

    __slots__ = ("n", "blocks")

    def __init__(self, blocks: Iterable[Iterable[int]], n: Optional[int] = None):
        bs = [tuple(sorted(set(b))) for b in blocks]
        if any(not b for b in bs):
            raise ValueError("empty block")
        elems = sorted(x for b in bs for x in b)
        m = n if n is not None else len(elems)
        if elems != list(range(1, m + 1)):
            raise ValueError(f"blocks must partition 1..{m}")
        self.n = m
        self.blocks = tuple(sorted(bs, key=max))

    @property
    def k(self) -> int:
        return len(self.blocks)

    def word(self) -> tuple[int, ...]:
        return tuple(x for b in self.blocks for x in sorted(b, reverse=True))

    def block_of(self) -> dict[int, int]:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def merge(self, i: int, j: int) -> "SetPartition":
        bs = [b for a, b in enumerate(self.blocks) if a not in (i, j)]
        return SetPartition(bs + [self.blocks[i] + self.blocks[j]], self.n)

    def __eq__(self, other) -> bool:
        return isinstance(other, SetPartition) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def __lt__(self, other: "SetPartition") -> bool:
        return lex_order(self, other) < 0

    def __repr__(self) -> str:
        return "|".join("".join(map(str, b)) for b in self.blocks)

    def to_json(self) -> list:
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json(cls, obj) -> "SetPartition":
        if isinstance(obj, str):
            return cls([[int(c) for c in b] for b in obj.split("|")])
        if isinstance(obj, dict):
            return cls(obj["blocks"], int(obj["n"]) if "n" in obj else None)
        return cls(obj)


def coarsest_common(a: SetPartition, b: SetPartition) -> SetPartition:
    """Finest partition coarser than both (the meet when finer is larger)."""
    parent = list(range(a.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in (a, b):
        for blk in p.blocks:
            for x in blk[1:]:
                parent[find(x)] = find(blk[0])
    groups: dict[int, list] = {}
    for x in range(1, a.n + 1):
        groups.setdefault(find(x), []).append(x)
    return SetPartition(groups.values(), a.n)


def refines(fine: SetPartition, coarse: SetPartition) -> bool:
    bo = coarse.block_of()
    return all(len({bo[x] for x in b}) == 1 for b in fine.blocks)


def lex_order(a: SetPartition, b: SetPartition) -> int:
    if a.n != b.n or a.k != b.k:
        raise ValueError("lex order compares partitions of the same set into the same number of blocks")
    wa, wb = a.word(), b.word()
    return (wa > wb) - (wa < wb)


def partitions_nk(n: int, k: int) -> list[SetPartition]:
    return sorted(SetPartition(p, n) for p in set_partitions(n) if len(p) == k)


# ---------------------------------------------------------------------------
# graphs


class SimpleGraph:
    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        es = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"bad edge ({a},{b})")
            es.add((min(a, b), max(a, b)))
        self.n = n
        self.edges = frozenset(es)
        self.adj = [0] * n
        for a, b in es:
            self.adj[a] |= 1 << b
            self.adj[b] |= 1 << a

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def neighbors(self, v: int) -> list[int]:
        return [u for u in range(self.n) if self.adj[v] >> u & 1]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": sorted(list(e) for e in self.edges)}

    @classmethod
    def from_json(cls, obj: dict) -> "SimpleGraph":
        return cls(int(obj["n"]), [tuple(e) for e in obj["edges"]])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "SimpleGraph":
        return cls(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, itertools.combinations(range(n), 2))

    def __repr__(self) -> str:
        return f"SimpleGraph({self.n}, {sorted(self.edges)})"


def independent_partition_counts(G: SimpleGraph) -> list[int]:
    """a_k = number of partitions of V into k independent sets.

    Vertices are placed one at a time; a block is summarised by the set of
    later vertices it forbids, so equal summaries share work.
    """
    n = G.n
    adj = G.adj

    @lru_cache(maxsize=None)
    def go(i: int, blocks: tuple) -> tuple:
        if i == n:
            return (1,)
        future = ~((1 << (i + 1)) - 1)
        out: dict[int, int] = {}

        def add(res, shift):
            for j, c in enumerate(res):
                if c:
                    out[j + shift] = out.get(j + shift, 0) + c

        for bi, m in enumerate(blocks):
            if m >> i & 1:
                continue
            nb = list(blocks)
            nb[bi] = (m | adj[i])
            nb = tuple(sorted(x & future for x in nb))
            add(go(i + 1, nb), 0)
        nb = tuple(sorted([x & future for x in blocks] + [adj[i] & future]))
        add(go(i + 1, nb), 1)
        size = max(out) + 1 if out else 1
        return tuple(out.get(j, 0) for j in range(size))

    res = go(0, ())
    go.cache_clear()
    return list(res) + [0] * (n + 1 - len(res))


def sigma_poly(G: SimpleGraph) -> Polynomial:
    """sigma_G(t) = sum_k a_k t^k, the image of chi_G under (t)_k -> t^k."""
    return Polynomial(independent_partition_counts(G))


def chromatic_poly(G: SimpleGraph) -> Polynomial:
    return falling_transform(sigma_poly(G), inverse=True)


def chromatic_poly_deletion_contraction(G: SimpleGraph) -> Polynomial:
    return _dc(G.n, G.edges)


@lru_cache(maxsize=200000)
def _dc(n: int, edges: frozenset) -> Polynomial:
    if not edges:
        return Polynomial.monomial(n)
    if len(edges) == n * (n - 1) // 2:
        return falling_factorial(n)
    a, b = max(edges)
    deleted = edges - {(a, b)}
    # contract b into a, then relabel b's successors down by one
    merged = set()
    for x, y in deleted:
        x = a if x == b else x
        y = a if y == b else y
        if x == y:
            continue
        x = x - 1 if x > b else x
        y = y - 1 if y > b else y
        merged.add((min(x, y), max(x, y)))
    return _dc(n, frozenset(deleted)) - _dc(n - 1, frozenset(merged))


def independent_partition_counts_bruteforce(G: SimpleGraph) -> list[int]:
    """Enumerate every set partition of the vertices."""
    out = [0] * (G.n + 1)
    for p in set_partitions(G.n):
        if all(not G.has_edge(x - 1, y - 1) for b in p for x, y in itertools.combinations(b, 2)):
            out[len(p)] += 1
    return out


def is_chordal(G: SimpleGraph):
    """(True, elimination order) or (False, a chordless cycle of length >= 4)."""
    alive = (1 << G.n) - 1
    order = []
    while alive:
        for v in range(G.n):
            if not alive >> v & 1:
                continue
            nb = G.adj[v] & alive
            if all((G.adj[u] | (1 << u)) & nb == nb for u in range(G.n) if nb >> u & 1):
                order.append(v)
                alive &= ~(1 << v)
                break
        else:
            return False, _chordless_cycle(G)
    return True, order


def _chordless_cycle(G: SimpleGraph) -> list[int]:
    from collections import deque

    for v in range(G.n):
        nb = G.neighbors(v)
        for a, b in itertools.combinations(nb, 2):
            if G.has_edge(a, b):
                continue
            banned = (G.adj[v] | (1 << v)) & ~((1 << a) | (1 << b))
            prev = {a: None}
            dq = deque([a])
            while dq:
                x = dq.popleft()
                if x == b:
                    break
                for y in G.neighbors(x):
                    if y not in prev and not banned >> y & 1:
                        prev[y] = x
                        dq.append(y)
            if b in prev:
                path = []
                x = b
                while x is not None:
                    path.append(x)
                    x = prev[x]
                return [v] + path[::-1]
    raise AssertionError("no chordless cycle found in a non-chordal graph")


def falling_basis_expansion(chi: Polynomial, n: int, variant: str = "k"):
    """Expand chi in t^{n-j} (t)_j, j = 1..n.

    Returns (coefficients, status).  With variant "k" entry j-1 holds the
    coefficient of t^{n-j}(t)_j; with "k_plus_one" entry k holds the
    coefficient of t^{n-1-k}(t)_{k+1}.  Both describe the same basis.
    """
    if variant not in ("k", "k_plus_one"):
        raise ValueError("variant must be 'k' or 'k_plus_one'")
    if chi.degree > n:
        raise ValueError(f"degree {chi.degree} exceeds n = {n}")
    if chi[0] != 0:
        return None, "not_expandable"
    rest = chi
    coef = [Fraction(0)] * (n + 1)
    for j in range(n, 0, -1):
        d = n - j + 1
        basis = Polynomial.monomial(n - j) * falling_factorial(j)
        coef[j] = rest[d] / basis[d]
        if coef[j]:
            rest = rest - basis * coef[j]
    if rest:
        return None, "not_expandable"
    return coef[1:], "unique"


# ---------------------------------------------------------------------------
# G(pi)


def g_graph(pi: SetPartition) -> SimpleGraph:
    """Graph on the blocks v_1..v_k (ordered by max).

    {v_i, v_j} with i < j is a non-edge exactly when v_1..v_i are
    singletons and every element of v_i is below every element of each
    later block.
    """
    bs = pi.blocks
    k = len(bs)
    edges = []
    for i in range(k):
        prefix_single = all(len(bs[a]) == 1 for a in range(i + 1))
        below_later = all(max(bs[i]) < min(bs[m]) for m in range(i + 1, k))
        for j in range(i + 1, k):
            if not (prefix_single and below_later):
                edges.append((i, j))
    return SimpleGraph(k, edges)


def g_graph_definitional(pi: SetPartition) -> SimpleGraph:
    """Edges {v_i, v_j} for which some lex-earlier pi' meets pi in pi[v_i, v_j]."""
    bs = pi.blocks
    merged = {}
    for i, j in itertools.combinations(range(len(bs)), 2):
        merged[pi.merge(i, j)] = (i, j)
    edges = set()
    for other in partitions_nk(pi.n, pi.k):
        if lex_order(other, pi) >= 0:
            continue
        m = coarsest_common(pi, other)
        if m in merged:
            edges.add(merged[m])
    return SimpleGraph(len(bs), edges)


# ---------------------------------------------------------------------------
# partition complexes


class PartitionComplex:
    """Order ideal of the partition poset of [n] generated by facets.

    Finer partitions are larger; the rank of a partition is (#blocks - 1).
    """

    def __init__(self, n: int, facets: Sequence[SetPartition]):
        fs = list(dict.fromkeys(facets))
        if not fs:
            raise ValueError("need at least one facet")
        if any(f.n != n for f in fs):
            raise ValueError("facets must partition the same ground set")
        ks = {f.k for f in fs}
        if len(ks) != 1:
            raise ValueError("facets must all have the same number of blocks")
        for a in fs:
            for b in fs:
                if a != b and refines(a, b):
                    raise ValueError("facets must be incomparable")
        self.n = n
        self.facets = fs
        self.k = fs[0].k

    @classmethod
    def pi_nk(cls, n: int, k: int) -> "PartitionComplex":
        return cls(n, partitions_nk(n, k))

    def elements(self) -> set:
        out = set()
        for f in self.facets:
            out.update(_coarsenings(f))
        return out

    def poset(self) -> FinitePoset:
        els = sorted(self.elements(), key=lambda p: (p.k, p.blocks))
        index = {p: i for i, p in enumerate(els)}
        covers = []
        for p in els:
            for i, j in itertools.combinations(range(p.k), 2):
                covers.append((index[p.merge(i, j)], index[p]))
        return FinitePoset(len(els), covers, [repr(p) for p in els])

    def to_json(self) -> dict:
        return {"n": self.n, "facets": [f.to_json() for f in self.facets]}

    @classmethod
    def from_json(cls, obj: dict) -> "PartitionComplex":
        if "facets" not in obj:
            return cls.pi_nk(int(obj["n"]), int(obj["k"]))
        return cls(int(obj["n"]), [SetPartition.from_json(f) for f in obj["facets"]])


def _coarsenings(p: SetPartition) -> list[SetPartition]:
    out = []
    for q in set_partitions(p.k):
        out.append(SetPartition([sum((p.blocks[i - 1] for i in blk), ()) for blk in q], p.n))
    return out


def partition_certificate(N: int):
    return whitney_reduce(family_matrix(FamilySpec("partition", N)))


@dataclass
class PartitionShellingResult:
    ok: bool
    failed_step: Optional[int] = None
    reason: Optional[str] = None
    witness: Optional[object] = None
    h: Optional[list] = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failed_step": self.failed_step,
            "reason": self.reason,
            "witness": self.witness,
            "h": [frac_str(x) for x in self.h] if self.h is not None else None,
        }


def partition_shelling_check(P: PartitionComplex, order: Optional[Sequence[SetPartition]] = None) -> PartitionShellingResult:
    """Each new facet must meet the earlier ones in merges of two of its
    blocks, and the graph of those merges must be chordal."""
    order = list(P.facets) if order is None else list(order)
    if sorted(order) != sorted(P.facets):
        raise ValueError("order must list every facet exactly once")
    seen: set = set()
    for step, F in enumerate(order):
        new = [p for p in _coarsenings(F) if p not in seen]
        if step:
            meets = list(dict.fromkeys(coarsest_common(F, G) for G in order[:step]))
            maxi = [m for m in meets if not any(o != m and refines(o, m) for o in meets)]
            edges = []
            for m in maxi:
                if m.k != F.k - 1:
                    return PartitionShellingResult(False, step, "intersection is not pure", repr(m))
                bo = m.block_of()
                pair = [i for i, b in enumerate(F.blocks) if any(bo[b[0]] == bo[c[0]] for c in F.blocks if c != b)]
                edges.append(tuple(pair))
            G = SimpleGraph(F.k, edges)
            chordal, wit = is_chordal(G)
            if not chordal:
                return PartitionShellingResult(False, step, "graph of the intersection is not chordal", wit)
            cs = [0] * F.k
            for p in new:
                cs[p.k - 1] += 1
            if Polynomial(cs) != sigma_poly(G).shift_down(1):
                raise InvariantViolation(f"step {step}: new faces disagree with the independent partitions")
        seen.update(new)
    cert = partition_certificate(P.k - 1)
    h = h_vector(P.poset(), cert)
    if not h.nonnegative:
        raise InvariantViolation("shellable partition complex has a negative h-vector")
    return PartitionShellingResult(True, h=h.h)


def pi_nk_h_vector(n: int, k: int):
    """h-vector of the ideal generated by partitions of [n+1] into k+1 blocks.

    Returns (closed form, computed): ((i+1) S(n-k+i, i+1))_{i=0..k}.
    """
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    closed = [Fraction((i + 1) * stirling2(n - k + i, i + 1)) for i in range(k + 1)]
    cert = partition_certificate(k)
    if n + 1 <= 7:
        computed = h_vector(PartitionComplex.pi_nk(n + 1, k + 1).poset(), cert)
    else:
        from .poset import expand_in_basis

        f = Polynomial([stirling2(n + 1, j + 1) for j in range(k + 1)])
        computed = expand_in_basis(f, cert, k)
    return closed, computed.h

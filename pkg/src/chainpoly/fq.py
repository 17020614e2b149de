"""Linear algebra over a prime field F_p.

Vectors are tuples of ints in [0, p).  A subspace is represented by its
reduced row echelon basis (a tuple of vectors), which is canonical.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

Vec = tuple
Space = tuple


def check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"q = {p} is not prime; only prime fields are supported")


def inv(x: int, p: int) -> int:
    return pow(x, p - 2, p)


def rref(rows: Iterable[Sequence[int]], p: int) -> Space:
    m = [[x % p for x in r] for r in rows]
    m = [r for r in m if any(r)]
    if not m:
        return ()
    n = len(m[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        iv = inv(m[r][c], p)
        m[r] = [(x * iv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


def pivots(space: Space) -> list[int]:
    return [next(i for i, x in enumerate(v) if x) for v in space]


def rank(rows: Iterable[Sequence[int]], p: int) -> int:
    return len(rref(rows, p))


def canonical_vector(v: Sequence[int], p: int) -> Vec:
    """Projective normal form: first nonzero coordinate scaled to 1."""
    v = [x % p for x in v]
    lead = next((x for x in v if x), 0)
    if not lead:
        raise ValueError("zero vector has no projective class")
    iv = inv(lead, p)
    return tuple((x * iv) % p for x in v)


def reduce(v: Sequence[int], space: Space, p: int) -> Vec:
    v = [x % p for x in v]
    for row, c in zip(space, pivots(space)):
        if v[c]:
            f = v[c]
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return tuple(v)


def contains(space: Space, v: Sequence[int], p: int) -> bool:
    return not any(reduce(v, space, p))


def is_subspace(u: Space, w: Space, p: int) -> bool:
    return all(contains(w, v, p) for v in u)


def span(spaces: Iterable[Space], p: int, n: int) -> Space:
    rows = [v for s in spaces for v in s]
    return rref(rows, p) if rows else ()


def nullspace(space: Space, n: int, p: int) -> Space:
    """Basis (rref) of {x : <v, x> = 0 for all v in space}."""
    space = rref(space, p)
    piv = pivots(space)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for row, c in zip(space, piv):
            x[c] = (-row[f]) % p
        basis.append(x)
    return rref(basis, p)


def intersect(u: Space, w: Space, n: int, p: int) -> Space:
    ann = span([nullspace(u, n, p), nullspace(w, n, p)], p, n)
    return nullspace(ann, n, p)


def all_vectors(n: int, p: int):
    return itertools.product(range(p), repeat=n)


def projective_points(n: int, p: int) -> list[Vec]:
    return [v for v in all_vectors(n, p) if any(v) and canonical_vector(v, p) == v]


@lru_cache(maxsize=None)
def all_subspaces(n: int, p: int) -> tuple[Space, ...]:
    """Every subspace of F_p^n in rref, ordered by dimension."""
    out = []
    for k in range(n + 1):
        for piv in itertools.combinations(range(n), k):
            slots = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, n) if c not in piv]
            for vals in itertools.product(range(p), repeat=len(slots)):
                rows = [[0] * n for _ in range(k)]
                for i, pc in enumerate(piv):
                    rows[i][pc] = 1
                for (i, c), x in zip(slots, vals):
                    rows[i][c] = x
                out.append(tuple(tuple(r) for r in rows))
    return tuple(out)


def subspaces_of(space: Space, n: int, p: int) -> list[Space]:
    """All subspaces contained in ``space``."""
    d = len(space)
    out = []
    for s in all_subspaces(d, p):
        rows = []
        for coeffs in s:
            v = [0] * n
            for c, b in zip(coeffs, space):
                if c:
                    v = [(x + c * y) % p for x, y in zip(v, b)]
            rows.append(v)
        out.append(rref(rows, p) if rows else ())
    return out


def coordinates(v: Sequence[int], space: Space, p: int) -> Vec:
    """Coordinates of v in the rref basis of ``space`` (v must lie in it)."""
    piv = pivots(space)
    c = tuple(v[j] % p for j in piv)
    return c


def quotient_map(space: Space, n: int, p: int):
    """Linear map F_p^n -> F_p^{n - dim space} with kernel ``space``."""
    space = rref(space, p)
    piv = set(pivots(space))
    keep = [c for c in range(n) if c not in piv]

    def f(v):
        r = reduce(v, space, p)
        return tuple(r[c] for c in keep)

    return f, len(keep)


def q_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den

"""Standard families of TN matrices with closed-form weights and polynomials.

boolean      Pascal matrix, weights 1, R_{n,k} = t^k (1+t)^{n-k}
gaussian:q   q-binomials, weights q^k
cubical:r    rows 1 + t (r+t)^{n-1}
partition    Stirling numbers S(n+1, k+1), weights k+1
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import fq
from .poly import Polynomial, frac_str, falling_factorial, falling_transform, stirling2
from .poset import FinitePoset
from .tnmat import LowerTriMatrix

KINDS = ("boolean", "gaussian", "cubical", "partition")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    N: int
    q: Optional[Fraction] = None
    r: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family {self.kind!r}")
        if self.N < 0:
            raise ValueError("order must be nonnegative")
        if self.kind == "gaussian":
            if self.q is None or Fraction(self.q) <= 0:
                raise ValueError("gaussian family needs q > 0")
            q = Fraction(self.q)
            object.__setattr__(self, "q", int(q) if q.denominator == 1 else q)
        if self.kind == "cubical" and (self.r is None or self.r < 1):
            raise ValueError("cubical family needs an integer r >= 1")

    @classmethod
    def parse(cls, text: str, N: int) -> "FamilySpec":
        """Parse 'boolean', 'gaussian:q', 'cubical:r' or 'partition'."""
        kind, _, arg = text.partition(":")
        if kind == "gaussian":
            return cls(kind, N, q=Fraction(arg or 2))
        if kind == "cubical":
            return cls(kind, N, r=int(arg or 2))
        if arg:
            raise ValueError(f"family {kind!r} takes no parameter")
        return cls(kind, N)

    def label(self) -> str:
        if self.kind == "gaussian":
            return f"gaussian:{frac_str(Fraction(self.q))}"
        if self.kind == "cubical":
            return f"cubical:{self.r}"
        return self.kind


@functools.lru_cache(maxsize=None)
def _gauss(n: int, k: int, q) -> Fraction:
    """q-Pascal: C(n,k) = C(n-1,k-1) + q^k C(n-1,k); valid for any q."""
    if k < 0 or k > n:
        return Fraction(0)
    if k == 0 or k == n:
        return Fraction(1)
    return _gauss(n - 1, k - 1, q) + Fraction(q) ** k * _gauss(n - 1, k, q)


def family_entry(spec: FamilySpec, n: int, k: int):
    if k > n:
        return 0
    if spec.kind == "boolean":
        return math.comb(n, k)
    if spec.kind == "gaussian":
        return _gauss(n, k, spec.q)
    if spec.kind == "cubical":
        return cubical_row(n, spec.r)[k]
    return stirling2(n + 1, k + 1)


def cubical_row(n: int, r: int) -> Polynomial:
    """1 + t (r + t)^{n-1} (and 1 for n = 0)."""
    if n == 0:
        return Polynomial([1])
    return Polynomial([1]) + Polynomial((r, 1)) ** (n - 1) * Polynomial.t()


def family_matrix(spec: FamilySpec) -> LowerTriMatrix:
    return LowerTriMatrix([[family_entry(spec, n, k) for k in range(n + 1)] for n in range(spec.N + 1)])


def family_lambda(spec: FamilySpec, n: int, k: int):
    """Closed-form weight lambda_{n,k}."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if spec.kind == "boolean":
        return 1
    if spec.kind == "gaussian":
        return Fraction(spec.q) ** k
    if spec.kind == "cubical":
        if k == 0:
            return 1
        return spec.r if k < n else spec.r - 1
    return k + 1


def family_lambda_table(spec: FamilySpec) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(family_lambda(spec, n, k)) for k in range(n + 1)) for n in range(spec.N))


def _q_operator_apply(g: Polynomial, q: int) -> Polynomial:
    """(t + alpha) g where alpha g(t) = g(q t)."""
    return g.shift_up(1) + g.scale_var(q)


def family_rnk(spec: FamilySpec, n: int, k: int) -> Polynomial:
    """Closed form of R_{n,k}(t)."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    t = Polynomial.t()
    if spec.kind == "boolean":
        return t**k * Polynomial((1, 1)) ** (n - k)
    if spec.kind == "gaussian":
        g = t**k
        for _ in range(n - k):
            g = _q_operator_apply(g, spec.q)
        return g
    if spec.kind == "cubical":
        r = spec.r
        if k == n:
            return t**n
        if k == 0:
            return cubical_row(n, r)
        return Polynomial((r - 1, 1)) * t**k * Polynomial((r, 1)) ** (n - k - 1)
    return falling_transform(t ** (n - k) * falling_factorial(k + 1)).shift_down(1)


def rogers_szego(n: int, q: int) -> Polynomial:
    """R_{m+1}(t) = t R_m(t) + R_m(q t), R_0 = 1."""
    g = Polynomial([1])
    for _ in range(n):
        g = _q_operator_apply(g, q)
    return g


def factorial_function(spec: FamilySpec, n: int) -> Fraction:
    """B(n) with r_{n,k} = B(n) / (B(k) B(n-k)) for boolean and gaussian."""
    if spec.kind == "boolean":
        return Fraction(math.factorial(n))
    if spec.kind == "gaussian":
        q = spec.q
        out = Fraction(1)
        for i in range(1, n + 1):
            out *= sum(q**j for j in range(i))
        return out
    raise ValueError(f"{spec.kind} family has no factorial function")


# ---------------------------------------------------------------------------
# explicit posets


def _boolean_poset(n: int) -> FinitePoset:
    size = 1 << n
    covers = [(a, a | (1 << i)) for a in range(size) for i in range(n) if not a >> i & 1]
    labels = ["{" + ",".join(str(i + 1) for i in range(n) if a >> i & 1) + "}" for a in range(size)]
    return FinitePoset(size, covers, labels)


def _gaussian_poset(n: int, q: int) -> FinitePoset:
    fq.check_prime(q)
    spaces = list(fq.all_subspaces(n, q))
    index = {s: i for i, s in enumerate(spaces)}
    covers = []
    for s in spaces:
        # upper covers: span with one extra vector
        ups = set()
        for v in fq.projective_points(n, q):
            if not fq.contains(s, v, q):
                ups.add(fq.rref(list(s) + [v], q))
        for u in ups:
            covers.append((index[s], index[u]))
    labels = [str([list(v) for v in s]) for s in spaces]
    return FinitePoset(len(spaces), covers, labels)


def cube_elements(n: int, r: int) -> list:
    """Elements of ({z} u [r])^{n-1}; z is encoded as 0."""
    return list(itertools.product(range(r + 1), repeat=max(n - 1, 0)))


def _cubical_poset(n: int, r: int) -> FinitePoset:
    if n == 0:
        return FinitePoset(1, [], ["0^"])
    els = cube_elements(n, r)
    index = {e: i + 1 for i, e in enumerate(els)}
    covers = []
    for e in els:
        if all(x != 0 for x in e):
            covers.append((0, index[e]))
        for i, x in enumerate(e):
            if x != 0:
                up = e[:i] + (0,) + e[i + 1 :]
                covers.append((index[e], index[up]))
    labels = ["0^"] + ["".join("z" if x == 0 else str(x) for x in e) or "()" for e in els]
    return FinitePoset(len(els) + 1, covers, labels)


def set_partitions(m: int):
    """All partitions of {1..m}, each a tuple of sorted blocks."""
    if m == 0:
        yield ()
        return
    for p in set_partitions(m - 1):
        for i in range(len(p)):
            yield tuple(sorted(p[:i] + (tuple(sorted(p[i] + (m,))),) + p[i + 1 :]))
        yield tuple(sorted(p + ((m,),)))


def _partition_poset(m: int) -> FinitePoset:
    """Partitions of [m] with pi <= sigma when sigma refines pi."""
    parts = [tuple(sorted(p, key=lambda b: b[0])) for p in set_partitions(m)]
    parts.sort(key=lambda p: (len(p), p))
    index = {p: i for i, p in enumerate(parts)}
    covers = []
    for p in parts:
        for i, j in itertools.combinations(range(len(p)), 2):
            merged = [b for a, b in enumerate(p) if a not in (i, j)] + [tuple(sorted(p[i] + p[j]))]
            coarser = tuple(sorted(merged, key=lambda b: b[0]))
            covers.append((index[coarser], index[p]))
    labels = ["|".join("".join(map(str, b)) for b in p) for p in parts]
    return FinitePoset(len(parts), covers, labels)


def explicit_poset(spec: FamilySpec, n: int) -> FinitePoset:
    """A combinatorial realization of rank n."""
    if spec.kind == "boolean":
        if n > 12:
            raise ValueError("boolean poset capped at n = 12")
        return _boolean_poset(n)
    if spec.kind == "gaussian":
        if not isinstance(spec.q, int):
            raise ValueError("subspace posets need a prime q")
        if spec.q > 3 or n > 4:
            raise ValueError("subspace poset capped at q <= 3, n <= 4")
        return _gaussian_poset(n, spec.q)
    if spec.kind == "cubical":
        if n > 6 or spec.r > 4:
            raise ValueError("cube poset capped at n <= 6, r <= 4")
        return _cubical_poset(n, spec.r)
    if n > 6:
        raise ValueError("partition poset capped at n = 6")
    return _partition_poset(n + 1)

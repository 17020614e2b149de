"""Exact univariate polynomials over the rationals and real-root tools.

Coefficients are stored in ascending order as ``Fraction`` values with no
trailing zeros, so the zero polynomial has an empty coefficient tuple.
Root counting uses Sturm chains evaluated with integer arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]
INF = math.inf


def to_fraction(x) -> Fraction:
    """Parse ints, Fractions and "p/q" strings; floats are rejected."""
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Polynomial:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # construction helpers
    @classmethod
    def t(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Polynomial":
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> "Polynomial":
        p = cls([lead])
        for r in roots:
            p = p * cls((-to_fraction(r), 1))
        return p

    # basic properties
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def low_degree(self) -> int:
        """Index of the lowest nonzero coefficient (-1 for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other) -> "Polynomial":
        o = self._coerce(other).coeffs
        a = self.coeffs
        n = max(len(a), len(o))
        return Polynomial((a[i] if i < len(a) else 0) + (o[i] if i < len(o) else 0) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = to_fraction(other)
            return Polynomial(c * x for x in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            q, r = divmod(self, other)
            if r:
                raise ArithmeticError("polynomial division is not exact")
            return q
        c = to_fraction(other)
        return Polynomial(x / c for x in self.coeffs)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out, base = Polynomial([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "Polynomial"):
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        d = other.coeffs
        lead = d[-1]
        if len(r) < len(d):
            return Polynomial(), self
        q = [Fraction(0)] * (len(r) - len(d) + 1)
        for i in range(len(q) - 1, -1, -1):
            c = r[i + len(d) - 1] / lead
            q[i] = c
            if c:
                for j, y in enumerate(d):
                    r[i + j] -= c * y
        return Polynomial(q), Polynomial(r[: len(d) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate at a number, or compose when ``x`` is a Polynomial."""
        if isinstance(x, Polynomial):
            out = Polynomial()
            for c in reversed(self.coeffs):
                out = out * x + c
            return out
        acc = Fraction(0) if not isinstance(x, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "Polynomial":
        return self / self.leading if self else self

    def scale_var(self, c: Number) -> "Polynomial":
        """f(c t)."""
        c = to_fraction(c)
        return Polynomial(x * c**i for i, x in enumerate(self.coeffs))

    def shift_down(self, k: int = 1) -> "Polynomial":
        """Divide by t^k; the low coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ArithmeticError(f"not divisible by t^{k}")
        return Polynomial(self.coeffs[k:])

    def shift_up(self, k: int = 1) -> "Polynomial":
        return Polynomial([0] * k + list(self.coeffs)) if self else self

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    # serialization
    def to_json(self) -> dict:
        return {"coeffs": [frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Polynomial":
        if isinstance(obj, dict):
            obj = obj["coeffs"]
        if not isinstance(obj, list):
            raise ValueError("polynomial must be a coefficient list")
        return cls(obj)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k == 0:
                body = frac_str(a)
            elif a == 1:
                body = mono
            elif a.denominator == 1:
                body = f"{a.numerator}{mono}"
            else:
                body = f"({frac_str(a)}){mono}"
            parts.append((sign, body))
        s = "".join(sg + b for sg, b in parts)
        return s[1:] if s.startswith("+") else s

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    @classmethod
    def parse(cls, s: str) -> "Polynomial":
        """Inverse of str(): reads forms like "1-(1/2)t+3t^2"."""
        s = s.replace(" ", "")
        if s == "0":
            return cls()
        if not s or s[0] not in "+-":
            s = "+" + s
        pos, cs = 0, {}
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos or not (m.group(2) or m.group(3) or m.group(4)):
                raise ValueError(f"cannot parse polynomial {s!r}")
            num = m.group(2) or m.group(3)
            c = Fraction(num) if num else Fraction(1)
            if m.group(1) == "-":
                c = -c
            k = 0 if not m.group(4) else int(m.group(5) or 1)
            cs[k] = cs.get(k, 0) + c
            pos = m.end()
        return cls([cs.get(k, 0) for k in range(max(cs) + 1)])


_TERM = re.compile(r"([+-])(?:\((\d+(?:/\d+)?)\)|(\d+(?:/\d+)?))?(t(?:\^(\d+))?)?")

T = Polynomial.t()
ONE = Polynomial([1])
ZERO = Polynomial()


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: Polynomial) -> Polynomial:
    if f.degree < 1:
        return f.monic() if f else f
    return (f / poly_gcd(f, f.derivative())).monic()


@lru_cache(maxsize=4096)
def squarefree_factorization(f: Polynomial) -> tuple[tuple[Polynomial, int], ...]:
    """Yun's algorithm: monic, pairwise coprime (a_i, i) with f ~ prod a_i^i."""
    if f.degree < 1:
        return ()
    f = f.monic()
    df = f.derivative()
    a0 = poly_gcd(f, df)
    b = f / a0
    c = df / a0
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b / a
        c = d / a
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# integer Sturm machinery


def _primitive_int(coeffs: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rational multiple with coprime integer coefficients."""
    if not coeffs:
        return ()
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints)


def _int_rem(a: list[int], b: tuple[int, ...]) -> list[int]:
    """Positive multiple of the remainder of a by b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    sign = 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        if lb != 1:
            a = [x * lb for x in a]
            if lb < 0:
                sign = -sign
        for i, bi in enumerate(b):
            a[i + shift] -= la * bi
        while a and a[-1] == 0:
            a.pop()
    if sign < 0:
        a = [-x for x in a]
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return [x // g for x in a] if g > 1 else a


@lru_cache(maxsize=4096)
def _sturm_chain(g: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    chain = [g]
    d = tuple(i * c for i, c in enumerate(g) if i)
    if not d:
        return tuple(chain)
    d = _primitive_int([Fraction(x) for x in d])
    chain.append(d)
    while True:
        r = _int_rem(list(chain[-2]), chain[-1])
        if not r:
            break
        chain.append(tuple(-x for x in r))
    return tuple(chain)


def _sign_at(c: tuple[int, ...], x) -> int:
    if not c:
        return 0
    if x == INF:
        return 1 if c[-1] > 0 else -1
    if x == -INF:
        s = 1 if c[-1] > 0 else -1
        return s if (len(c) - 1) % 2 == 0 else -s
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    acc = c[-1]
    qp = 1
    for ci in reversed(c[:-1]):
        qp *= q
        acc = acc * p + ci * qp
    return (acc > 0) - (acc < 0)


def _variations(chain, x) -> int:
    v = 0
    last = 0
    for c in chain:
        s = _sign_at(c, x)
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def _sqfree_int(f: Polynomial) -> tuple[int, ...]:
    return _primitive_int(squarefree_part(f).coeffs)


def _check_endpoint(x):
    if isinstance(x, float):
        if math.isinf(x):
            return x
        raise TypeError("finite endpoints must be exact rationals")
    return to_fraction(x)


def sturm_count(f: Polynomial, lo, hi) -> int:
    """Number of distinct real roots of f in the half-open interval (lo, hi].

    Endpoints may be rationals or +-math.inf.
    """
    if not f:
        raise ValueError("undefined root count: the zero polynomial vanishes everywhere")
    lo, hi = _check_endpoint(lo), _check_endpoint(hi)
    if not lo < hi:
        return 0
    g = _sqfree_int(f)
    if len(g) < 2:
        return 0
    ch = _sturm_chain(g)
    return _variations(ch, lo) - _variations(ch, hi)


def _count_closed(g: tuple[int, ...], lo, hi) -> int:
    ch = _sturm_chain(g)
    n = _variations(ch, lo) - _variations(ch, hi)
    if lo != -INF and _sign_at(g, lo) == 0:
        n += 1
    return n


def is_real_rooted(f: Polynomial) -> bool:
    return is_real_rooted_in(f, -INF, INF)


def is_real_rooted_in(f: Polynomial, lo=-INF, hi=INF) -> bool:
    """True iff every complex root of f is real and lies in [lo, hi].

    The zero polynomial and nonzero constants count as real-rooted.
    """
    if f.degree < 1:
        return True
    lo, hi = _check_endpoint(lo), _check_endpoint(hi)
    g = _sqfree_int(f)
    return _count_closed(g, lo, hi) == len(g) - 1


def _cauchy_bound(g: tuple[int, ...]) -> Fraction:
    lead = abs(g[-1])
    m = max(abs(x) for x in g[:-1]) if len(g) > 1 else 0
    return Fraction(1 + -(-m // lead))


def _isolate_sqfree(g: tuple[int, ...]) -> list[tuple[Fraction, Fraction]]:
    """Sorted disjoint intervals (lo, hi], each holding exactly one root."""
    if len(g) < 2:
        return []
    ch = _sturm_chain(g)
    cache: dict = {}

    def var(x):
        if x not in cache:
            cache[x] = _variations(ch, x)
        return cache[x]

    b = _cauchy_bound(g)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = var(lo) - var(hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    return out


def _refine_exact(g: tuple[int, ...], lo: Fraction, hi: Fraction):
    """Shrink (lo, hi] around its single simple root; return an exact
    rational root when there is one."""
    if _sign_at(g, hi) == 0:
        return hi, hi
    s_hi = _sign_at(g, hi)
    lead = abs(g[-1])
    target = Fraction(1, 2 * lead * lead)
    while hi - lo >= target:
        mid = (lo + hi) / 2
        s = _sign_at(g, mid)
        if s == 0:
            return mid, mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    cand = ((lo + hi) / 2).limit_denominator(lead)
    if lo < cand < hi and _sign_at(g, cand) == 0:
        return cand, cand
    return lo, hi


@dataclass(frozen=True)
class RootIsolation:
    """Isolated real roots in increasing order.

    Each entry is (lo, hi, multiplicity).  When lo == hi the root is the exact
    rational lo; otherwise it lies in the open interval (lo, hi).
    """

    intervals: tuple[tuple[Fraction, Fraction, int], ...]

    @property
    def exact_points(self) -> tuple[Fraction, ...]:
        return tuple(lo for lo, hi, _ in self.intervals if lo == hi)

    @property
    def num_roots(self) -> int:
        return sum(m for _, _, m in self.intervals)

    def to_json(self) -> list:
        return [[frac_str(lo), frac_str(hi), m] for lo, hi, m in self.intervals]


def isolate_roots(f: Polynomial) -> RootIsolation:
    if not f:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if f.degree < 1:
        return RootIsolation(())
    if not is_real_rooted(f):
        raise ValueError("complex roots present")
    factors = squarefree_factorization(f)
    g = _sqfree_int(f)
    ints = [(_primitive_int(a.coeffs), m) for a, m in factors]
    out = []
    for lo, hi in _isolate_sqfree(g):
        mult = 0
        for a, m in ints:
            if _count_closed(a, lo, hi) - (1 if _sign_at(a, lo) == 0 else 0) > 0:
                mult = m
                break
        lo2, hi2 = _refine_exact(g, lo, hi)
        out.append((lo2, hi2, mult))
    return RootIsolation(tuple(out))


# ---------------------------------------------------------------------------
# interlacing


def _root_ranks(f: Polynomial, g: Polynomial):
    """Root multisets of f and g as integer ranks in a common order.

    Ties between f and g get the same rank, so comparisons are exact.
    """
    h = squarefree_part(f) * squarefree_part(g)
    h = squarefree_part(h)
    intervals = _isolate_sqfree(_primitive_int(h.coeffs))

    def ranks(p: Polynomial) -> list[int]:
        out = []
        facs = [(_primitive_int(a.coeffs), m) for a, m in squarefree_factorization(p)]
        for idx, (lo, hi) in enumerate(intervals):
            for a, m in facs:
                ch = _sturm_chain(a)
                if _variations(ch, lo) - _variations(ch, hi) > 0:
                    out.extend([idx] * m)
                    break
        return out

    return ranks(f), ranks(g)


def _require_real_rooted(*fs: Polynomial) -> None:
    for f in fs:
        if f and not is_real_rooted(f):
            raise ValueError(f"complex roots present in {f}")


def interlaces(f: Polynomial, g: Polynomial) -> bool:
    """Non-strict interlacing f ≺ g.

    With roots a1 >= a2 >= ... of f and b1 >= b2 >= ... of g this asks for
    ... <= a2 <= b2 <= a1 <= b1, and deg f <= deg g <= deg f + 1.  The zero
    polynomial interlaces with everything in either slot.  Polynomials are
    normalized to a positive leading coefficient.
    """
    if not f or not g:
        _require_real_rooted(f, g)
        return True
    _require_real_rooted(f, g)
    if g.degree - f.degree not in (0, 1):
        return False
    ra, rb = _root_ranks(f, g)
    a = sorted(ra, reverse=True)
    b = sorted(rb, reverse=True)
    for i, ai in enumerate(a):
        if ai > b[i]:
            return False
        if i + 1 < len(b) and b[i + 1] > ai:
            return False
    return True


def is_interlacing_sequence(fs: Sequence[Polynomial]) -> bool:
    """f_i ≺ f_j for every i < j."""
    fs = list(fs)
    _require_real_rooted(*fs)
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if not interlaces(fs[i], fs[j]):
                return False
    return True


# ---------------------------------------------------------------------------
# substitutions


def moebius_substitute(f: Polynomial, d: int) -> Polynomial:
    """(1 - t)^d f(t / (1 - t)); requires d >= deg f."""
    if f.degree > d:
        raise ValueError(f"degree {f.degree} exceeds d = {d}")
    one_minus = Polynomial((1, -1))
    out = Polynomial()
    for i, c in enumerate(f.coeffs):
        if c:
            out = out + c * Polynomial.monomial(i) * one_minus ** (d - i)
    return out


def moebius_inverse(g: Polynomial, d: int) -> Polynomial:
    """(1 + t)^d g(t / (1 + t)); inverse of moebius_substitute for the same d."""
    if g.degree > d:
        raise ValueError(f"degree {g.degree} exceeds d = {d}")
    one_plus = Polynomial((1, 1))
    out = Polynomial()
    for i, c in enumerate(g.coeffs):
        if c:
            out = out + c * Polynomial.monomial(i) * one_plus ** (d - i)
    return out


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k <= 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1_signed(n: int, k: int) -> int:
    """Coefficient of t^k in the falling factorial (t)_n."""
    if n == k:
        return 1
    if k <= 0 or k > n:
        return 0
    return stirling1_signed(n - 1, k - 1) - (n - 1) * stirling1_signed(n - 1, k)


def falling_factorial(k: int) -> Polynomial:
    """(t)_k = t (t-1) ... (t-k+1)."""
    return Polynomial(stirling1_signed(k, j) for j in range(k + 1))


def falling_transform(f: Polynomial, inverse: bool = False) -> Polynomial:
    """Linear map (t)_k -> t^k, or t^k -> (t)_k when ``inverse``."""
    n = f.degree
    out = [Fraction(0)] * (n + 1)
    for m, c in enumerate(f.coeffs):
        if not c:
            continue
        for k in range(m + 1):
            s = stirling1_signed(m, k) if inverse else stirling2(m, k)
            if s:
                out[k] += c * s
    return Polynomial(out)


def binomial_poly(n: int) -> Polynomial:
    """(1 + t)^n."""
    return Polynomial(math.comb(n, k) for k in range(n + 1))

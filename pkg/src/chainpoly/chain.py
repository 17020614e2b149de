"""Chain polynomials of a lower-triangular matrix and what follows from them.

For R = (r_{n,k}) the chain polynomials are p_0 = 1 and
p_n = t * sum_{k<n} r_{n,k} p_k.  The linear map E(t^n) = p_n sends the
R_{n,k} triangle of a TN matrix to interlacing sequences of real-rooted
polynomials with roots in [-1, 0].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg
from .poly import (
    INF,
    Polynomial,
    RootIsolation,
    frac_str,
    interlaces,
    is_interlacing_sequence,
    is_real_rooted_in,
    isolate_roots,
    moebius_substitute,
)
from .tnmat import LowerTriMatrix, ResolutionCertificate, whitney_reduce, toeplitz


class InvariantViolation(AssertionError):
    """A proved property failed on certified input; indicates a bug."""


@dataclass
class ChainFamily:
    source: LowerTriMatrix
    polys: tuple[Polynomial, ...]
    certificates: Optional[list] = None

    def __getitem__(self, n: int) -> Polynomial:
        return self.polys[n]

    def to_json(self) -> dict:
        out = {
            "p": [str(p) for p in self.polys],
            "p_coeffs": [p.to_json()["coeffs"] for p in self.polys],
        }
        if self.certificates is not None:
            out["certificates"] = [c.to_json() for c in self.certificates]
        return out


def chain_polynomials(R: LowerTriMatrix) -> ChainFamily:
    t = Polynomial.t()
    ps = [Polynomial([1])]
    for n in range(1, R.N + 1):
        acc = Polynomial()
        for k in range(n):
            if R[n, k]:
                acc = acc + ps[k] * R[n, k]
        ps.append(acc * t)
    return ChainFamily(R, tuple(ps))


def chain_poly_det(R: LowerTriMatrix, n: int) -> Polynomial:
    """p_n as (-1)^n det of the block {1..n} x {0..n-1} of I - t(R - I)."""
    if n == 0:
        return Polynomial([1])
    rows = []
    for a in range(1, n + 1):
        row = []
        for b in range(n):
            if a == b:
                row.append(Polynomial([1]))
            elif a > b:
                row.append(Polynomial((0, -R[a, b])))
            else:
                row.append(Polynomial())
        rows.append(row)
    d = linalg.poly_det(rows)
    return d if n % 2 == 0 else -d


def subdivision(R: LowerTriMatrix, f: Polynomial, fam: Optional[ChainFamily] = None) -> Polynomial:
    """E(f) = sum_n f_n p_n."""
    if f.degree > R.N:
        raise ValueError(f"degree {f.degree} exceeds matrix order {R.N}")
    fam = fam or chain_polynomials(R)
    out = Polynomial()
    for n, c in enumerate(f.coeffs):
        if c:
            out = out + fam.polys[n] * c
    return out


@dataclass
class InterlacingCertificate:
    n: int
    polys: tuple[Polynomial, ...]
    roots: tuple[Optional[RootIsolation], ...]
    in_interval: bool
    interlacing: bool
    successive: Optional[bool]
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.in_interval and self.interlacing and self.successive is not False

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "E_R": [str(p) for p in self.polys],
            "roots": [r.to_json() if r is not None else None for r in self.roots],
            "real_rooted_in_[-1,0]": self.in_interval,
            "interlacing": self.interlacing,
            "p_n_precedes_p_n+1": self.successive,
        }


def interlacing_certificate(
    R: LowerTriMatrix,
    n: int,
    cert: Optional[ResolutionCertificate] = None,
    fam: Optional[ChainFamily] = None,
) -> InterlacingCertificate:
    """Check that {E(R_{n,k})}_k is interlacing and real-rooted in [-1, 0].

    Raises ValueError when R is not TN and InvariantViolation if a check
    fails on a TN matrix.
    """
    if not 0 <= n <= R.N:
        raise ValueError(f"n = {n} outside 0..{R.N}")
    cert = cert or whitney_reduce(R)
    fam = fam or chain_polynomials(R)
    polys = tuple(subdivision(R, cert.R(n, k), fam) for k in range(n + 1))
    in_interval = all(is_real_rooted_in(p, -1, 0) for p in polys)
    interlacing = in_interval and is_interlacing_sequence(polys)
    successive = None
    if n + 1 <= R.N:
        successive = interlaces(fam.polys[n], fam.polys[n + 1])
    roots = tuple(isolate_roots(p) if p else None for p in polys)
    out = InterlacingCertificate(n, polys, roots, in_interval, interlacing, successive)
    if not out.ok:
        raise InvariantViolation(f"interlacing certificate failed at n = {n} for a TN matrix")
    return out


# ---------------------------------------------------------------------------
# zeta polynomials


def _lagrange(xs: Sequence[int], ys: Sequence[Fraction]) -> Polynomial:
    out = Polynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        term = Polynomial([yi])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Polynomial((-xj, 1)) / (xi - xj)
        out = out + term
    return out


def _power_entry_table(R: LowerTriMatrix, i: int, j: int, upto: int) -> list[Fraction]:
    """(R^m)_{i,j} for m = 0..upto using the block between j and i."""
    idx = list(range(j, i + 1))
    size = len(idx)
    A = [[R[a, b] for b in idx] for a in idx]
    vec = [Fraction(0)] * size
    vec[0] = Fraction(1)
    vals = []
    for _ in range(upto + 1):
        vals.append(vec[-1])
        vec = [sum((A[a][b] * vec[b] for b in range(size)), Fraction(0)) for a in range(size)]
    return vals


def zeta_polynomial(R: LowerTriMatrix, i: int, j: int) -> Polynomial:
    """Polynomial Z with Z(m) = (R^m)_{i,j}, of degree i - j."""
    R.require_unit()
    if not 0 <= j <= i <= R.N:
        raise ValueError("need 0 <= j <= i <= N")
    d = i - j
    vals = _power_entry_table(R, i, j, d + 1)
    Z = _lagrange(list(range(d + 1)), vals[: d + 1])
    if Z(d + 1) != vals[d + 1]:
        raise InvariantViolation("zeta interpolation failed its check point")
    return Z


def zeta_is_pf(R: LowerTriMatrix, i: int, fam: Optional[ChainFamily] = None):
    """Whether (Z(m))_{m>=0} for the entry (i, 0) is a Polya frequency sequence.

    Returns (verdict, h) with h(t) = (1 - t)^i p_i(t / (1 - t)); the sequence
    is PF iff h has only real nonpositive zeros.
    """
    fam = fam or chain_polynomials(R)
    h = moebius_substitute(fam.polys[i], i)
    return is_real_rooted_in(h, -INF, 0), h


# ---------------------------------------------------------------------------
# Möbius function and flag h-numbers


def _parse_S(S: Optional[Iterable[int]], n_needed: int) -> list[int]:
    if S is None:
        return list(range(n_needed + 1))
    s = sorted(set(S))
    if not s or s[0] != 0:
        s = [0] + s
    return s


def mobius_rank_selected(R: LowerTriMatrix, S: Optional[Iterable[int]], n: int) -> Fraction:
    """(-1)^n det R[{s_1..s_n}, {s_0..s_{n-1}}] with s_0 = 0 < s_1 < ...

    With S = None (all ranks) this equals p_n(-1).
    """
    s = _parse_S(S, n)
    if n >= len(s):
        raise ValueError(f"S has only {len(s) - 1} positive elements, need {n}")
    if s[n] > R.N:
        raise ValueError(f"rank {s[n]} exceeds matrix order")
    d = linalg.det(R.submatrix(s[1 : n + 1], s[:n]))
    return d if n % 2 == 0 else -d


def flag_h(R: LowerTriMatrix, S: Iterable[int], n: int) -> Fraction:
    """det R[{s_1..s_k, n}, {0, s_1..s_k}] for S = {s_1 < ... < s_k} in [n-1]."""
    s = sorted(set(S))
    if any(x < 1 or x >= n for x in s):
        raise ValueError("S must be a subset of {1..n-1}")
    if n > R.N:
        raise ValueError(f"n = {n} exceeds matrix order {R.N}")
    return linalg.det(R.submatrix(s + [n], [0] + s))


def upho_chain_polynomials(rank_seq: Sequence, upto: int) -> ChainFamily:
    """Chain polynomials of the Toeplitz matrix (r_{n-k}).

    When the Toeplitz matrix is TN, interlacing certificates for
    n = 0..upto are attached.
    """
    rs = [Fraction(x) if not isinstance(x, str) else Fraction(x) for x in rank_seq]
    if not rs or rs[0] != 1:
        raise ValueError("rank sequence must start with 1")
    if any(x <= 0 for x in rs[: upto + 1]):
        raise ValueError("rank sequence must be positive")
    R = toeplitz(rs, upto)
    fam = chain_polynomials(R)
    try:
        cert = whitney_reduce(R)
    except ValueError:
        return fam
    fam.certificates = [interlacing_certificate(R, n, cert, fam) for n in range(upto + 1)]
    return fam


def frac_list(xs) -> list[str]:
    return [frac_str(x) for x in xs]

"""Pólya frequency sequences and the polynomial families they generate."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .chain import InvariantViolation
from .poly import (
    INF,
    Polynomial,
    frac_str,
    interlaces,
    is_real_rooted_in,
    to_fraction,
)
from .tnmat import LowerTriMatrix, toeplitz  # noqa: F401  (re-exported)


@dataclass(frozen=True)
class PFGenFun:
    """C x^N e^{gamma x} prod(1 + alpha_i x) / prod(1 - beta_i x)."""

    C: Fraction = Fraction(1)
    N: int = 0
    gamma: Fraction = Fraction(0)
    alphas: tuple = ()
    betas: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "C", to_fraction(self.C))
        object.__setattr__(self, "gamma", to_fraction(self.gamma))
        object.__setattr__(self, "alphas", tuple(to_fraction(a) for a in self.alphas))
        object.__setattr__(self, "betas", tuple(to_fraction(b) for b in self.betas))
        if self.C < 0 or self.gamma < 0 or self.N < 0:
            raise ValueError("C, gamma and N must be nonnegative")
        if any(a < 0 for a in self.alphas) or any(b < 0 for b in self.betas):
            raise ValueError("alphas and betas must be nonnegative")
        if sum(self.alphas) + sum(self.betas) == INF:
            raise ValueError("parameter sums must be finite")

    def to_json(self) -> dict:
        return {
            "C": frac_str(self.C),
            "N": self.N,
            "gamma": frac_str(self.gamma),
            "alphas": [frac_str(a) for a in self.alphas],
            "betas": [frac_str(b) for b in self.betas],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PFGenFun":
        return cls(
            C=obj.get("C", 1),
            N=int(obj.get("N", 0)),
            gamma=obj.get("gamma", 0),
            alphas=tuple(obj.get("alphas", ())),
            betas=tuple(obj.get("betas", ())),
        )


def _series_mul(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def series_inverse(a: Sequence, n: int) -> list[Fraction]:
    """Coefficients of 1/a(x) up to x^n; needs a_0 != 0."""
    a = [to_fraction(x) for x in a]
    if not a or a[0] == 0:
        raise ValueError("series is not invertible")
    out = [Fraction(0)] * (n + 1)
    out[0] = 1 / a[0]
    for m in range(1, n + 1):
        s = sum((a[j] * out[m - j] for j in range(1, min(m, len(a) - 1) + 1)), Fraction(0))
        out[m] = -s / a[0]
    return out


def series_coeffs(f: PFGenFun, upto: int) -> list[Fraction]:
    """Taylor coefficients a_0..a_upto of f."""
    s = [Fraction(0)] * (upto + 1)
    s[0] = Fraction(1)
    exp = [f.gamma**k / math.factorial(k) for k in range(upto + 1)]
    s = _series_mul(s, exp, upto)
    for a in f.alphas:
        s = _series_mul(s, [Fraction(1), a], upto)
    for b in f.betas:
        s = _series_mul(s, [b**k for k in range(upto + 1)], upto)
    s = [f.C * x for x in s]
    return ([Fraction(0)] * f.N + s)[: upto + 1]


def convolution_polynomials(a: Sequence, upto: int) -> list[Polynomial]:
    """r_0 = 1, r_n = t * sum_{k<n} a_{n-k} r_k; these generate 1/(1 - t(f - f(0)))."""
    a = [to_fraction(x) for x in a]
    if len(a) < upto + 1:
        raise ValueError(f"need {upto + 1} coefficients")
    rs = [Polynomial([1])]
    for n in range(1, upto + 1):
        acc = Polynomial()
        for k in range(n):
            if a[n - k]:
                acc = acc + rs[k] * a[n - k]
        rs.append(acc.shift_up(1))
    return rs


@dataclass
class PFCertificate:
    interval: tuple
    real_rooted: list = field(default_factory=list)
    interlacing: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.real_rooted) and all(self.interlacing)

    def to_json(self) -> dict:
        lo, hi = self.interval
        return {
            "interval": [frac_str(lo) if lo != -INF else "-inf", frac_str(hi)],
            "real_rooted": self.real_rooted,
            "successive_interlacing": self.interlacing,
        }


def _certify(polys, lo, hi, strict_zero=False) -> PFCertificate:
    cert = PFCertificate((lo, hi))
    for p in polys:
        ok = is_real_rooted_in(p, lo, hi)
        if ok and strict_zero and p.degree >= 1 and p(Fraction(0)) == 0:
            ok = False
        cert.real_rooted.append(ok)
    for p, q in zip(polys, polys[1:]):
        cert.interlacing.append(interlaces(p, q))
    return cert


def pft_family(f: PFGenFun, upto: int):
    """Polynomials generated by 1/(1 - t f(x)) with f(0) > 0.

    Returns (polys, certificate); every r_n is real-rooted with roots in
    [-1/f(0), 0] and r_n ≺ r_{n+1}.
    """
    a = series_coeffs(f, upto)
    if a[0] == 0:
        raise ValueError("f(0) = 0: shift required (divide out the power of x first)")
    rs = convolution_polynomials(a, upto)
    cert = _certify(rs, -1 / a[0], Fraction(0))
    if not cert.ok:
        raise InvariantViolation("PF family failed its real-rootedness certificate")
    return rs, cert


def forgacs_tran(Q: Polynomial, r: int, upto: int):
    """Polynomials q_n from sum_n q_n x^n = 1/(Q(x) - t x^r).

    Q must have Q(0) > 0 and only real positive zeros; r >= 1.  Returns
    (polys, certificate) with every q_n real-rooted with negative zeros.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if not Q or Q[0] <= 0:
        raise ValueError("Q(0) must be positive")
    if not is_real_rooted_in(Q, Fraction(0), INF):
        raise ValueError("Q must have only real positive zeros")
    t = Polynomial.t()
    q0 = Q[0]
    qs: list[Polynomial] = []
    for n in range(upto + 1):
        acc = Polynomial([1]) if n == 0 else Polynomial()
        if n - r >= 0:
            acc = acc + t * qs[n - r]
        for j in range(1, min(n, Q.degree) + 1):
            if Q[j]:
                acc = acc - qs[n - j] * Q[j]
        qs.append(acc / q0)
    cert = _certify(qs, -INF, Fraction(0), strict_zero=True)
    if not cert.ok:
        raise InvariantViolation("Forgács-Tran family failed its certificate")
    return qs, cert


def is_pf_polynomial_values(P: Polynomial):
    """Whether (P(n))_{n>=0} is a Pólya frequency sequence.

    Writes sum_n P(n) x^n = h(x)/(1-x)^{d+1}; PF iff h has only real
    nonpositive zeros.  Returns (verdict, h).
    """
    d = max(P.degree, 0)
    vals = [P(Fraction(n)) for n in range(d + 1)]
    h = []
    for k in range(d + 1):
        h.append(sum(((-1) ** j * math.comb(d + 1, j) * vals[k - j] for j in range(k + 1)), Fraction(0)))
    hp = Polynomial(h)
    return is_real_rooted_in(hp, -INF, 0), hp

"""Lower-triangular matrices, total nonnegativity and Whitney reduction.

A unit lower-triangular matrix R = (r_{n,k}) with 0 <= k <= n <= N is
totally nonnegative (TN) exactly when it factors through a nonnegative
weight table lambda_{n,k}.  The weights determine a triangle of
polynomials R_{n,k}(t) with R_{n,n} = t^n and

    R_{n+1,k} = R_{n+1,k+1} + lambda_{n,k} R_{n,k},

whose first column R_{n,0} recovers the rows of R.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .poly import Polynomial, frac_str, to_fraction


class LowerTriMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rs = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        if not rs:
            raise ValueError("matrix needs at least one row")
        for i, row in enumerate(rs):
            if len(row) != i + 1:
                raise ValueError(f"row {i} has length {len(row)}, expected {i + 1}")
        self.rows = rs

    @property
    def N(self) -> int:
        return len(self.rows) - 1

    @property
    def unit_diagonal(self) -> bool:
        return all(row[-1] == 1 for row in self.rows)

    def require_unit(self) -> None:
        if not self.unit_diagonal:
            bad = next(i for i, row in enumerate(self.rows) if row[-1] != 1)
            raise ValueError(f"non-unit diagonal at ({bad},{bad})")

    def __getitem__(self, nk) -> Fraction:
        n, k = nk
        if k > n:
            return Fraction(0)
        return self.rows[n][k]

    def row_poly(self, n: int) -> Polynomial:
        return Polynomial(self.rows[n])

    def dense(self) -> list[list[Fraction]]:
        m = len(self.rows)
        return [[self[i, j] for j in range(m)] for i in range(m)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[Fraction]]:
        return [[self[i, j] for j in cols] for i in rows]

    def principal(self, idx: Sequence[int]) -> "LowerTriMatrix":
        idx = sorted(idx)
        return LowerTriMatrix([[self[i, j] for j in idx[: a + 1]] for a, i in enumerate(idx)])

    def truncate(self, N: int) -> "LowerTriMatrix":
        return LowerTriMatrix(self.rows[: N + 1])

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, LowerTriMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"LowerTriMatrix({[[frac_str(x) for x in r] for r in self.rows]})"

    def to_json(self) -> dict:
        return {"rows": [[frac_str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "LowerTriMatrix":
        if isinstance(obj, dict):
            obj = obj["rows"]
        return cls(obj)


def minor(R: LowerTriMatrix, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    return linalg.det(R.submatrix(rows, cols))


def _structurally_zero(rows, cols) -> bool:
    # in a lower-triangular matrix det R[I,J] = 0 when some i_s < j_s
    return any(i < j for i, j in zip(rows, cols))


def is_tn_bruteforce(R: LowerTriMatrix) -> bool:
    """Check every minor; exponential, intended as an oracle for N <= 8."""
    if R.N > 8:
        raise ValueError("brute-force TN check is capped at N = 8")
    m = R.N + 1
    dense = R.dense()
    if any(x < 0 for row in dense for x in row):
        return False
    for size in range(2, m + 1):
        for rows in itertools.combinations(range(m), size):
            for cols in itertools.combinations(range(m), size):
                if _structurally_zero(rows, cols):
                    continue
                sub = [[dense[i][j] for j in cols] for i in rows]
                if linalg.det(sub) < 0:
                    return False
    return True


class WhitneyFailure(ValueError):
    """The matrix is not TN; carries a witness found during reduction."""

    def __init__(self, kind: str, level: int, position: tuple[int, int], value: Fraction):
        self.kind = kind
        self.level = level
        self.position = position
        self.value = Fraction(value)
        n, k = position
        if kind == "negative_entry":
            msg = f"entry ({n},{k}) = {frac_str(value)}"
        elif kind == "negative_deflated_entry":
            msg = f"deflated entry ({n},{k}) = {frac_str(value)}"
        else:
            msg = f"zero pattern: column entry ({n},{k}) = {frac_str(value)} follows a zero"
        if level and kind != "negative_deflated_entry":
            msg += f" at reduction level {level}"
        super().__init__(msg)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "level": self.level,
            "position": list(self.position),
            "value": frac_str(self.value),
            "message": str(self),
        }


@dataclass(frozen=True)
class ResolutionCertificate:
    """Nonnegative weights lambda_{n,k} (0 <= k <= n < N) and the R_{n,k} triangle."""

    lam: tuple[tuple[Fraction, ...], ...]
    rnk: tuple[tuple[Polynomial, ...], ...]

    @property
    def N(self) -> int:
        return len(self.rnk) - 1

    def R(self, n: int, k: int) -> Polynomial:
        return self.rnk[n][k]

    def alpha(self, i: int, k: int) -> Fraction:
        """Eigenvalue of the i-th diagonal operator on t^k: lambda_{k+i-1,k}."""
        return self.lam[k + i - 1][k]

    def validate(self) -> None:
        N = len(self.lam)
        if len(self.rnk) != N + 1:
            raise ValueError("weight table and polynomial triangle disagree in size")
        for n, row in enumerate(self.lam):
            if len(row) != n + 1:
                raise ValueError(f"weight row {n} has wrong length")
            for k, x in enumerate(row):
                if x < 0:
                    raise ValueError(f"negative weight lambda({n},{k}) = {frac_str(x)}")
                if x == 0 and n + 1 < N and self.lam[n + 1][k] != 0:
                    raise ValueError(f"weight lambda({n + 1},{k}) should vanish after a zero")
        if rnk_from_lambda(self.lam) != self.rnk:
            raise ValueError("polynomial triangle does not match the weights")

    def matrix(self) -> LowerTriMatrix:
        return LowerTriMatrix([[self.rnk[n][0][k] for k in range(n + 1)] for n in range(self.N + 1)])

    def to_json(self) -> dict:
        return {
            "lambda": [[frac_str(x) for x in row] for row in self.lam],
            "R": [[str(p) for p in row] for row in self.rnk],
            "R_coeffs": [[p.to_json()["coeffs"] for p in row] for row in self.rnk],
        }

    @classmethod
    def from_json(cls, obj) -> "ResolutionCertificate":
        lam = tuple(tuple(to_fraction(x) for x in row) for row in obj["lambda"])
        if "R_coeffs" in obj:
            rnk = tuple(tuple(Polynomial(c) for c in row) for row in obj["R_coeffs"])
        else:
            rnk = rnk_from_lambda(lam)
        return cls(lam, rnk)


def rnk_from_lambda(lam: Sequence[Sequence]) -> tuple[tuple[Polynomial, ...], ...]:
    """Build R_{n,k} from weights; works for any weights, normalized or not."""
    N = len(lam)
    t_pows = [Polynomial.monomial(n) for n in range(N + 1)]
    rows = [(Polynomial([1]),)]
    for n in range(N):
        prev = rows[-1]
        new = [None] * (n + 2)
        new[n + 1] = t_pows[n + 1]
        for k in range(n, -1, -1):
            new[k] = new[k + 1] + prev[k] * to_fraction(lam[n][k])
        rows.append(tuple(new))
    return tuple(rows)


def matrix_from_lambda(lam: Sequence[Sequence]) -> LowerTriMatrix:
    rnk = rnk_from_lambda(lam)
    return LowerTriMatrix([[rnk[n][0][k] for k in range(n + 1)] for n in range(len(rnk))])


def whitney_reduce(R: LowerTriMatrix) -> ResolutionCertificate:
    """Resolve a unit lower-triangular matrix, or raise WhitneyFailure."""
    R.require_unit()
    N = R.N
    cur = [list(row) for row in R.rows]
    lam = [[Fraction(0)] * (n + 1) for n in range(N)]
    for level in range(N + 1):
        size = N - level
        for n in range(size + 1):
            for k in range(n + 1):
                if cur[n][k] < 0:
                    kind = "negative_entry" if level == 0 else "negative_deflated_entry"
                    raise WhitneyFailure(kind, level, (n, k), cur[n][k])
        if size == 0:
            break
        col = [cur[n][0] for n in range(size + 1)]
        z = next((j for j in range(1, size + 1) if col[j] == 0), None)
        if z is not None:
            for j in range(z + 1, size + 1):
                if col[j] != 0:
                    raise WhitneyFailure("zero_pattern", level, (j, 0), col[j])
        mu = []
        for n in range(size):
            mu.append(col[n + 1] / col[n] if (z is None or n + 1 < z) else Fraction(0))
        for n in range(size):
            lam[n + level][level] = mu[n]
        nxt = []
        for n in range(size):
            row = []
            for k in range(n + 1):
                above = cur[n][k + 1] if k + 1 <= n else 0
                row.append(cur[n + 1][k + 1] - mu[n] * above)
            nxt.append(row)
        cur = nxt
    lam_t = tuple(tuple(row) for row in lam)
    cert = ResolutionCertificate(lam_t, rnk_from_lambda(lam_t))
    for n in range(N + 1):
        if cert.rnk[n][0] != R.row_poly(n):
            raise AssertionError(f"reconstructed row {n} does not match")
    return cert


def is_tn(R: LowerTriMatrix) -> bool:
    try:
        whitney_reduce(R)
    except WhitneyFailure:
        return False
    return True


def reconstruct(cert: ResolutionCertificate) -> LowerTriMatrix:
    cert.validate()
    return cert.matrix()


def diagonal_operator_poly(cert: ResolutionCertificate, n: int, k: int = 0) -> Polynomial:
    """(t + alpha_1) ... (t + alpha_{n-k}) applied to t^k."""
    g = Polynomial.monomial(k)
    for i in range(n - k, 0, -1):
        shifted = g.shift_up(1)
        scaled = Polynomial(c * cert.alpha(i, j) if c else 0 for j, c in enumerate(g.coeffs))
        g = shifted + scaled
    return g


def elementary_symmetric_matrix(xs: Sequence) -> LowerTriMatrix:
    """Rows r_{n,k} = e_{n-k}(x_1, ..., x_n), so row n is prod (t + x_i)."""
    xs = [to_fraction(x) for x in xs]
    if any(x < 0 for x in xs):
        raise ValueError("entries must be nonnegative")
    rows = []
    p = Polynomial([1])
    rows.append(list(p.coeffs))
    for x in xs:
        p = p * Polynomial((x, 1))
        rows.append([p[k] for k in range(len(rows) + 1)])
    return LowerTriMatrix(rows)


def toeplitz(a: Sequence, N: int) -> LowerTriMatrix:
    """Lower-triangular Toeplitz matrix (a_{n-k}); needs a_0 = 1."""
    a = [to_fraction(x) for x in a]
    if not a or a[0] != 1:
        raise ValueError("Toeplitz sequence must start with 1")
    if len(a) < N + 1:
        raise ValueError(f"need {N + 1} terms, got {len(a)}")
    return LowerTriMatrix([[a[n - k] for k in range(n + 1)] for n in range(N + 1)])

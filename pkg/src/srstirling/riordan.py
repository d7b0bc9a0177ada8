"""Exponential Riordan arrays and the (S,r)-Stirling matrices.

``M`` and ``L`` hold the second- and first-kind numbers, ``T`` and ``U``
their inverses. Inversion is forward substitution on the triangle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .indexset import egf_cycles, egf_E, egf_E_derived, ogf_shifted
from .polynomial import IntPolynomial
from .series import EgfSeries
from .stirling import SRContext, stirling1, stirling2


class MatrixError(ValueError):
    pass


class TriMatrix:
    """Lower-triangular matrix of rationals; row ``n`` stores entries ``0..n``."""

    __slots__ = ("size", "rows", "riordan")

    def __init__(self, rows: Sequence[Sequence], riordan: bool = True):
        rs = []
        for n, row in enumerate(rows):
            row = [Fraction(v) for v in row]
            if len(row) < n + 1:
                row += [Fraction(0)] * (n + 1 - len(row))
            if any(row[n + 1:]):
                raise MatrixError(f"row {n} has a nonzero entry above the diagonal")
            rs.append(tuple(row[: n + 1]))
        self.size = len(rs)
        self.rows = tuple(rs)
        self.riordan = riordan

    @classmethod
    def identity(cls, size: int) -> "TriMatrix":
        return cls([[0] * n + [1] for n in range(size)])

    def __getitem__(self, nk: tuple[int, int]) -> Fraction:
        n, k = nk
        if k > n:
            return Fraction(0)
        return self.rows[n][k]

    def __eq__(self, other) -> bool:
        return isinstance(other, TriMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"TriMatrix(size={self.size}, riordan={self.riordan})"

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.rows for v in row)

    def int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise MatrixError("matrix has non-integer entries")
        return [[v.numerator for v in row] for row in self.rows]

    def dense(self) -> list[list[Fraction]]:
        return [[self[n, k] for k in range(self.size)] for n in range(self.size)]

    def column(self, k: int) -> list[Fraction]:
        return [self[n, k] for n in range(self.size)]

    def row_sums(self) -> list[Fraction]:
        return [sum(row, Fraction(0)) for row in self.rows]

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.size:
            raise MatrixError(f"vector length {len(vec)} does not match size {self.size}")
        return [sum((self.rows[n][k] * vec[k] for k in range(n + 1)), Fraction(0)) for n in range(self.size)]

    def truncate(self, size: int) -> "TriMatrix":
        return TriMatrix(self.rows[:size], self.riordan)

    # -- serialisation ----------------------------------------------------
    def to_json_obj(self) -> dict:
        return {"size": self.size, "rows": [[str(v) for v in row] for row in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text_or_obj) -> "TriMatrix":
        obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
        rows = [[Fraction(v) for v in row] for row in obj["rows"]]
        if len(rows) != obj["size"]:
            raise MatrixError("size field disagrees with row count")
        return cls(rows)


@dataclass(frozen=True)
class RiordanPair:
    g: EgfSeries
    f: EgfSeries

    def __post_init__(self):
        if self.g.order != self.f.order:
            raise MatrixError("g and f must share a truncation order")
        if self.g[0] == 0:
            raise MatrixError("g(0) must be nonzero")
        if self.f[0] != 0:
            raise MatrixError("f(0) must be zero")
        if self.f.order < 1 or self.f[1] == 0:
            raise MatrixError("f'(0) must be nonzero")

    def __mul__(self, other: "RiordanPair") -> "RiordanPair":
        """``<g,f> * <h,l> = <g h(f), l(f)>``"""
        return RiordanPair(self.g * other.g.compose(self.f), other.f.compose(self.f))

    def inverse(self) -> "RiordanPair":
        fbar = self.f.reversion()
        return RiordanPair(self.g.compose(fbar).reciprocal(), fbar)

    def apply_series(self, h: EgfSeries) -> EgfSeries:
        """Fundamental theorem: column vector with EGF ``h`` maps to ``g h(f)``."""
        return self.g * h.compose(self.f)


def build(pair: RiordanPair, size: int) -> TriMatrix:
    if size > pair.g.order + 1:
        raise MatrixError(f"size {size} needs series order at least {size - 1}")
    rows = [[Fraction(0)] * (n + 1) for n in range(size)]
    col = pair.g
    for k in range(size):
        for n in range(k, size):
            rows[n][k] = col.egf(n) / factorial(k)
        col = col * pair.f
    return TriMatrix(rows)


def _pair_for(ctx: SRContext, kind: str) -> RiordanPair | None:
    S, N = ctx.S, ctx.N
    if 1 not in S:
        return None
    if kind == "second":
        return RiordanPair(egf_E_derived(S, N) ** ctx.r, egf_E(S, N))
    return RiordanPair(ogf_shifted(S, N) ** ctx.r, egf_cycles(S, N))


def riordan_pair(ctx: SRContext, kind: str = "second") -> RiordanPair:
    pair = _pair_for(ctx, kind)
    if pair is None:
        raise MatrixError("the Stirling matrix is a Riordan array only when 1 is in S")
    return pair


def _stirling_matrix(ctx: SRContext, size: int, kind: str) -> TriMatrix:
    if size - 1 > ctx.N:
        raise MatrixError(f"size {size} exceeds truncation order {ctx.N} + 1")
    fn = stirling2 if kind == "second" else stirling1
    rows = [[fn(ctx, n, k) for k in range(n + 1)] for n in range(size)]
    return TriMatrix(rows, riordan=1 in ctx.S)


def matrix_M(ctx: SRContext, size: int) -> TriMatrix:
    return _stirling_matrix(ctx, size, "second")


def matrix_L(ctx: SRContext, size: int) -> TriMatrix:
    return _stirling_matrix(ctx, size, "first")


def multiply(A: TriMatrix, B: TriMatrix) -> TriMatrix:
    if A.size != B.size:
        raise MatrixError(f"size mismatch: {A.size} vs {B.size}")
    rows = []
    for n in range(A.size):
        a = A.rows[n]
        rows.append([sum((a[i] * B.rows[i][k] for i in range(k, n + 1)), Fraction(0)) for k in range(n + 1)])
    return TriMatrix(rows, A.riordan and B.riordan)


def invert(A: TriMatrix) -> TriMatrix:
    """Forward substitution, column by column."""
    size = A.size
    for n in range(size):
        if A.rows[n][n] == 0:
            raise MatrixError(f"zero diagonal entry in row {n}; matrix is not invertible")
    inv = [[Fraction(0)] * (n + 1) for n in range(size)]
    for k in range(size):
        inv[k][k] = 1 / A.rows[k][k]
        for n in range(k + 1, size):
            a = A.rows[n]
            s = sum((a[i] * inv[i][k] for i in range(k, n)), Fraction(0))
            inv[n][k] = -s / a[n]
    return TriMatrix(inv, A.riordan)


def matrix_T(ctx: SRContext, size: int) -> TriMatrix:
    return invert(matrix_M(ctx, size))


def matrix_U(ctx: SRContext, size: int) -> TriMatrix:
    return invert(matrix_L(ctx, size))


# -- determinantal identities ---------------------------------------------
def _require_one(ctx: SRContext) -> None:
    if 1 not in ctx.S:
        raise MatrixError("the determinant identity assumes 1 is in S")


def determinant_matrix(ctx: SRContext, n: int, kind: str = "second") -> list[list[IntPolynomial]]:
    """The (n+1)x(n+1) polynomial matrix whose determinant times (-1)^n is the polynomial.

    Row 0 is ``1, x, ..., x^n``; row ``i+1`` column ``j`` is the inverse
    entry ``(j, i)`` (zero above, 1 on the shifted diagonal).
    """
    _require_one(ctx)
    inv = matrix_T(ctx, n + 1) if kind == "second" else matrix_U(ctx, n + 1)
    rows = [[IntPolynomial.monomial(j) for j in range(n + 1)]]
    for i in range(n):
        rows.append([IntPolynomial([int(inv[j, i])]) for j in range(n + 1)])
    return rows


def _laplace_last_column(ctx: SRContext, n: int, kind: str) -> IntPolynomial:
    _require_one(ctx)
    inv = matrix_T(ctx, n + 1) if kind == "second" else matrix_U(ctx, n + 1)
    # expanding along the last column gives P_m = x^m - sum_{k<m} inv(m,k) P_k
    polys: list[IntPolynomial] = []
    for m in range(n + 1):
        p = IntPolynomial.monomial(m)
        for k in range(m):
            c = inv[m, k]
            if c:
                p = p - polys[k].scale(int(c))
        polys.append(p)
    return polys[n]


def bell_poly_determinant(ctx: SRContext, n: int) -> IntPolynomial:
    return _laplace_last_column(ctx, n, "second")


def factorial_poly_determinant(ctx: SRContext, n: int) -> IntPolynomial:
    return _laplace_last_column(ctx, n, "first")

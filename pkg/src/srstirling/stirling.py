"""(S,r)-Stirling numbers of both kinds, Bell numbers and polynomials.

The computation path is EGF extraction: column ``k`` of the second-kind
triangle is ``E_{S'}(x)^r E_S(x)^k / k!`` and of the first-kind triangle
``(sum_{s in S} x^(s-1))^r (sum_{s in S} x^s / s)^k / k!``.

The brute-force oracles enumerate set partitions and permutations of
``[n+r]`` directly; they share nothing with the series code.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .indexset import IndexSet, egf_cycles, egf_E, egf_E_derived, ogf_shifted, shift
from .polynomial import IntPolynomial
from .series import DEFAULT_ORDER, EgfSeries

PARTITION_GUARD = 12
PERMUTATION_GUARD = 9


class GuardExceeded(ValueError):
    def __init__(self, what: str, size: int, guard: int):
        super().__init__(f"{what}: size {size} exceeds guard {guard} (raise it with --guard)")
        self.size = size
        self.guard = guard


class IntegralityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SRContext:
    S: IndexSet
    r: int = 0
    N: int = DEFAULT_ORDER

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be non-negative")
        if self.N < 0:
            raise ValueError("truncation order must be non-negative")
        if self.S.has_zero and self.r > 0:
            # the special-block series would need the element -1
            raise ValueError("a set containing 0 is only usable with r = 0")

    def with_r(self, r: int) -> "SRContext":
        return SRContext(self.S, r, self.N)

    def with_set(self, S: IndexSet) -> "SRContext":
        return SRContext(S, self.r, self.N)


# -- EGF engine -----------------------------------------------------------
def _special_series(S: IndexSet, N: int, kind: str) -> EgfSeries:
    return egf_E_derived(S, N) if kind == "second" else ogf_shifted(S, N)


def _block_series(S: IndexSet, N: int, kind: str) -> EgfSeries:
    return egf_E(S, N) if kind == "second" else egf_cycles(S, N)


@lru_cache(maxsize=512)
def _table(S: IndexSet, r: int, N: int, kind: str) -> tuple[tuple[Fraction, ...], ...]:
    """Rows ``0..N`` of ``n! [x^n] g f^k / k!`` as exact rationals."""
    if kind not in ("second", "first"):
        raise ValueError(f"unknown kind {kind!r}")
    f = _block_series(S, N, kind)
    g = _special_series(S, N, kind) ** r if r else EgfSeries.one(N)
    # full square: when 0 is in S the block series has a constant term and
    # the formal extraction is nonzero above the diagonal as well
    rows = [[Fraction(0)] * (N + 1) for n in range(N + 1)]
    col = g
    for k in range(N + 1):
        for n in range(N + 1):
            if col[n]:
                rows[n][k] = col[n] * factorial(n) / factorial(k)
        col = col * f
    return tuple(tuple(row) for row in rows)


def _check_range(ctx: SRContext, n: int, k: int | None = None) -> None:
    if n < 0 or (k is not None and k < 0):
        raise ValueError("n and k must be non-negative")
    if n > ctx.N:
        raise ValueError(f"n = {n} exceeds truncation order N = {ctx.N}")


def _to_int(v: Fraction, what: str) -> int:
    if v.denominator != 1:
        raise IntegralityError(f"{what} produced the non-integer {v}")
    if v < 0:
        raise IntegralityError(f"{what} produced the negative value {v}")
    return v.numerator


def stirling2_rational(ctx: SRContext, n: int, k: int) -> Fraction:
    """Second-kind value as a rational; needed for sets containing 0."""
    _check_range(ctx, n, k)
    if k > ctx.N:
        return Fraction(0)
    return _table(ctx.S, ctx.r, ctx.N, "second")[n][k]


def stirling1_rational(ctx: SRContext, n: int, k: int) -> Fraction:
    _check_range(ctx, n, k)
    if k > ctx.N:
        return Fraction(0)
    return _table(ctx.S, ctx.r, ctx.N, "first")[n][k]


def stirling2(ctx: SRContext, n: int, k: int) -> int:
    if ctx.S.has_zero:
        raise ValueError("counting values need a set of positive integers; use stirling2_rational")
    return _to_int(stirling2_rational(ctx, n, k), f"stirling2(n={n}, k={k})")


def stirling1(ctx: SRContext, n: int, k: int) -> int:
    if ctx.S.has_zero:
        raise ValueError("counting values need a set of positive integers; use stirling1_rational")
    return _to_int(stirling1_rational(ctx, n, k), f"stirling1(n={n}, k={k})")


def stirling_row(ctx: SRContext, n: int, kind: str = "second") -> list[int]:
    fn = stirling2 if kind == "second" else stirling1
    return [fn(ctx, n, k) for k in range(n + 1)]


@lru_cache(maxsize=256)
def _bell_egf(S: IndexSet, r: int, N: int) -> EgfSeries:
    g = egf_E_derived(S, N) ** r
    return g * egf_E(S, N).exp()


def bell(ctx: SRContext, n: int, method: str = "sum") -> int:
    """``B_{n,S,r}``: row sum (``method="sum"``) or ``E_{S'}^r exp(E_S)``."""
    _check_range(ctx, n)
    if method == "sum":
        return sum(stirling_row(ctx, n, "second"))
    if method == "egf":
        return _to_int(_bell_egf(ctx.S, ctx.r, ctx.N).egf(n), f"bell(n={n})")
    raise ValueError(f"unknown method {method!r}")


def bell_checked(ctx: SRContext, n: int) -> int:
    a = bell(ctx, n, "sum")
    b = bell(ctx, n, "egf")
    if a != b:
        raise IntegralityError(f"Bell paths disagree at n={n}: {a} vs {b}")
    return a


def bell_polynomial(ctx: SRContext, n: int) -> IntPolynomial:
    return IntPolynomial(stirling_row(ctx, n, "second"))


def factorial_polynomial(ctx: SRContext, n: int) -> IntPolynomial:
    return IntPolynomial(stirling_row(ctx, n, "first"))


def stirling2_k0(ctx: SRContext, n: int) -> int:
    """``{n 0}_{S,r}`` through the set-shifting propositions.

    Without 1 in S: ``r! {n r}_{S-1}``. With 1 in S the special singletons
    are split off: ``sum_i (r)_i {n i}_{(S minus {1}) - 1}``.
    """
    _check_range(ctx, n)
    S, r = ctx.S, ctx.r
    if 1 not in S:
        lowered = SRContext(shift(S, -1, allow_zero=False), 0, ctx.N)
        return factorial(r) * stirling2(lowered, n, r) if r <= n else 0
    rest = S.remove(1)
    if rest.is_empty():
        return 1 if n == 0 else 0
    lowered = SRContext(shift(rest, -1, allow_zero=False), 0, ctx.N)
    total = 0
    for i in range(0, min(r, n) + 1):
        total += factorial(r) // factorial(r - i) * stirling2(lowered, n, i)
    return total


# -- brute-force oracles --------------------------------------------------
def _set_partitions(m: int, r: int):
    """All partitions of ``range(m)`` where ``0..r-1`` sit in distinct blocks.

    Restricted-growth generation; yields a list of blocks (shared, so
    callers must copy if they keep it).
    """
    blocks: list[list[int]] = [[i] for i in range(min(r, m))]

    def rec(x):
        if x == m:
            yield blocks
            return
        for b in blocks:
            b.append(x)
            yield from rec(x + 1)
            b.pop()
        blocks.append([x])
        yield from rec(x + 1)
        blocks.pop()

    yield from rec(min(r, m))


@lru_cache(maxsize=None)
def _partition_shapes(n: int, r: int) -> Counter:
    """Counter of sorted block-size tuples over all r-partitions of [n+r]."""
    shapes: Counter = Counter()
    for blocks in _set_partitions(n + r, r):
        shapes[tuple(sorted(len(b) for b in blocks))] += 1
    return shapes


def _guard(what: str, size: int, guard: int | None, default: int) -> None:
    g = default if guard is None else guard
    if size > g:
        raise GuardExceeded(what, size, g)


def oracle_partitions(ctx: SRContext, n: int, k: int, witnesses: bool = False, guard: int | None = None):
    """Count (and optionally list) the (S,r)-partitions of [n+r] into k+r blocks.

    Elements are labelled ``1..n+r`` with ``1..r`` special. Witnesses are
    tuples of blocks, blocks sorted by minimum.
    """
    _guard("partition oracle", n + ctx.r, guard, PARTITION_GUARD)
    S, r = ctx.S, ctx.r
    if not witnesses:
        return sum(c for shape, c in _partition_shapes(n, r).items()
                   if len(shape) == k + r and all(S.contains(s) for s in shape))
    found = []
    for blocks in _set_partitions(n + r, r):
        if len(blocks) == k + r and all(S.contains(len(b)) for b in blocks):
            found.append(tuple(sorted(tuple(x + 1 for x in b) for b in blocks)))
    found.sort()
    return len(found), found


def _cycle_type(perm: tuple[int, ...], r: int):
    """Cycle lengths of a one-line permutation, or None when two specials share a cycle."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        specials = 0
        x = start
        while not seen[x]:
            seen[x] = True
            if x < r:
                specials += 1
            length += 1
            x = perm[x]
        if specials > 1:
            return None
        lengths.append(length)
    lengths.sort()
    return tuple(lengths)


@lru_cache(maxsize=None)
def _permutation_shapes(n: int, r: int) -> Counter:
    shapes: Counter = Counter()
    for perm in permutations(range(n + r)):
        t = _cycle_type(perm, r)
        if t is not None:
            shapes[t] += 1
    return shapes


def oracle_permutations(ctx: SRContext, n: int, k: int, guard: int | None = None) -> int:
    _guard("permutation oracle", n + ctx.r, guard, PERMUTATION_GUARD)
    S, r = ctx.S, ctx.r
    return sum(c for shape, c in _permutation_shapes(n, r).items()
               if len(shape) == k + r and all(S.contains(s) for s in shape))


def oracle_bell(ctx: SRContext, n: int, guard: int | None = None) -> int:
    return sum(oracle_partitions(ctx, n, k, guard=guard) for k in range(n + 1))

"""Composition-partition posets and their Möbius functions.

Elements of ``Pi_{S,r}(n)`` are pairs ``V||pi``: an r-tuple of disjoint
(possibly empty) components with sizes in ``S'`` and a partition of the
rest of ``[n]`` into blocks with sizes in ``S``. The ordered variant
``P_{S,r}(n)`` uses linear orders for the components and a permutation
(cycles, least element first) in place of the partition.

The order is decided directly (each block of the larger element is a union
of blocks of the smaller one, with the right counts); the closure of the
two single-step operations is kept as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Sequence

import numpy as np

from .indexset import IndexSet, is_plus_one_monoid

UNORDERED_GUARD = 7
ORDERED_GUARD = 5


class PosetError(ValueError):
    pass


# -- elements ---------------------------------------------------------------
def _fmt_set(xs) -> str:
    return "{" + ",".join(map(str, xs)) + "}" if xs else "{}"


@dataclass(frozen=True, order=True)
class CompositionPartitionPair:
    composition: tuple[tuple[int, ...], ...]
    partition: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, composition, partition) -> "CompositionPartitionPair":
        comp = tuple(tuple(sorted(c)) for c in composition)
        blocks = tuple(sorted(tuple(sorted(b)) for b in partition if b))
        return cls(comp, blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.partition)

    @property
    def support(self) -> int:
        return sum(map(len, self.composition)) + sum(map(len, self.partition))

    def __str__(self) -> str:
        comp = "(" + ",".join(_fmt_set(c) for c in self.composition) + ")"
        part = "|".join("".join(map(str, b)) if max(b) < 10 else " ".join(map(str, b)) for b in self.partition)
        return f"{comp}||{part or '{}'}"


@dataclass(frozen=True, order=True)
class OrderedCompositionPermutationPair:
    composition: tuple[tuple[int, ...], ...]
    permutation: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, composition, cycles) -> "OrderedCompositionPermutationPair":
        comp = tuple(tuple(c) for c in composition)
        cyc = []
        for c in cycles:
            c = tuple(c)
            if not c:
                continue
            i = c.index(min(c))
            cyc.append(c[i:] + c[:i])
        return cls(comp, tuple(sorted(cyc)))

    @property
    def num_blocks(self) -> int:
        return len(self.permutation)

    def __str__(self) -> str:
        comp = "(" + ",".join(" ".join(map(str, c)) for c in self.composition) + ")"
        perm = "".join("(" + " ".join(map(str, c)) + ")" for c in self.permutation)
        return f"{comp}||{perm or '{}'}"


# -- enumeration ------------------------------------------------------------
def _set_partitions_sized(items: Sequence[int], S: IndexSet):
    """Partitions of ``items`` into blocks with sizes in S (blocks as tuples)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for size in range(1, len(items) + 1):
        if not S.contains(size):
            continue
        for others in combinations(rest, size - 1):
            block = (first,) + others
            left = [x for x in rest if x not in others]
            for tail in _set_partitions_sized(left, S):
                yield (block,) + tail


def _cycle_partitions_sized(items: Sequence[int], S: IndexSet):
    """Permutations of ``items`` with every cycle length in S (least-first cycles)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for size in range(1, len(items) + 1):
        if not S.contains(size):
            continue
        for others in combinations(rest, size - 1):
            left = [x for x in rest if x not in others]
            tails = list(_cycle_partitions_sized(left, S))
            for order in permutations(others):
                cyc = (first,) + order
                for tail in tails:
                    yield (cyc,) + tail


def _compositions(n: int, r: int, S: IndexSet):
    """Pairs (components as sets, leftover elements) with component sizes in S'."""
    elems = list(range(1, n + 1))
    for labels in product(range(r + 1), repeat=n):
        comps = [[] for _ in range(r)]
        rest = []
        for x, lab in zip(elems, labels):
            (rest if lab == r else comps[lab]).append(x)
        if all(S.contains(len(c) + 1) for c in comps):
            yield comps, rest


def _check_monoid(S: IndexSet, allow_bounded: bool, bound: int) -> int | None:
    res = is_plus_one_monoid(S, bound)
    if res.verdict == "no":
        raise PosetError(f"{S} is not a +1-monoid (witness {res.witness})")
    if res.verdict == "yes-up-to-bound" and not allow_bounded:
        raise PosetError(f"{S} is a +1-monoid only up to {res.bound}; pass allow_bounded to accept")
    return res.bound


def _check_guard(n: int, guard: int | None, default: int, what: str) -> None:
    g = default if guard is None else guard
    if n > g:
        raise PosetError(f"{what}: n = {n} exceeds guard {g}")


def enumerate_pairs(S: IndexSet, r: int, n: int, allow_bounded: bool = False, bound: int = 64,
                    guard: int | None = None) -> list[CompositionPartitionPair]:
    _check_monoid(S, allow_bounded, bound)
    _check_guard(n, guard, UNORDERED_GUARD, "composition-partition pairs")
    return _pairs(S, r, n)


def _pairs(S, r, n):
    out = []
    for comps, rest in _compositions(n, r, S):
        for blocks in _set_partitions_sized(rest, S):
            out.append(CompositionPartitionPair.make(comps, blocks))
    out.sort()
    return out


def enumerate_ordered_pairs(S: IndexSet, r: int, n: int, allow_bounded: bool = False, bound: int = 64,
                            guard: int | None = None) -> list[OrderedCompositionPermutationPair]:
    _check_monoid(S, allow_bounded, bound)
    _check_guard(n, guard, ORDERED_GUARD, "ordered composition-permutation pairs")
    return _ordered_pairs(S, r, n)


def _ordered_pairs(S, r, n):
    out = []
    for comps, rest in _compositions(n, r, S):
        cycle_choices = list(_cycle_partitions_sized(rest, S))
        for orders in product(*(list(permutations(c)) for c in comps)):
            for cycles in cycle_choices:
                out.append(OrderedCompositionPermutationPair.make(orders, cycles))
    out.sort()
    return out


def pairs_by_blocks(elements) -> dict[int, list]:
    groups: dict[int, list] = {}
    for e in elements:
        groups.setdefault(e.num_blocks, []).append(e)
    return groups


# -- the direct order -------------------------------------------------------
def _targets(b) -> dict[int, tuple]:
    t = {}
    for i, comp in enumerate(b.composition):
        for p, x in enumerate(comp):
            t[x] = ("c", i, p)
    blocks = b.partition if isinstance(b, CompositionPartitionPair) else b.permutation
    for j, blk in enumerate(blocks):
        for p, x in enumerate(blk):
            t[x] = ("b", j, p)
    return t


def leq_pairs(a: CompositionPartitionPair, b: CompositionPartitionPair, S: IndexSet) -> bool:
    """``a <= b``: components of b extend those of a by t blocks of a (t in S'),
    each block of b is a union of s blocks of a (s in S)."""
    if len(a.composition) != len(b.composition):
        return False
    tb = _targets(b)
    for i, comp in enumerate(a.composition):
        if any(tb[x][:2] != ("c", i) for x in comp):
            return False
    counts: dict[tuple, int] = {}
    for blk in a.partition:
        where = {tb[x][:2] for x in blk}
        if len(where) != 1:
            return False
        (t,) = where
        counts[t] = counts.get(t, 0) + 1
    for i in range(len(b.composition)):
        if not S.contains(counts.get(("c", i), 0) + 1):
            return False
    return all(S.contains(counts.get(("b", j), 0)) for j in range(len(b.partition)))


def leq_ordered(a: OrderedCompositionPermutationPair, b: OrderedCompositionPermutationPair, S: IndexSet) -> bool:
    """Ordered analogue: a's components are prefixes of b's, and every cycle of a
    appears as a contiguous run (least element first) inside one target of b."""
    if len(a.composition) != len(b.composition):
        return False
    tb = _targets(b)
    for i, comp in enumerate(a.composition):
        for p, x in enumerate(comp):
            if tb[x] != ("c", i, p):
                return False
    counts: dict[tuple, int] = {}
    for cyc in a.permutation:
        kind, idx, p0 = tb[cyc[0]]
        for q, x in enumerate(cyc):
            if tb[x] != (kind, idx, p0 + q):
                return False
        counts[(kind, idx)] = counts.get((kind, idx), 0) + 1
    for i in range(len(b.composition)):
        if not S.contains(counts.get(("c", i), 0) + 1):
            return False
    return all(S.contains(counts.get(("b", j), 0)) for j in range(len(b.permutation)))


def _label_arrays(elements, n: int, r: int):
    """Target label and position of every ground element, one row per poset element."""
    E = len(elements)
    L = np.zeros((E, n + 1), dtype=np.int64)
    P = np.zeros((E, n + 1), dtype=np.int64)
    for e, el in enumerate(elements):
        for i, comp in enumerate(el.composition):
            for p, x in enumerate(comp):
                L[e, x] = i
                P[e, x] = p
        blocks = el.partition if isinstance(el, CompositionPartitionPair) else el.permutation
        for j, blk in enumerate(blocks):
            for p, x in enumerate(blk):
                L[e, x] = r + j
                P[e, x] = p
    return L, P


def _leq_matrix(elements, S: IndexSet, r: int, n: int, ordered: bool) -> np.ndarray:
    """Vectorised direct order: row a, column b holds ``a <= b``."""
    E = len(elements)
    L, P = _label_arrays(elements, n, r)
    in_S = np.array([S.contains(c) for c in range(n + 2)])
    in_Sd = np.array([S.contains(c + 1) for c in range(n + 2)])
    width = r + n
    Z = np.zeros((E, E), dtype=bool)
    for ai, a in enumerate(elements):
        ok = np.ones(E, dtype=bool)
        for i, comp in enumerate(a.composition):
            for p, x in enumerate(comp):
                ok &= L[:, x] == i
                if ordered:
                    ok &= P[:, x] == p
        counts = np.zeros((E, width), dtype=np.int64)
        blocks = a.permutation if ordered else a.partition
        rows = np.arange(E)
        for blk in blocks:
            head = L[:, blk[0]]
            for q, x in enumerate(blk[1:], start=1):
                ok &= L[:, x] == head
                if ordered:
                    ok &= P[:, x] == P[:, blk[0]] + q
            np.add.at(counts, (rows, head), 1)
        ok &= in_Sd[counts[:, :r]].all(axis=1) if r else True
        tail = counts[:, r:]
        ok &= ((tail == 0) | in_S[tail]).all(axis=1)
        Z[ai] = ok
    return Z


# -- operations (single steps) ----------------------------------------------
def _successors(el, S: IndexSet, ordered: bool):
    r = len(el.composition)
    blocks = list(el.permutation if ordered else el.partition)
    nb = len(blocks)
    idx = range(nb)
    # operation 1: join s blocks, s in S
    for s in range(2, nb + 1):
        if not S.contains(s):
            continue
        for chosen in combinations(idx, s):
            rest = [blocks[i] for i in idx if i not in chosen]
            if ordered:
                lead, others = blocks[chosen[0]], [blocks[i] for i in chosen[1:]]
                for order in permutations(others):
                    joined = lead + sum(order, ())
                    yield OrderedCompositionPermutationPair.make(el.composition, rest + [joined])
            else:
                joined = sum((blocks[i] for i in chosen), ())
                yield CompositionPartitionPair.make(el.composition, rest + [joined])
    # operation 2: move t blocks into one component, t in S'
    for t in range(1, nb + 1):
        if not S.contains(t + 1):
            continue
        for chosen in combinations(idx, t):
            rest = [blocks[i] for i in idx if i not in chosen]
            for j in range(r):
                if ordered:
                    for order in permutations([blocks[i] for i in chosen]):
                        comp = list(el.composition)
                        comp[j] = comp[j] + sum(order, ())
                        yield OrderedCompositionPermutationPair.make(comp, rest)
                else:
                    comp = [list(c) for c in el.composition]
                    for i in chosen:
                        comp[j].extend(blocks[i])
                    yield CompositionPartitionPair.make(comp, rest)


def operational_order(elements, S: IndexSet, ordered: bool) -> np.ndarray:
    """Reflexive-transitive closure of the two operations, as a boolean matrix."""
    index = {e: i for i, e in enumerate(elements)}
    E = len(elements)
    reach = [0] * E
    # every operation strictly lowers the number of blocks
    for i in sorted(range(E), key=lambda i: elements[i].num_blocks):
        acc = 1 << i
        for succ in _successors(elements[i], S, ordered):
            j = index.get(succ)
            if j is None:
                raise PosetError(f"operation left the poset: {elements[i]} -> {succ}")
            acc |= reach[j]
        reach[i] = acc
    Z = np.zeros((E, E), dtype=bool)
    for i, bits in enumerate(reach):
        row = np.frombuffer(bits.to_bytes((E + 7) // 8, "little"), dtype=np.uint8)
        Z[i] = np.unpackbits(row, bitorder="little")[:E].astype(bool)
    return Z


# -- the poset ----------------------------------------------------------------
class Poset:
    def __init__(self, S: IndexSet, r: int, n: int, ordered: bool, elements, leq: np.ndarray,
                 monoid_bound: int | None = None, check: bool = True):
        self.S, self.r, self.n, self.ordered = S, r, n, ordered
        self.elements = list(elements)
        self.leq_matrix = leq
        self.monoid_bound = monoid_bound
        self.index = {e: i for i, e in enumerate(self.elements)}
        zero = self._zero_element()
        self.zero_hat = self.index[zero]
        if check:
            self.check_axioms()
            if not self.leq_matrix[self.zero_hat].all():
                raise PosetError("the bottom element is not below everything")
        self._mu0 = None

    def _zero_element(self):
        singles = [(x,) for x in range(1, self.n + 1)]
        empty = [()] * self.r
        if self.ordered:
            return OrderedCompositionPermutationPair.make(empty, singles)
        return CompositionPartitionPair.make(empty, singles)

    def __len__(self) -> int:
        return len(self.elements)

    def check_axioms(self) -> None:
        Z = self.leq_matrix
        if not Z.diagonal().all():
            raise PosetError("relation is not reflexive")
        both = Z & Z.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise PosetError(f"relation is not antisymmetric: {self.elements[i]} vs {self.elements[j]}")
        Zf = Z.astype(np.float32)
        if ((Zf @ Zf > 0) & ~Z).any():
            raise PosetError("relation is not transitive")

    def leq(self, x, y) -> bool:
        return bool(self.leq_matrix[self._i(x), self._i(y)])

    def _i(self, x) -> int:
        return x if isinstance(x, (int, np.integer)) else self.index[x]

    def linear_extension(self) -> list[int]:
        down = self.leq_matrix.sum(axis=0)
        return sorted(range(len(self)), key=lambda i: (int(down[i]), i))

    def mobius(self, x, y) -> int:
        xi, yi = self._i(x), self._i(y)
        Z = self.leq_matrix
        if not Z[xi, yi]:
            raise PosetError(f"{self.elements[xi]} is not below {self.elements[yi]}")
        inside = np.flatnonzero(Z[xi] & Z[:, yi])
        order = sorted(inside, key=lambda i: int(Z[:, i].sum()))
        mu: dict[int, int] = {}
        for z in order:
            if z == xi:
                mu[z] = 1
                continue
            mu[z] = -sum(mu[w] for w in order if w in mu and Z[w, z])
        return mu[yi]

    def mobius_from_zero(self) -> list[int]:
        """``mu(0^, x)`` for every element, one forward pass over a linear extension."""
        if self._mu0 is None:
            Z = self.leq_matrix
            mu = [0] * len(self)
            done = np.zeros(len(self), dtype=bool)
            for z in self.linear_extension():
                if z == self.zero_hat:
                    mu[z] = 1
                else:
                    below = np.flatnonzero(Z[:, z] & done)
                    mu[z] = -sum(mu[int(w)] for w in below)
                done[z] = True
            self._mu0 = mu
        return list(self._mu0)

    def column_sum(self, k: int) -> int:
        mu = self.mobius_from_zero()
        return sum(m for m, e in zip(mu, self.elements) if e.num_blocks == k)

    def minimal(self) -> list[int]:
        strict = self.leq_matrix & ~np.eye(len(self), dtype=bool)
        return [int(i) for i in np.flatnonzero(~strict.any(axis=0))]

    def maximal(self) -> list[int]:
        strict = self.leq_matrix & ~np.eye(len(self), dtype=bool)
        return [int(i) for i in np.flatnonzero(~strict.any(axis=1))]

    def up_set(self, x) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.leq_matrix[self._i(x)])]

    def covers(self) -> list[tuple[int, int]]:
        strict = self.leq_matrix & ~np.eye(len(self), dtype=bool)
        sf = strict.astype(np.float32)
        via = (sf @ sf) > 0
        cov = strict & ~via
        return [(int(i), int(j)) for i, j in np.argwhere(cov)]

    def to_dot(self) -> str:
        name = "P" if self.ordered else "Pi"
        lines = [f'digraph "{name}_{self.S}_{self.r}_{self.n}" {{', "  rankdir=BT;"]
        for i, e in enumerate(self.elements):
            lines.append(f'  n{i} [label="{e}"];')
        for i, j in self.covers():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_poset(S: IndexSet, r: int, n: int, ordered: bool = False, allow_bounded: bool = False,
                bound: int = 64, guard: int | None = None, check: bool = True) -> Poset:
    mb = _check_monoid(S, allow_bounded, bound)
    if ordered:
        _check_guard(n, guard, ORDERED_GUARD, "ordered composition-permutation pairs")
        elements = _ordered_pairs(S, r, n)
    else:
        _check_guard(n, guard, UNORDERED_GUARD, "composition-partition pairs")
        elements = _pairs(S, r, n)
    Z = _leq_matrix(elements, S, r, n, ordered)
    return Poset(S, r, n, ordered, elements, Z, mb, check)


def mobius(poset: Poset, x, y) -> int:
    return poset.mobius(x, y)


def mobius_column_sum(S: IndexSet, r: int, n: int, k: int, kind: str = "second", **kw) -> int:
    if kind not in ("second", "first"):
        raise ValueError(f"unknown kind {kind!r}")
    P = build_poset(S, r, n, ordered=(kind == "first"), **kw)
    return P.column_sum(k)


def coideal_cardinality_check(poset: Poset, base, j: int) -> tuple[bool, int, int]:
    """Elements above ``base`` with j blocks versus ``|Pi_{S,r}(k,j)|`` (resp. P).

    The right side is counted by enumerating the pairs over k elements.
    Returns ``(equal, above, expected)``.
    """
    bi = poset._i(base)
    k = poset.elements[bi].num_blocks
    above = sum(1 for i in poset.up_set(bi) if poset.elements[i].num_blocks == j)
    small = _ordered_pairs(poset.S, poset.r, k) if poset.ordered else _pairs(poset.S, poset.r, k)
    expected = sum(1 for e in small if e.num_blocks == j)
    return above == expected, above, expected

"""Clique partitions and acyclic orientations by exhaustive enumeration.

Vertex labels of ``hat_bipartite(n1, n2, r)``: side A is ``0..n1-1``, then
A* (``r`` vertices), then the extra vertex u-bar; side B follows in the
same pattern (B, B*, v-bar last).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .indexset import IndexSet
from .stirling import SRContext, stirling2

EDGE_GUARD = 20
VERTEX_GUARD = 10


class GraphGuardExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if not (0 <= a < b < self.vertex_count):
                raise ValueError(f"edge {(a, b)} must satisfy 0 <= a < b < {self.vertex_count}")
            if (a, b) in seen:
                raise ValueError(f"duplicate edge {(a, b)}")
            seen.add((a, b))
        if list(self.edges) != sorted(self.edges):
            raise ValueError("edges must be sorted")

    @classmethod
    def make(cls, n: int, edges) -> "Graph":
        es = sorted({(min(a, b), max(a, b)) for a, b in edges})
        return cls(n, tuple(es))

    def adjacency(self) -> list[int]:
        adj = [0] * self.vertex_count
        for a, b in self.edges:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return adj

    def complement(self) -> "Graph":
        have = set(self.edges)
        n = self.vertex_count
        return Graph.make(n, [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in have])

    def to_json_obj(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text_or_obj) -> "Graph":
        obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
        return cls.make(obj["vertices"], [tuple(e) for e in obj["edges"]])


# -- named graphs -----------------------------------------------------------
def complete_graph(n: int) -> Graph:
    return Graph.make(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph.make(n, [])


def path_graph(n: int) -> Graph:
    return Graph.make(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(n1: int, n2: int) -> Graph:
    return Graph.make(n1 + n2, [(a, n1 + b) for a in range(n1) for b in range(n2)])


def join_complete_empty(n: int, r: int) -> Graph:
    """``K_n + E_r``: clique on ``0..n-1``, independent ``n..n+r-1``, all cross edges."""
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)]
    edges += [(a, n + j) for a in range(n) for j in range(r)]
    return Graph.make(n + r, edges)


@dataclass(frozen=True)
class HatLabels:
    A: tuple[int, ...]
    A_star: tuple[int, ...]
    u_bar: int
    B: tuple[int, ...]
    B_star: tuple[int, ...]
    v_bar: int


def hat_labels(n1: int, n2: int, r: int) -> HatLabels:
    A = tuple(range(n1))
    As = tuple(range(n1, n1 + r))
    u = n1 + r
    off = u + 1
    B = tuple(range(off, off + n2))
    Bs = tuple(range(off + n2, off + n2 + r))
    v = off + n2 + r
    return HatLabels(A, As, u, B, Bs, v)


def hat_bipartite(n1: int, n2: int, r: int) -> Graph:
    lab = hat_labels(n1, n2, r)
    left = lab.A + lab.A_star + (lab.u_bar,)
    right = lab.B + lab.B_star + (lab.v_bar,)
    return Graph.make(len(left) + len(right), [(a, b) for a in left for b in right])


# -- orientations -------------------------------------------------------------
def _orient(g: Graph, mask: int):
    """Out-neighbour bitsets: edge i goes a->b when bit i of mask is 0, else b->a."""
    out = [0] * g.vertex_count
    for i, (a, b) in enumerate(g.edges):
        if mask >> i & 1:
            out[b] |= 1 << a
        else:
            out[a] |= 1 << b
    return out


def is_acyclic(out: list[int]) -> bool:
    """Kahn's algorithm on out-neighbour bitsets."""
    n = len(out)
    indeg = [0] * n
    for v in range(n):
        x = out[v]
        while x:
            low = x & -x
            indeg[low.bit_length() - 1] += 1
            x ^= low
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        x = out[v]
        while x:
            low = x & -x
            w = low.bit_length() - 1
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
            x ^= low
    return seen == n


def has_cycle_dfs(out: list[int]) -> bool:
    """Independent check: colour-marking depth-first search."""
    n = len(out)
    colour = [0] * n

    def visit(v) -> bool:
        colour[v] = 1
        x = out[v]
        while x:
            low = x & -x
            w = low.bit_length() - 1
            x ^= low
            if colour[w] == 1 or (colour[w] == 0 and visit(w)):
                return True
        colour[v] = 2
        return False

    return any(colour[v] == 0 and visit(v) for v in range(n))


def _check_edges(g: Graph, guard: int | None) -> None:
    lim = EDGE_GUARD if guard is None else guard
    if len(g.edges) > lim:
        raise GraphGuardExceeded(f"{len(g.edges)} edges exceed the orientation guard {lim}")


def count_acyclic_orientations(g: Graph, guard: int | None = None) -> int:
    _check_edges(g, guard)
    return sum(1 for mask in range(1 << len(g.edges)) if is_acyclic(_orient(g, mask)))


@lru_cache(maxsize=None)
def _hat_profiles(n1: int, n2: int, r: int, guard: int | None) -> tuple[tuple[int, ...], ...]:
    """Outdegree vectors of acyclic orientations with u-bar the unique source and
    v-bar the unique sink."""
    g = hat_bipartite(n1, n2, r)
    _check_edges(g, guard)
    lab = hat_labels(n1, n2, r)
    # bits that must be clear/set for u-bar to be a source and v-bar a sink
    need_mask = 0
    need_val = 0
    for i, (a, b) in enumerate(g.edges):
        if a == lab.u_bar:
            need_mask |= 1 << i          # u-bar -> b : bit 0
        elif b == lab.v_bar:
            need_mask |= 1 << i          # a -> v-bar : bit 0
    V = g.vertex_count
    full = (1 << V) - 1
    profiles = []
    for mask in range(1 << len(g.edges)):
        if mask & need_mask != need_val:
            continue
        out = _orient(g, mask)
        outdeg = [bin(o).count("1") for o in out]
        covered = 0
        for o in out:
            covered |= o
        sources = [v for v in range(V) if not (covered >> v & 1)]
        sinks = [v for v in range(V) if outdeg[v] == 0]
        if sources != [lab.u_bar] or sinks != [lab.v_bar]:
            continue
        if covered | (1 << lab.u_bar) != full:
            continue
        if not is_acyclic(out):
            continue
        profiles.append(tuple(outdeg))
    return tuple(profiles)


def _multiplicities_ok(degs: list[int], S: IndexSet) -> bool:
    counts: dict[int, int] = {}
    for d in degs:
        counts[d] = counts.get(d, 0) + 1
    return all(S.contains(c) for c in counts.values())


def count_constrained_orientations(n1: int, n2: int, r: int, S: IndexSet, guard: int | None = None) -> int:
    """Acyclic orientations of the hat graph satisfying [S], [r] and the source/sink condition.

    [S]: within A u A* (and within B u B*) every outdegree value is shared by
    a number of vertices lying in S. u-bar and v-bar are left out of [S].
    [r]: the vertices of A* have pairwise distinct outdegrees, likewise B*.
    """
    lab = hat_labels(n1, n2, r)
    total = 0
    for deg in _hat_profiles(n1, n2, r, guard):
        a_side = [deg[v] for v in lab.A + lab.A_star]
        b_side = [deg[v] for v in lab.B + lab.B_star]
        if len({deg[v] for v in lab.A_star}) != r or len({deg[v] for v in lab.B_star}) != r:
            continue
        if _multiplicities_ok(a_side, S) and _multiplicities_ok(b_side, S):
            total += 1
    return total


def constrained_orientation_formula(n1: int, n2: int, r: int, S: IndexSet) -> int:
    """``sum_k (k+r)!^2 {n1 k}_{S,r} {n2 k}_{S,r}``"""
    N = max(n1, n2)
    ctx = SRContext(S, r, N)
    return sum(factorial(k + r) ** 2 * stirling2(ctx, n1, k) * stirling2(ctx, n2, k)
               for k in range(min(n1, n2) + 1))


# -- clique partitions --------------------------------------------------------
def _check_vertices(g: Graph, guard: int | None) -> None:
    lim = VERTEX_GUARD if guard is None else guard
    if g.vertex_count > lim:
        raise GraphGuardExceeded(f"{g.vertex_count} vertices exceed the partition guard {lim}")


def _clique_partition_counts(g: Graph, S: IndexSet | None) -> dict[int, int]:
    """Counts by number of blocks; blocks grow only while they stay cliques."""
    adj = g.adjacency()
    n = g.vertex_count
    counts: dict[int, int] = {}
    blocks: list[int] = []      # bitsets
    sizes: list[int] = []

    def rec(v):
        if v == n:
            if S is None or all(S.contains(s) for s in sizes):
                counts[len(blocks)] = counts.get(len(blocks), 0) + 1
            return
        for i in range(len(blocks)):
            if blocks[i] & ~adj[v] == 0:
                blocks[i] |= 1 << v
                sizes[i] += 1
                rec(v + 1)
                blocks[i] &= ~(1 << v)
                sizes[i] -= 1
        blocks.append(1 << v)
        sizes.append(1)
        rec(v + 1)
        blocks.pop()
        sizes.pop()

    rec(0)
    return counts


def clique_partition_count(g: Graph, k: int, S: IndexSet | None = None, guard: int | None = None) -> int:
    """Partitions of V(G) into k cliques with sizes in S (any size when S is None)."""
    _check_vertices(g, guard)
    return _clique_partition_counts(g, S).get(k, 0)


def clique_partition_total(g: Graph, S: IndexSet | None = None, guard: int | None = None) -> int:
    _check_vertices(g, guard)
    return sum(_clique_partition_counts(g, S).values())


def independent_partition_count(g: Graph, k: int, S: IndexSet | None = None, guard: int | None = None) -> int:
    """Partitions of V(G) into k independent sets, by plain enumeration of all set
    partitions followed by a filter (no pruning shared with the clique counter)."""
    _check_vertices(g, guard)
    n = g.vertex_count
    edges = g.edges
    total = 0
    labels = [0] * n

    def rec(v, used):
        nonlocal total
        if v == n:
            if used != k:
                return
            if any(labels[a] == labels[b] for a, b in edges):
                return
            if S is not None:
                sizes = [labels.count(i) for i in range(used)]
                if not all(S.contains(s) for s in sizes):
                    return
            total += 1
            return
        for lab in range(used + 1):
            labels[v] = lab
            rec(v + 1, max(used, lab + 1))

    rec(0, 0)
    return total

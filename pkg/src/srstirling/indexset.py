"""Block-size index sets ``S``.

A set is one of the closed families (``all``, ``odd``, ``even``, ``1..m``,
``m..``, ``mod q``) or an explicit finite set. Derived sets (shifted,
with elements removed, or the derivative ``{s - 1}``) keep the family
plus an offset and a removal set, so membership stays analytic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .series import EgfSeries

_FAMILIES = ("explicit", "upto", "atleast", "all", "congruence", "odd", "even")


class IndexSetError(ValueError):
    pass


@dataclass(frozen=True)
class IndexSet:
    kind: str
    params: tuple[int, ...] = ()
    offset: int = 0
    removed: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in _FAMILIES:
            raise IndexSetError(f"unknown index-set family {self.kind!r}")
        if self.kind == "explicit":
            p = self.params
            if any(b <= a for a, b in zip(p, p[1:])):
                raise IndexSetError("explicit elements must be strictly increasing")
            if p and p[0] < 0:
                raise IndexSetError("index sets hold non-negative integers only")
        elif self.kind in ("upto", "atleast", "congruence"):
            if len(self.params) != 1 or self.params[0] < 1:
                raise IndexSetError(f"{self.kind} needs one positive parameter")

    # -- membership ---------------------------------------------------
    def _base_contains(self, b: int) -> bool:
        k = self.kind
        if k == "explicit":
            return b in self.params
        if b < 1:
            return False
        if k == "all":
            return True
        if k == "odd":
            return b % 2 == 1
        if k == "even":
            return b % 2 == 0
        m = self.params[0]
        if k == "upto":
            return b <= m
        if k == "atleast":
            return b >= m
        return (b - 1) % m == 0  # congruence

    def contains(self, s: int) -> bool:
        if s in self.removed:
            return False
        return self._base_contains(s - self.offset)

    __contains__ = contains

    @property
    def is_finite(self) -> bool:
        return self.kind in ("explicit", "upto")

    @property
    def is_base(self) -> bool:
        """A plain family member, as produced by the grammar."""
        return self.offset == 0 and not self.removed and (self.kind != "explicit" or bool(self.params) and self.params[0] >= 1)

    def max_element(self) -> int | None:
        if not self.is_finite:
            return None
        top = self.params[-1] if self.kind == "explicit" else self.params[0]
        els = [s for s in range(top + self.offset, -1, -1) if self.contains(s)]
        return els[0] if els else None

    def elements_up_to(self, bound: int) -> list[int]:
        hi = bound
        top = self.max_element() if self.is_finite else None
        if top is not None:
            hi = min(hi, top)
        return [s for s in range(0, hi + 1) if self.contains(s)]

    def min_element(self) -> int | None:
        # every family contains an element below 2 * (largest parameter + 2) + offset
        reach = max(self.params, default=0) + len(self.removed) * (max(self.params, default=2) + 2) + 4
        els = self.elements_up_to(2 * reach + max(self.offset, 0) + max(self.removed, default=0))
        return els[0] if els else None

    def is_empty(self) -> bool:
        return self.min_element() is None

    @property
    def has_zero(self) -> bool:
        return self.contains(0)

    # -- derived sets -------------------------------------------------
    def _normalised(self) -> "IndexSet":
        if self.is_finite:
            top = self.max_element()
            els = tuple(s for s in range(0, (top if top is not None else -1) + 1) if self.contains(s))
            return IndexSet("explicit", els)
        return self

    def shift(self, a: int, allow_zero: bool = True) -> "IndexSet":
        """The set ``{s + a : s in S}``. Negative elements are always refused,
        zero only when ``allow_zero`` is off."""
        lo = self.min_element()
        floor = 0 if allow_zero else 1
        if lo is not None and lo + a < floor:
            raise IndexSetError(f"shift by {a} would produce the element {lo + a}")
        moved = IndexSet(self.kind, self.params, self.offset + a, frozenset(x + a for x in self.removed))
        return moved._normalised()

    def derivative(self) -> "IndexSet":
        """``S' = {s - 1 : s in S}``; may contain 0."""
        return self.shift(-1, allow_zero=True)

    def remove(self, u: int) -> "IndexSet":
        if not self.contains(u):
            raise IndexSetError(f"{u} is not an element of {self}")
        return IndexSet(self.kind, self.params, self.offset, self.removed | {u})._normalised()

    # -- text ---------------------------------------------------------
    def to_grammar(self) -> str:
        if self.kind == "explicit" and not self.offset and not self.removed:
            return "{" + ",".join(map(str, self.params)) + "}"
        if self.offset or self.removed:
            base = IndexSet(self.kind, self.params).to_grammar()
            s = base
            if self.removed:
                s += "-{" + ",".join(map(str, sorted(self.removed))) + "}"
            if self.offset:
                s = f"({s})" if self.removed else s
                s += f"{self.offset:+d}"
            return s
        k = self.kind
        if k in ("all", "odd", "even"):
            return k
        m = self.params[0]
        return {"upto": f"1..{m}", "atleast": f"{m}..", "congruence": f"mod {m}"}[k]

    def __str__(self) -> str:
        return self.to_grammar()


# -- constructors ---------------------------------------------------------
ALL = IndexSet("all")
ODD = IndexSet("odd")
EVEN = IndexSet("even")


def explicit(*elements: int) -> IndexSet:
    if len(elements) == 1 and not isinstance(elements[0], int):
        elements = tuple(elements[0])
    els = tuple(sorted(set(elements)))
    if not els:
        raise IndexSetError("explicit index sets must be nonempty")
    if els[0] < 1:
        raise IndexSetError("index sets hold positive integers")
    return IndexSet("explicit", els)


def upto(m: int) -> IndexSet:
    return IndexSet("upto", (m,))


def atleast(m: int) -> IndexSet:
    if m == 1:
        return ALL
    return IndexSet("atleast", (m,))


def congruence(q: int) -> IndexSet:
    """``S_q = {q k + 1 : k >= 0}``."""
    return IndexSet("congruence", (q,))


_RANGE_UP = re.compile(r"^1\.\.(\d+)$")
_RANGE_FROM = re.compile(r"^(\d+)\.\.$")
_MOD = re.compile(r"^mod(\d+)$")
_EXPLICIT = re.compile(r"^\{(\d+(?:,\d+)*)\}$")


def parse(text: str) -> IndexSet:
    """Parse ``all | odd | even | 1..m | m.. | mod q | {a,b,c}``."""
    s = re.sub(r"\s+", "", text).lower()
    if s in ("all", "odd", "even"):
        return {"all": ALL, "odd": ODD, "even": EVEN}[s]
    if m := _RANGE_UP.match(s):
        v = int(m.group(1))
        if v < 1:
            raise IndexSetError(f"empty range in {text!r}")
        return upto(v)
    if m := _RANGE_FROM.match(s):
        v = int(m.group(1))
        if v < 1:
            raise IndexSetError(f"lower bound must be positive in {text!r}")
        return atleast(v)
    if m := _MOD.match(s):
        q = int(m.group(1))
        if q < 1:
            raise IndexSetError(f"modulus must be positive in {text!r}")
        return congruence(q)
    if m := _EXPLICIT.match(s):
        els = [int(x) for x in m.group(1).split(",")]
        if len(set(els)) != len(els):
            raise IndexSetError(f"repeated element in {text!r}")
        return explicit(*els)
    raise IndexSetError(f"cannot parse index set {text!r}")


# -- +1-monoid check ------------------------------------------------------
@dataclass(frozen=True)
class MonoidCheckResult:
    """``verdict`` is ``"yes"``, ``"no"`` or ``"yes-up-to-bound"``.

    A ``no`` carries a witness: ``(1,)`` when 1 is missing, otherwise a
    pair ``(s1, s2)`` of elements with ``s1 + s2 - 1`` outside the set.
    """

    verdict: str
    witness: tuple[int, ...] | None = None
    bound: int | None = None

    @property
    def ok(self) -> bool:
        return self.verdict == "yes"

    def accept(self, allow_bounded: bool = False) -> bool:
        return self.verdict == "yes" or (allow_bounded and self.verdict == "yes-up-to-bound")


def _bounded_monoid_check(S: IndexSet, bound: int) -> MonoidCheckResult:
    els = S.elements_up_to(bound)
    for i, a in enumerate(els):
        for b in els[i:]:
            if a + b - 1 > bound:
                break
            if not S.contains(a + b - 1):
                return MonoidCheckResult("no", (a, b), bound)
    return MonoidCheckResult("yes-up-to-bound", None, bound)


def is_plus_one_monoid(S: IndexSet, bound: int = 64) -> MonoidCheckResult:
    if bound < 2:
        raise IndexSetError("bound must be at least 2")
    if not S.contains(1):
        return MonoidCheckResult("no", (1,), None)
    if S.is_base and S.kind in ("all", "odd", "congruence"):
        return MonoidCheckResult("yes")
    return _bounded_monoid_check(S, bound)


# -- generating series ----------------------------------------------------
def egf_E(S: IndexSet, order: int) -> EgfSeries:
    """``sum_{s in S} t^s / s!``"""
    return EgfSeries([Fraction(1, factorial(s)) if S.contains(s) else 0 for s in range(order + 1)])


def egf_E_derived(S: IndexSet, order: int) -> EgfSeries:
    """``sum_{s in S} t^(s-1) / (s-1)!``, i.e. ``E`` of the derivative set."""
    if S.has_zero:
        raise IndexSetError("the derived series is undefined when 0 is in S")
    return EgfSeries([Fraction(1, factorial(m)) if S.contains(m + 1) else 0 for m in range(order + 1)])


def egf_F(S: IndexSet, order: int) -> EgfSeries:
    """``sum_{s in S} (-1)^(s+1) t^s / s``"""
    return EgfSeries([0] + [Fraction((-1) ** (s + 1), s) if S.contains(s) else 0 for s in range(1, order + 1)])


def egf_cycles(S: IndexSet, order: int) -> EgfSeries:
    """``sum_{s in S} t^s / s``: the EGF of one cycle with length in S."""
    return EgfSeries([0] + [Fraction(1, s) if S.contains(s) else 0 for s in range(1, order + 1)])


def ogf_shifted(S: IndexSet, order: int) -> EgfSeries:
    """``sum_{s in S} t^(s-1)``"""
    if S.has_zero:
        raise IndexSetError("the shifted series is undefined when 0 is in S")
    return EgfSeries([1 if S.contains(m + 1) else 0 for m in range(order + 1)])


def contains(S: IndexSet, s: int) -> bool:
    return S.contains(s)


def derivative(S: IndexSet) -> IndexSet:
    return S.derivative()


def remove(S: IndexSet, u: int) -> IndexSet:
    return S.remove(u)


def shift(S: IndexSet, a: int, allow_zero: bool = True) -> IndexSet:
    return S.shift(a, allow_zero=allow_zero)

"""Recurrence and set-shifting identities, checked against the EGF engine.

Every checker takes ``(S, r, n_max)`` and returns a list of
:class:`Mismatch` records; an empty list means the identity held at
every grid point. Sums over ``s in S`` are cut at the largest ``s`` for
which the binomial factor can be nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .indexset import IndexSet, shift
from .stirling import SRContext, bell, stirling1_rational, stirling2_k0, stirling2_rational


@dataclass(frozen=True)
class Mismatch:
    identity: str
    params: dict
    lhs: Fraction
    rhs: Fraction

    def __str__(self) -> str:
        p = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.identity}({p}): lhs={self.lhs} rhs={self.rhs}"


def _order(n_max: int) -> int:
    return n_max + 3


def _value(kind: str, S: IndexSet, r: int, n: int, k: int, N: int) -> Fraction:
    if n < 0 or k < 0 or r < 0:
        return Fraction(0)
    ctx = SRContext(S, r, N)
    if kind == "second":
        return stirling2_rational(ctx, n, k)
    return stirling1_rational(ctx, n, k)


def _elements(S: IndexSet, top: int) -> list[int]:
    return [s for s in S.elements_up_to(max(top, 0)) if s >= 1]


def _record(out, name, params, lhs, rhs):
    if lhs != rhs:
        out.append(Mismatch(name, params, Fraction(lhs), Fraction(rhs)))


# -- second kind ----------------------------------------------------------
def check_id1(S, r, n_max, kind="second"):
    """``k {n k} = sum_s w(s) C(n,s) {n-s k-1}``; ``w = 1`` or ``(s-1)!``."""
    N = _order(n_max)
    out = []
    w = (lambda s: 1) if kind == "second" else (lambda s: factorial(s - 1))
    for n in range(n_max + 1):
        for k in range(n + 1):
            lhs = k * _value(kind, S, r, n, k, N)
            rhs = sum(w(s) * comb(n, s) * _value(kind, S, r, n - s, k - 1, N) for s in _elements(S, n))
            _record(out, f"id1[{kind}]", dict(S=str(S), r=r, n=n, k=k), lhs, rhs)
    return out


def check_id2(S, r, n_max, kind="second"):
    N = _order(n_max)
    out = []
    if r == 0:
        return out
    w = (lambda s: 1) if kind == "second" else (lambda s: factorial(s - 1))
    for n in range(n_max + 1):
        for k in range(n + 1):
            lhs = r * _value(kind, S, r, n, k, N)
            rhs = sum(r * w(s) * comb(n, s - 1) * _value(kind, S, r - 1, n - s + 1, k, N)
                      for s in _elements(S, n + 1))
            _record(out, f"id2[{kind}]", dict(S=str(S), r=r, n=n, k=k), lhs, rhs)
    return out


def check_id3(S, r, n_max, kind="second"):
    N = _order(n_max)
    out = []
    w = (lambda s: s) if kind == "second" else (lambda s: factorial(s))
    for n in range(n_max + 1):
        for k in range(n + 1):
            lhs = (n + r) * _value(kind, S, r, n, k, N)
            rhs = sum(w(s) * comb(n, s) * _value(kind, S, r, n - s, k - 1, N) for s in _elements(S, n))
            if r:
                rhs += r * sum(w(s) * comb(n, s - 1) * _value(kind, S, r - 1, n - s + 1, k, N)
                               for s in _elements(S, n + 1))
            _record(out, f"id3[{kind}]", dict(S=str(S), r=r, n=n, k=k), lhs, rhs)
    return out


def check_teo8(S, r, n_max, kind="second"):
    """``{n+1 k}_r = {n k-1}_{r+1} + r sum_s w(s) C(n,s-2) {n-s+2 k}_{r-1}``."""
    N = _order(n_max)
    out = []
    w = (lambda s: 1) if kind == "second" else (lambda s: factorial(s - 1))
    for n in range(n_max):
        for k in range(n + 2):
            lhs = _value(kind, S, r, n + 1, k, N)
            rhs = _value(kind, S, r + 1, n, k - 1, N)
            if r:
                rhs += r * sum(w(s) * comb(n, s - 2) * _value(kind, S, r - 1, n - s + 2, k, N)
                               for s in _elements(S, n + 2) if s >= 2)
            _record(out, f"teo8[{kind}]", dict(S=str(S), r=r, n=n, k=k), lhs, rhs)
    return out


def check_teo9(S, r, n_max, kind="second"):
    """Singleton split (needs 1 in S)."""
    out = []
    if 1 not in S:
        return out
    return _check_remove_u(S, r, n_max, 1, kind, "teo9")


def _check_remove_u(S, r, n_max, u, kind, name):
    N = _order(n_max)
    out = []
    rest = S.remove(u)
    for n in range(n_max + 1):
        for k in range(n + 1):
            lhs = _value(kind, S, r, n, k, N)
            rhs = Fraction(0)
            for i in range(r + 1):
                for j in range(k + 1):
                    m = (u - 1) * i + u * j
                    if m > n:
                        continue
                    if kind == "second":
                        coef = Fraction(factorial(n), factorial(u - 1) ** i * factorial(u) ** j * factorial(j) * factorial(n - m))
                    else:
                        coef = Fraction(factorial(n), u ** j * factorial(j) * factorial(n - m))
                    rhs += comb(r, i) * coef * _value(kind, rest, r - i, n - m, k - j, N)
            _record(out, f"{name}[{kind}]", dict(S=str(S), r=r, n=n, k=k, u=u), lhs, rhs)
    return out


def check_remove_u(S, r, n_max, kind="second"):
    """Block-of-size-u split, for every ``u in S`` up to ``n_max``."""
    out = []
    for u in _elements(S, n_max):
        out += _check_remove_u(S, r, n_max, u, kind, "remove_u")
    return out


def check_reduction(S, r, n_max):
    """The l-reduction formula in both stated forms, ``0 <= l <= r``."""
    N = _order(n_max)
    out = []
    lowered = shift(S, -1, allow_zero=True)
    for ell in range(r + 1):
        for n in range(n_max + 1):
            for k in range(n + 1):
                lhs = _value("second", S, r, n, k, N)
                first = factorial(ell) * sum(
                    comb(n, j) * _value("second", S, r - ell, j, k, N) * _value("second", lowered, 0, n - j, ell, N)
                    for j in range(n + 1))
                second = sum(
                    comb(n, j) * _value("second", S, r - ell, j, k, N) * _value("second", S, ell, n - j, 0, N)
                    for j in range(n + 1))
                params = dict(S=str(S), r=r, l=ell, n=n, k=k)
                _record(out, "reduction[a]", params, lhs, first)
                _record(out, "reduction[b]", params, lhs, second)
    return out


def check_k0(S, r, n_max):
    N = _order(n_max)
    out = []
    for n in range(n_max + 1):
        ctx = SRContext(S, r, N)
        _record(out, "k0", dict(S=str(S), r=r, n=n), _value("second", S, r, n, 0, N), stirling2_k0(ctx, n))
    return out


def _bell(S, r, n, N):
    if n < 0 or r < 0:
        return 0
    return bell(SRContext(S, r, N), n)


def check_bell(S, r, n_max):
    N = _order(n_max)
    out = []
    for n in range(n_max + 1):
        p = dict(S=str(S), r=r, n=n)
        ctx = SRContext(S, r, N)
        _record(out, "bell[egf]", p, bell(ctx, n, "sum"), bell(ctx, n, "egf"))
        lhs = _bell(S, r + 1, n, N)
        rhs = sum(comb(n, s - 1) * _bell(S, r, n - s + 1, N) for s in _elements(S, n + 1))
        _record(out, "bell[1]", p, lhs, rhs)
        lhs = (n + r) * _bell(S, r, n, N)
        rhs = sum(s * comb(n, s) * _bell(S, r, n - s, N) for s in _elements(S, n))
        if r:
            rhs += r * sum(s * comb(n, s - 1) * _bell(S, r - 1, n - s + 1, N) for s in _elements(S, n + 1))
        _record(out, "bell[2]", p, lhs, rhs)
        if n < n_max:
            lhs = _bell(S, r, n + 1, N)
            rhs = _bell(S, r + 1, n, N)
            if r:
                rhs += r * sum(comb(n, s - 2) * _bell(S, r - 1, n - s + 2, N) for s in _elements(S, n + 2) if s >= 2)
            _record(out, "bell[3]", p, lhs, rhs)
        if 1 in S:
            rest = S.remove(1)
            lhs = _bell(S, r, n, N)
            rhs = sum(comb(r, i) * comb(n, j) * _bell(rest, r - i, n - j, N)
                      for i in range(r + 1) for j in range(n + 1))
            _record(out, "bell[singletons]", p, lhs, rhs)
    return out


def check_broder(r, n_max):
    """Classical r-Stirling recurrence, only meaningful for the full set."""
    from .indexset import ALL
    N = _order(n_max)
    out = []
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            lhs = _value("second", ALL, r, n, k, N)
            rhs = (k + r) * _value("second", ALL, r, n - 1, k, N) + _value("second", ALL, r, n - 1, k - 1, N)
            _record(out, "broder", dict(r=r, n=n, k=k), lhs, rhs)
    return out


SECOND_KIND: dict[str, Callable] = {
    "id1": check_id1,
    "id2": check_id2,
    "id3": check_id3,
    "teo8a": check_teo8,
    "teo9a": check_teo9,
    "teo9aa": check_remove_u,
    "reduction": check_reduction,
    "k0": check_k0,
    "bell": check_bell,
}

FIRST_KIND: dict[str, Callable] = {
    "id1s1": lambda S, r, n: check_id1(S, r, n, "first"),
    "id2s1": lambda S, r, n: check_id2(S, r, n, "first"),
    "id3s1": lambda S, r, n: check_id3(S, r, n, "first"),
    "teo8b": lambda S, r, n: check_teo8(S, r, n, "first"),
    "teo9b": lambda S, r, n: check_teo9(S, r, n, "first"),
    "remove_u_first": lambda S, r, n: check_remove_u(S, r, n, "first"),
}


def check_all(S: IndexSet, r: int, n_max: int) -> dict[str, list[Mismatch]]:
    report = {}
    for name, fn in {**SECOND_KIND, **FIRST_KIND}.items():
        report[name] = fn(S, r, n_max)
    if S.is_base and S.kind == "all":
        report["broder"] = check_broder(r, n_max)
    return report

"""(S,r)-poly-Bernoulli and poly-Cauchy numbers, by finite sum and by EGF.

The sums run over the Stirling tables of :mod:`stirling`; the generating
functions are built from the set series alone, so the two paths only
share the truncated-series arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .indexset import IndexSet, egf_E, egf_E_derived, egf_F, ogf_shifted
from .series import DEFAULT_ORDER, EgfSeries
from .stirling import IntegralityError, SRContext, stirling1, stirling2


@dataclass(frozen=True)
class PolyIndex:
    mu: int

    def weight(self, m: int) -> Fraction:
        """``1 / m^mu``; an integer power when mu <= 0."""
        if self.mu <= 0:
            return Fraction(m ** (-self.mu))
        return Fraction(1, m ** self.mu)


def _order(n: int, N: int | None) -> int:
    N = max(n, DEFAULT_ORDER) if N is None else N
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > N:
        raise ValueError(f"n = {n} exceeds truncation order N = {N}")
    return N


# -- polylogarithms ---------------------------------------------------------
def polylog(mu: int, N: int) -> EgfSeries:
    """``Li_mu(t) = sum_{n>=1} t^n / n^mu`` truncated at ``t^N``."""
    w = PolyIndex(mu)
    return EgfSeries([0] + [w.weight(n) for n in range(1, N + 1)], N)


def polylog_over_t(mu: int, N: int) -> EgfSeries:
    """``Li_mu(t) / t = sum_{k>=0} t^k / (k+1)^mu``."""
    w = PolyIndex(mu)
    return EgfSeries([w.weight(k + 1) for k in range(N + 1)], N)


def polylog_factorial(mu: int, N: int) -> EgfSeries:
    """``Lif_mu(t) = sum_{n>=0} t^n / (n! (n+1)^mu)``."""
    w = PolyIndex(mu)
    return EgfSeries([w.weight(n + 1) / factorial(n) for n in range(N + 1)], N)


# -- finite sums ------------------------------------------------------------
def poly_bernoulli(S: IndexSet, r: int, mu: int, n: int, N: int | None = None) -> Fraction:
    """``sum_k {n k}_{S,r} (-1)^(n-k) k! / (k+1)^mu``"""
    ctx = SRContext(S, r, _order(n, N))
    w = PolyIndex(mu)
    total = Fraction(0)
    for k in range(n + 1):
        v = stirling2(ctx, n, k)
        if v:
            total += (-1) ** (n - k) * factorial(k) * v * w.weight(k + 1)
    if mu <= 0 and total.denominator != 1:
        raise IntegralityError(f"poly-Bernoulli value {total} should be an integer for mu <= 0")
    return total


def poly_cauchy_first(S: IndexSet, r: int, mu: int, n: int, N: int | None = None) -> Fraction:
    """``sum_k [n k]_{S,r} (-1)^(n-k) / (k+1)^mu``"""
    ctx = SRContext(S, r, _order(n, N))
    w = PolyIndex(mu)
    return sum(((-1) ** (n - k) * stirling1(ctx, n, k) * w.weight(k + 1) for k in range(n + 1)), Fraction(0))


def poly_cauchy_second(S: IndexSet, r: int, mu: int, n: int, N: int | None = None) -> Fraction:
    """``sum_k [n k]_{S,r} (-1)^n / (k+1)^mu``"""
    ctx = SRContext(S, r, _order(n, N))
    w = PolyIndex(mu)
    return (-1) ** n * sum((stirling1(ctx, n, k) * w.weight(k + 1) for k in range(n + 1)), Fraction(0))


# -- generating functions ---------------------------------------------------
def poly_bernoulli_egf(S: IndexSet, r: int, mu: int, N: int = DEFAULT_ORDER) -> EgfSeries:
    """``E_{S-1}(-t)^r Li_mu(-E_S(-t)) / (-E_S(-t))``

    The quotient is taken as ``Li_mu(x)/x`` composed with ``x = -E_S(-t)``,
    which has no constant-term division.
    """
    inner = -egf_E(S, N).alternate()
    out = polylog_over_t(mu, N).compose(inner)
    if r:
        out = egf_E_derived(S, N).alternate() ** r * out
    return out


def _cauchy_egf(S: IndexSet, r: int, mu: int, N: int, sign: int) -> EgfSeries:
    out = polylog_factorial(mu, N).compose(egf_F(S, N).scale(sign))
    if r:
        out = ogf_shifted(S, N).alternate() ** r * out
    return out


def poly_cauchy_first_egf(S: IndexSet, r: int, mu: int, N: int = DEFAULT_ORDER) -> EgfSeries:
    """``(sum_{s in S} (-t)^(s-1))^r Lif_mu(F_S(t))``"""
    return _cauchy_egf(S, r, mu, N, 1)


def poly_cauchy_second_egf(S: IndexSet, r: int, mu: int, N: int = DEFAULT_ORDER) -> EgfSeries:
    """``(sum_{s in S} (-t)^(s-1))^r Lif_mu(-F_S(t))``"""
    return _cauchy_egf(S, r, mu, N, -1)


SUMS = {
    "bernoulli": poly_bernoulli,
    "cauchy1": poly_cauchy_first,
    "cauchy2": poly_cauchy_second,
}

EGFS = {
    "bernoulli": poly_bernoulli_egf,
    "cauchy1": poly_cauchy_first_egf,
    "cauchy2": poly_cauchy_second_egf,
}


def egf_mismatches(S: IndexSet, r: int, mu: int, n_max: int, family: str) -> list[tuple[int, Fraction, Fraction]]:
    """``(n, sum value, egf coefficient)`` for every disagreement up to ``n_max``."""
    series = EGFS[family](S, r, mu, n_max)
    bad = []
    for n in range(n_max + 1):
        a = SUMS[family](S, r, mu, n, n_max)
        b = series.egf(n)
        if a != b:
            bad.append((n, a, b))
    return bad


# -- independent oracles ----------------------------------------------------
def bernoulli_numbers(m_max: int) -> list[Fraction]:
    """Classical ``B_m`` with ``B_1 = -1/2`` from ``sum_j C(m+1,j) B_j = 0``."""
    from math import comb
    B = [Fraction(1)]
    for m in range(1, m_max + 1):
        B.append(-sum((comb(m + 1, j) * B[j] for j in range(m)), Fraction(0)) / (m + 1))
    return B


def _factorial_poly(n: int, rising: bool) -> list[int]:
    """Coefficients of ``t(t-1)...(t-n+1)`` or ``t(t+1)...(t+n-1)``."""
    p = [1]
    for i in range(n):
        c = i if rising else -i
        q = [0] * (len(p) + 1)
        for j, a in enumerate(p):
            q[j + 1] += a
            q[j] += c * a
        p = q
    return p


def cauchy_integral(n: int, mu: int = 1, kind: str = "first") -> Fraction:
    """``int_0^1 ... int_0^1 (t_1...t_mu)_n dt_1...dt_mu`` (falling factorial),
    or ``(-t_1...t_mu)_n`` for the second kind.

    ``(x)_n = sum_k a_k x^k`` so the iterated integral of ``(t_1...t_mu)^k``
    is ``1/(k+1)^mu``.
    """
    if mu < 1:
        raise ValueError("the integral oracle needs mu >= 1")
    coeffs = _factorial_poly(n, rising=False)
    sign = -1 if kind == "second" else 1
    return sum((Fraction(a * sign ** k, (k + 1) ** mu) for k, a in enumerate(coeffs)), Fraction(0))

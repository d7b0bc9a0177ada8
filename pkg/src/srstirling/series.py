"""Truncated power series over the rationals.

Coefficients are stored as Taylor coefficients ``t_n`` (the series is
``sum t_n x^n``); the exponential-generating-function view ``a_n = n! t_n``
is only applied at the boundary through :meth:`EgfSeries.egf`.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, Sequence

DEFAULT_ORDER = 32


class SeriesError(ValueError):
    pass


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    return Fraction(c)


def _scaled(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    """Common-denominator form: ``coeffs[i] == nums[i] / den``."""
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _cauchy(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    # integer convolution, one Fraction normalisation per output coefficient
    na, da = _scaled(a)
    nb, db = _scaled(b)
    lo_a = next((i for i, v in enumerate(na) if v), None)
    lo_b = next((i for i, v in enumerate(nb) if v), None)
    out = [Fraction(0)] * (order + 1)
    if lo_a is None or lo_b is None:
        return out
    den = da * db
    for n in range(lo_a + lo_b, order + 1):
        s = 0
        for i in range(lo_a, n - lo_b + 1):
            x = na[i]
            if x:
                s += x * nb[n - i]
        if s:
            out[n] = Fraction(s, den)
    return out


class EgfSeries:
    """Immutable truncated series ``t_0 + t_1 x + ... + t_N x^N``."""

    __slots__ = ("_t",)

    def __init__(self, taylor: Iterable, order: int | None = None):
        t = [_as_fraction(c) for c in taylor]
        if order is not None:
            if order < 0:
                raise SeriesError("order must be non-negative")
            t = t[: order + 1] + [Fraction(0)] * (order + 1 - len(t))
        if not t:
            raise SeriesError("a series needs at least one coefficient")
        self._t = tuple(t)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_egf(cls, values: Iterable, order: int | None = None) -> "EgfSeries":
        """Build from EGF coefficients ``a_n`` (so ``t_n = a_n / n!``)."""
        return cls((Fraction(v) / factorial(n) for n, v in enumerate(values)), order)

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> "EgfSeries":
        return cls([c], order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "EgfSeries":
        return cls([0], order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "EgfSeries":
        return cls([1], order)

    @classmethod
    def x(cls, order: int = DEFAULT_ORDER) -> "EgfSeries":
        return cls([0, 1], order)

    @classmethod
    def monomial(cls, c, power: int, order: int = DEFAULT_ORDER) -> "EgfSeries":
        t = [0] * (power + 1)
        t[power] = c
        return cls(t, order)

    # -- accessors ----------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._t) - 1

    @property
    def taylor(self) -> tuple[Fraction, ...]:
        return self._t

    def __getitem__(self, n: int) -> Fraction:
        return self._t[n]

    def __len__(self) -> int:
        return len(self._t)

    def __iter__(self):
        return iter(self._t)

    def egf(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise SeriesError(f"coefficient {n} outside truncation order {self.order}")
        return self._t[n] * factorial(n)

    def egf_list(self) -> list[Fraction]:
        return [self.egf(n) for n in range(self.order + 1)]

    def valuation(self) -> int | None:
        for n, c in enumerate(self._t):
            if c:
                return n
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, EgfSeries):
            return self._t == other._t
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._t)

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self._t[:8])
        more = ", ..." if len(self._t) > 8 else ""
        return f"EgfSeries([{shown}{more}], order={self.order})"

    # -- truncation ---------------------------------------------------
    def truncate(self, order: int) -> "EgfSeries":
        if order > self.order:
            raise SeriesError("truncate cannot raise the order; use extend")
        return EgfSeries(self._t[: order + 1])

    def extend(self, order: int) -> "EgfSeries":
        """Pad with zeros. Only sound when the caller knows the tail is zero."""
        if order < self.order:
            raise SeriesError("extend cannot lower the order; use truncate")
        return EgfSeries(self._t, order)

    def _check(self, other: "EgfSeries") -> None:
        if not isinstance(other, EgfSeries):
            raise TypeError(f"expected EgfSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return EgfSeries((self._t[0] + other,) + self._t[1:])
        self._check(other)
        return EgfSeries(a + b for a, b in zip(self._t, other._t))

    __radd__ = __add__

    def __neg__(self) -> "EgfSeries":
        return EgfSeries(-a for a in self._t)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        self._check(other)
        return EgfSeries(a - b for a, b in zip(self._t, other._t))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "EgfSeries":
        c = _as_fraction(c)
        return EgfSeries(a * c for a in self._t)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return EgfSeries(_cauchy(self._t, other._t, self.order))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "EgfSeries":
        if not isinstance(e, int) or e < 0:
            raise SeriesError("exponent must be a non-negative integer")
        result = EgfSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def reciprocal(self) -> "EgfSeries":
        t0 = self._t[0]
        if t0 == 0:
            raise SeriesError("reciprocal needs a nonzero constant term")
        inv = [Fraction(0)] * (self.order + 1)
        inv[0] = 1 / t0
        for n in range(1, self.order + 1):
            s = sum((self._t[i] * inv[n - i] for i in range(1, n + 1)), Fraction(0))
            inv[n] = -s / t0
        return EgfSeries(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        return self * other.reciprocal()

    def alternate(self) -> "EgfSeries":
        """Substitute ``x -> -x``."""
        return EgfSeries(c if n % 2 == 0 else -c for n, c in enumerate(self._t))

    # -- calculus -----------------------------------------------------
    def derivative(self) -> "EgfSeries":
        if self.order == 0:
            return EgfSeries([0])
        return EgfSeries(n * self._t[n] for n in range(1, self.order + 1))

    def integral(self) -> "EgfSeries":
        """Antiderivative with zero constant term; order grows by one."""
        return EgfSeries([Fraction(0)] + [c / (n + 1) for n, c in enumerate(self._t)])

    # -- composition --------------------------------------------------
    def compose(self, inner: "EgfSeries") -> "EgfSeries":
        """``self(inner(x))``; requires ``inner`` to have zero constant term."""
        self._check(inner)
        if inner._t[0] != 0:
            raise SeriesError("inner series of a composition must have zero constant term")
        N = self.order
        # Horner, skipping powers of x that cannot reach the truncation order
        v = inner.valuation()
        if v is None:
            return EgfSeries.constant(self._t[0], N)
        top = min(N, N // v)
        acc = EgfSeries.constant(self._t[top], N)
        for n in range(top - 1, -1, -1):
            acc = acc * inner + self._t[n]
        return acc

    def __call__(self, inner: "EgfSeries") -> "EgfSeries":
        return self.compose(inner)

    def reversion(self) -> "EgfSeries":
        """Compositional inverse ``g`` with ``self(g(x)) = x``.

        Newton iteration ``g <- g - (f(g) - x) / f'(g)``, doubling the
        working precision at each step.
        """
        t = self._t
        if t[0] != 0:
            raise SeriesError("reversion needs zero constant term")
        if self.order < 1 or t[1] == 0:
            raise SeriesError("reversion needs a nonzero linear coefficient")
        N = self.order
        g = EgfSeries([0, 1 / t[1]], min(N, 1))
        prec = 1
        while prec < N:
            prec = min(2 * prec, N)
            f = self.truncate(prec)
            g = g.extend(prec)
            resid = f.compose(g) - EgfSeries.x(prec)
            g = g - resid * f.derivative().extend(prec).compose(g).reciprocal()
        return g if g.order == N else g.extend(N)

    # -- exp / log ----------------------------------------------------
    def exp(self) -> "EgfSeries":
        t = self._t
        if t[0] != 0:
            raise SeriesError("exp needs zero constant term")
        # E' = a' E, solved coefficientwise
        N = self.order
        da = [n * t[n] for n in range(N + 1)]
        e = [Fraction(0)] * (N + 1)
        e[0] = Fraction(1)
        for n in range(1, N + 1):
            e[n] = sum((da[k] * e[n - k] for k in range(1, n + 1)), Fraction(0)) / n
        return EgfSeries(e)

    def log(self) -> "EgfSeries":
        if self._t[0] != 1:
            raise SeriesError("log needs constant term 1")
        if self.order == 0:
            return EgfSeries([0])
        q = self.derivative() * self.truncate(self.order - 1).reciprocal()
        return q.integral()


# -- functional spellings -------------------------------------------------
def add(a: EgfSeries, b: EgfSeries) -> EgfSeries:
    return a + b


def mul(a: EgfSeries, b: EgfSeries) -> EgfSeries:
    return a * b


def scalar_mul(c, a: EgfSeries) -> EgfSeries:
    return a.scale(c)


def power(a: EgfSeries, e: int) -> EgfSeries:
    return a ** e


def compose(g: EgfSeries, f: EgfSeries) -> EgfSeries:
    return g.compose(f)


def reversion(f: EgfSeries) -> EgfSeries:
    return f.reversion()


def exp_series(a: EgfSeries) -> EgfSeries:
    return a.exp()


def log_series(a: EgfSeries) -> EgfSeries:
    return a.log()


def derivative(a: EgfSeries) -> EgfSeries:
    return a.derivative()


def coefficient_egf(a: EgfSeries, n: int) -> Fraction:
    return a.egf(n)


# -- a few named series ---------------------------------------------------
def exp_x(order: int = DEFAULT_ORDER) -> EgfSeries:
    return EgfSeries([Fraction(1, factorial(n)) for n in range(order + 1)])


def sinh_x(order: int = DEFAULT_ORDER) -> EgfSeries:
    return EgfSeries([Fraction(n % 2, factorial(n)) for n in range(order + 1)])


def cosh_x(order: int = DEFAULT_ORDER) -> EgfSeries:
    return EgfSeries([Fraction((n + 1) % 2, factorial(n)) for n in range(order + 1)])


def log1p_x(order: int = DEFAULT_ORDER) -> EgfSeries:
    return EgfSeries([Fraction(0)] + [Fraction((-1) ** (n + 1), n) for n in range(1, order + 1)])


def geometric(order: int = DEFAULT_ORDER) -> EgfSeries:
    """``1 / (1 - x)``"""
    return EgfSeries([1] * (order + 1))

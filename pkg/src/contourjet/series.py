"""Truncated univariate power-series arithmetic.

A :class:`TruncatedSeries` keeps the Taylor coefficients of a function at 0 up
to a fixed degree: ``coeffs[i]`` multiplies ``t**i``, i.e. ``f^(i)(0)/i!``.
Every binary operation truncates to the *smaller* operand order so precision
is never invented.  Coefficients are plain floats; the formulas downstream are
algebraic in the inputs, so 64-bit arithmetic holds round-trip tolerances of
1e-6..1e-10 comfortably.

All values are immutable and every operation is a pure function, so the module
is thread-safe without any coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    NonpositiveLeadingCoefficient,
    NonzeroInnerConstant,
    NotInvertible,
    OrderExceeded,
)

MAX_ORDER = 16


@dataclass(frozen=True)
class TruncatedSeries:
    """Taylor polynomial sum(coeffs[i] * t**i) for i = 0..order."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("series needs at least the constant coefficient")
        if len(self.coeffs) - 1 > MAX_ORDER:
            raise OrderExceeded(
                f"order {len(self.coeffs) - 1} exceeds the cap {MAX_ORDER}"
            )
        if not all(math.isfinite(c) for c in self.coeffs):
            raise ValueError(f"non-finite coefficient in {self.coeffs}")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def constant(value: float, order: int) -> "TruncatedSeries":
        return TruncatedSeries((float(value),) + (0.0,) * order)

    @staticmethod
    def identity(order: int) -> "TruncatedSeries":
        """The series of t itself."""
        if order < 1:
            raise ValueError("identity needs order >= 1")
        return TruncatedSeries((0.0, 1.0) + (0.0,) * (order - 1))

    def truncated(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderExceeded(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def evaluate(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    # operator sugar; the series_* functions below are the actual API
    def __add__(self, other):
        return series_add(self, _as_series(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        return series_add(self, series_scale(_as_series(other, self.order), -1.0))

    def __rsub__(self, other):
        return series_add(_as_series(other, self.order), series_scale(self, -1.0))

    def __neg__(self):
        return series_scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return series_scale(self, float(other))

    __rmul__ = __mul__


def _as_series(value, order: int) -> TruncatedSeries:
    if isinstance(value, TruncatedSeries):
        return value
    return TruncatedSeries.constant(float(value), order)


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    n = min(f.order, g.order)
    return TruncatedSeries(tuple(f.coeffs[i] + g.coeffs[i] for i in range(n + 1)))


def series_scale(f: TruncatedSeries, c: float) -> TruncatedSeries:
    return TruncatedSeries(tuple(c * x for x in f.coeffs))


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to min(f.order, g.order)."""
    n = min(f.order, g.order)
    out = [0.0] * (n + 1)
    for i, fi in enumerate(f.coeffs[: n + 1]):
        if fi == 0.0:
            continue
        for j in range(n + 1 - i):
            out[i + j] += fi * g.coeffs[j]
    return TruncatedSeries(tuple(out))


def series_rational_power(f: TruncatedSeries, num: int, den: int) -> TruncatedSeries:
    """Series of f**(num/den) for a series with positive constant term.

    Factors f = c0*(1+u) and composes the binomial series of (1+x)**(num/den)
    with u; the truncated coefficients are exact up to rounding.
    """
    if den <= 0:
        raise ValueError("denominator must be a positive integer")
    c0 = f.coeffs[0]
    if c0 <= 0.0:
        raise NonpositiveLeadingCoefficient(
            f"rational power needs a positive constant term, got {c0}"
        )
    alpha = num / den
    n = f.order
    u = TruncatedSeries((0.0,) + tuple(c / c0 for c in f.coeffs[1:]))
    # binomial coefficients C(alpha, k)
    binom = [1.0]
    for k in range(1, n + 1):
        binom.append(binom[-1] * (alpha - (k - 1)) / k)
    scale = c0 ** alpha
    return series_scale(series_compose(TruncatedSeries(tuple(binom)), u), scale)


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(g(t)) truncated to min(f.order, g.order); needs g(0) = 0."""
    if g.coeffs[0] != 0.0:
        raise NonzeroInnerConstant(f"inner constant term is {g.coeffs[0]}, not 0")
    n = min(f.order, g.order)
    gn = g.truncated(n)
    acc = TruncatedSeries.constant(f.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        acc = series_mul(acc, gn)
        acc = TruncatedSeries((acc.coeffs[0] + f.coeffs[k],) + acc.coeffs[1:])
    return acc


def series_invert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse g with f(g) = t; needs f(0) = 0 and f'(0) != 0."""
    if f.order < 1 or f.coeffs[0] != 0.0 or f.coeffs[1] == 0.0:
        raise NotInvertible(
            "reversion needs a series with zero constant and nonzero linear term"
        )
    n = f.order
    g = [0.0] * (n + 1)
    g[1] = 1.0 / f.coeffs[1]
    for k in range(2, n + 1):
        # with g_k still 0 the t^k coefficient of f(g) is the defect; the
        # unknown enters only through the linear term f'(0)*g_k
        defect = series_compose(f, TruncatedSeries(tuple(g))).coeffs[k]
        g[k] = -defect / f.coeffs[1]
    return TruncatedSeries(tuple(g))


def series_derive(f: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; the order drops by one (constants give the zero series)."""
    if f.order == 0:
        return TruncatedSeries((0.0,))
    return TruncatedSeries(tuple(i * f.coeffs[i] for i in range(1, f.order + 1)))


def series_integrate(f: TruncatedSeries) -> TruncatedSeries:
    """Termwise antiderivative with zero constant; the order grows by one."""
    if f.order + 1 > MAX_ORDER:
        raise OrderExceeded(f"integrating past the order cap {MAX_ORDER}")
    return TruncatedSeries((0.0,) + tuple(f.coeffs[i] / (i + 1) for i in range(f.order + 1)))


def coef(f: TruncatedSeries, k: int) -> tuple[float, ...]:
    """The k-jet (f(0), f'(0), f''(0)/2!, ..., f^(k)(0)/k!), i.e. coeffs[0..k]."""
    if k < 0:
        raise ValueError("jet order must be non-negative")
    if k > f.order:
        raise OrderExceeded(f"jet order {k} exceeds series order {f.order}")
    return f.coeffs[: k + 1]

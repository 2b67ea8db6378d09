"""Forward model for apparent contours of a surface in Monge form.

The surface is the graph f(u,v) = (u, v, h(u,v)) with

    h = a20/2 u^2 + a02/2 v^2 + sum_{i+j>=3} a_ij u^i v^j / (i! j!),

unit normal (0,0,1) at the origin.  For a tangent projection direction
xi(theta) = (cos theta, sin theta, 0) the contour generator is the zero set of
g = cos(theta) h_u + sin(theta) h_v; whenever a02 sin(theta) != 0 it is a
graph v = c(u) through the origin.  The contour is its projection into
xi-perp, carrying the frame X = (-sin theta, cos theta, 0), Y = (0, 0, 1) and
the orientation of X.

With p(theta) = a20 cos^2 + a02 sin^2 (the second fundamental form along xi)
the contour's curvature data at the base point is

    k0 = a20*a02 / p(theta),          dk/ds(0) = q(theta) / p(theta)^3,

q being the cubic form in (cos theta, sin theta) built from the third-order
coefficients.  Both entries are orientation-clean: flipping the traversal
flips the raw curvature value but k0 absorbs it through the X-orientation
rule, and the first arclength derivative is invariant under reversal, so no
extra sign factor appears in either entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _fd
from .errors import (
    AsymptoticDirection,
    DegenerateParametrization,
    RootRefinementFailed,
)
from .series import TruncatedSeries, series_add, series_mul, series_rational_power, series_scale

__all__ = [
    "SurfaceJet",
    "ContourObservation",
    "VertexDirections",
    "p_of_theta",
    "q_of_theta",
    "contour_curvature_jet",
    "contour_generator_series",
    "find_vertex_directions",
    "numeric_contour_oracle",
    "contour_samples",
]


@dataclass(frozen=True)
class SurfaceJet:
    """Monge-form Taylor data a_ij (no linear part, diagonal second order)."""

    a20: float
    a02: float
    third: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    higher: tuple[tuple[int, int, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "third", tuple(float(v) for v in self.third))
        if len(self.third) != 4:
            raise ValueError("third-order block is (a30, a21, a12, a03)")
        for i, j, _ in self.higher:
            if i + j < 4:
                raise ValueError("higher block holds only terms of degree >= 4")

    @property
    def order(self) -> int:
        degrees = [3 if any(self.third) else 2]
        degrees += [i + j for i, j, _ in self.higher]
        return max(degrees)

    @property
    def a30(self) -> float:
        return self.third[0]

    @property
    def a21(self) -> float:
        return self.third[1]

    @property
    def a12(self) -> float:
        return self.third[2]

    @property
    def a03(self) -> float:
        return self.third[3]

    @property
    def mean_curvature(self) -> float:
        return 0.5 * (self.a20 + self.a02)

    @property
    def gauss_curvature(self) -> float:
        return self.a20 * self.a02

    def validate_strict(self) -> "SurfaceJet":
        """Enforce the normalization a20*a02 != 0, a20 > a02, a20 > 0."""
        if self.a20 * self.a02 == 0.0:
            raise ValueError("strict normalization needs a20*a02 != 0")
        if not (self.a20 > self.a02 and self.a20 > 0.0):
            raise ValueError("strict normalization needs a20 > a02 and a20 > 0")
        return self

    def height_coefficients(self) -> np.ndarray:
        """Dense matrix C with h(u,v) = sum C[i,j] u^i v^j."""
        n = max(self.order, 3) + 1
        c = np.zeros((n, n))
        c[2, 0] = 0.5 * self.a20
        c[0, 2] = 0.5 * self.a02
        for (i, j), val in zip(((3, 0), (2, 1), (1, 2), (0, 3)), self.third):
            c[i, j] = val / (math.factorial(i) * math.factorial(j))
        for i, j, val in self.higher:
            c[i, j] += val / (math.factorial(i) * math.factorial(j))
        return c

    def height(self, u, v):
        return np.polynomial.polynomial.polyval2d(u, v, self.height_coefficients())


def _polyder2d(c: np.ndarray, du: int, dv: int) -> np.ndarray:
    out = c
    for _ in range(du):
        out = np.polynomial.polynomial.polyder(out, axis=0)
    for _ in range(dv):
        out = np.polynomial.polynomial.polyder(out, axis=1)
    return out


@dataclass(frozen=True)
class ContourObservation:
    """Direction plus curvature data of its contour at the base point."""

    theta: float
    k0: float
    k1: float | None = None


@dataclass(frozen=True)
class VertexDirections:
    """Directions whose contour has a vertex at the base point."""

    all_directions: bool = False
    thetas: tuple[float, ...] = ()


def p_of_theta(surface: SurfaceJet, theta: float) -> float:
    """Second fundamental form along (cos theta, sin theta): a20 c^2 + a02 s^2."""
    c, s = math.cos(theta), math.sin(theta)
    return surface.a20 * c * c + surface.a02 * s * s


def q_of_theta(surface: SurfaceJet, theta: float) -> float:
    """Cubic form driving dk/ds(0); q = 0 exactly at vertex directions."""
    c, s = math.cos(theta), math.sin(theta)
    a20, a02 = surface.a20, surface.a02
    a30, a21, a12, a03 = surface.third
    return (
        a03 * a20**3 * c**3
        - 3.0 * a02 * a12 * a20**2 * c * c * s
        + 3.0 * a02**2 * a20 * a21 * c * s * s
        - a02**3 * a30 * s**3
    )


def _check_chart(surface: SurfaceJet, theta: float) -> None:
    if abs(surface.a02 * math.sin(theta)) < 1e-14 * max(1.0, abs(surface.a02)):
        raise DegenerateParametrization(
            "contour generator is not a graph over u (a02*sin(theta) ~ 0)"
        )


def contour_curvature_jet(surface: SurfaceJet, theta: float) -> ContourObservation:
    """(k0, dk/ds) of the contour at the base point, X-oriented arclength."""
    p = p_of_theta(surface, theta)
    scale = max(abs(surface.a20), abs(surface.a02), 1e-300)
    if abs(p) < 1e-12 * scale:
        raise AsymptoticDirection(f"p({theta}) = {p}; direction is asymptotic")
    _check_chart(surface, theta)
    k0 = surface.a20 * surface.a02 / p
    k1 = q_of_theta(surface, theta) / p**3
    return ContourObservation(theta=theta, k0=k0, k1=k1)


def contour_generator_series(surface: SurfaceJet, theta: float, order: int) -> TruncatedSeries:
    """Series c(u) of the contour generator v = c(u), by series Newton.

    Starts from the linear slope -a20 cos/ (a02 sin) and iterates
    c <- c - g(u, c)/g_v(u, c) in truncated arithmetic; each pass doubles the
    number of correct coefficients.
    """
    _check_chart(surface, theta)
    ct, st = math.cos(theta), math.sin(theta)
    hc = surface.height_coefficients()
    g_c = ct * _padded(_polyder2d(hc, 1, 0), hc.shape) + st * _padded(
        _polyder2d(hc, 0, 1), hc.shape
    )
    gv_c = _padded(_polyder2d(g_c, 0, 1), g_c.shape)
    slope = -surface.a20 * ct / (surface.a02 * st)
    c = TruncatedSeries((0.0, slope) + (0.0,) * (order - 1))
    u_series = TruncatedSeries.identity(order)
    for _ in range(max(1, math.ceil(math.log2(max(2, order))) + 1)):
        g_val = _eval_bivariate(g_c, u_series, c)
        gv_val = _eval_bivariate(gv_c, u_series, c)
        correction = series_mul(g_val, series_rational_power_signed(gv_val, -1))
        c = series_add(c, series_scale(correction, -1.0))
    return c


def _padded(arr: np.ndarray, shape) -> np.ndarray:
    out = np.zeros(shape)
    out[: arr.shape[0], : arr.shape[1]] = arr
    return out


def series_rational_power_signed(f: TruncatedSeries, num: int) -> TruncatedSeries:
    """Integer power of a series whose constant term may be negative."""
    if f.coeffs[0] < 0.0:
        out = series_rational_power(series_scale(f, -1.0), num, 1)
        return series_scale(out, (-1.0) ** num)
    return series_rational_power(f, num, 1)


def _eval_bivariate(c: np.ndarray, u: TruncatedSeries, v: TruncatedSeries) -> TruncatedSeries:
    """Substitute series for (u, v) in sum C[i,j] u^i v^j, truncated."""
    order = min(u.order, v.order)
    # Horner in v with series coefficients in u
    acc = TruncatedSeries.constant(0.0, order)
    for j in range(c.shape[1] - 1, -1, -1):
        acc = series_mul(acc, v)
        row = _eval_univariate(c[:, j], u)
        acc = series_add(acc, row)
    return acc


def _eval_univariate(coeffs: np.ndarray, u: TruncatedSeries) -> TruncatedSeries:
    acc = TruncatedSeries.constant(0.0, u.order)
    for a in coeffs[::-1]:
        acc = series_mul(acc, u)
        acc = series_add(acc, TruncatedSeries.constant(float(a), u.order))
    return acc


def chart_fold_distance(surface: SurfaceJet, theta: float) -> float:
    """First-order estimate of how far the u-chart of the generator extends.

    g_v vanishes (the generator folds, ending the graph v = c(u)) roughly at
    |u| = |a02 sin| / |d g_v/du along the curve|; configurations with a tiny
    fold distance are numerically hostile for any u-parametrized sampling even
    though a02 sin(theta) itself is far from zero.
    """
    ct, st = math.cos(theta), math.sin(theta)
    a30, a21, a12, a03 = surface.third
    slope = -surface.a20 * ct / (surface.a02 * st)
    rate = abs(ct * a21 + st * a12 + (ct * a12 + st * a03) * slope)
    return abs(surface.a02 * st) / max(rate, 1e-300)


def find_vertex_directions(surface: SurfaceJet) -> VertexDirections:
    """All theta in (0, pi) with q(theta) = 0 and p(theta) != 0.

    q/cos^3 is a cubic in tan(theta); theta = pi/2 is a root exactly when the
    leading coefficient vanishes.  A surface with no third-order terms has
    q identically zero: every direction gives a vertex.
    """
    a20, a02 = surface.a20, surface.a02
    a30, a21, a12, a03 = surface.third
    if a20 * a02 == 0.0:
        raise ValueError("vertex directions need a20*a02 != 0")
    # q(theta) = c0 cos^3 + c1 cos^2 sin + c2 cos sin^2 + c3 sin^3
    c0 = a03 * a20**3
    c1 = -3.0 * a02 * a12 * a20**2
    c2 = 3.0 * a02**2 * a20 * a21
    c3 = -(a02**3) * a30
    coeffs = (c3, c2, c1, c0)  # cubic in tan(theta), highest degree first
    if all(v == 0.0 for v in coeffs):
        return VertexDirections(all_directions=True)
    thetas = []
    trimmed = np.trim_zeros(np.array(coeffs), "f")
    if trimmed.size > 1:
        for root in np.roots(trimmed):
            if abs(root.imag) > 1e-9 * max(1.0, abs(root.real)):
                continue
            theta = math.atan(float(root.real))
            if theta <= 0.0:
                theta += math.pi
            thetas.append(theta)
    if coeffs[0] == 0.0:
        thetas.append(math.pi / 2)  # root at tan = infinity
    scale = max(abs(a20), abs(a02))
    keep = sorted(
        t for t in thetas
        if 0.0 < t < math.pi and abs(p_of_theta(surface, t)) > 1e-12 * scale
    )
    # merge duplicates from repeated roots
    unique: list[float] = []
    for t in keep:
        if not unique or abs(t - unique[-1]) > 1e-9:
            unique.append(t)
    return VertexDirections(thetas=tuple(unique))


# sampling-based oracle ---------------------------------------------------------


def _refine_generator(surface: SurfaceJet, theta: float, u: np.ndarray) -> np.ndarray:
    """Newton-solve g(u, v) = 0 for v at each u, seeded by the series chart."""
    hc = surface.height_coefficients()
    ct, st = math.cos(theta), math.sin(theta)
    gu = _polyder2d(hc, 1, 0)
    gv_ = _polyder2d(hc, 0, 1)

    def g(uu, vv):
        return ct * np.polynomial.polynomial.polyval2d(uu, vv, gu) + st * (
            np.polynomial.polynomial.polyval2d(uu, vv, gv_)
        )

    guv = _polyder2d(hc, 1, 1)
    gvv = _polyder2d(hc, 0, 2)

    def g_v(uu, vv):
        return ct * np.polynomial.polynomial.polyval2d(uu, vv, guv) + st * (
            np.polynomial.polynomial.polyval2d(uu, vv, gvv)
        )

    guess = contour_generator_series(surface, theta, 4)
    v = np.polynomial.polynomial.polyval(u, np.array(guess.coeffs))
    scale = max(1.0, float(np.max(np.abs(hc))))
    for _ in range(60):
        step = g(u, v) / g_v(u, v)
        v = v - step
        if float(np.max(np.abs(step))) < 1e-15 * max(1.0, float(np.max(np.abs(v)))):
            break
    if float(np.max(np.abs(g(u, v)))) > 1e-12 * scale:
        # caller shrinks the window when the chart bends faster than the grid
        raise RootRefinementFailed(
            f"contour generator residual {float(np.max(np.abs(g(u, v)))):.2e}"
        )
    return v


def contour_samples(surface: SurfaceJet, theta: float, u: np.ndarray):
    """Contour samples (x, y) in the (X, Y) frame over the given u grid."""
    _check_chart(surface, theta)
    v = _refine_generator(surface, theta, np.asarray(u, dtype=float))
    x = -np.asarray(u, dtype=float) * math.sin(theta) + v * math.cos(theta)
    y = surface.height(u, v)
    return x, y


def _adaptive_estimate(estimate, h_start: float, h_floor: float, rtol: float = 1e-8):
    """Walk h down until successive Richardson values agree (or the floor).

    Newton failures at a coarse h (window wider than the chart's bend radius)
    shrink the window and retry; at the floor they propagate.
    """
    h = h_start
    prev = None
    while True:
        try:
            cur = _fd.richardson(estimate(h), estimate(2.0 * h))
        except RootRefinementFailed:
            if h / 2.0 < h_floor:
                raise
            h /= 2.0
            continue
        if prev is not None and abs(cur - prev) <= rtol * max(1.0, abs(cur)):
            return cur
        if h / 2.0 < h_floor:
            return cur
        prev = cur
        h /= 2.0


def numeric_contour_oracle(surface: SurfaceJet, theta: float) -> ContourObservation:
    """Finite-difference contour curvature data, independent of the closed form.

    Solves the contour-generator equation by Newton refinement on small u
    grids, projects into the (X, Y) frame, and estimates the curvature and its
    arclength derivative with the plane-curve stencils, Richardson once, with
    adaptive step shrinking (strong third-order terms over a thin chart bend
    the contour on scales far below the default grid).  The X-orientation rule
    fixes the sign of k0; the first arclength derivative needs no sign.
    """
    p = p_of_theta(surface, theta)
    scale = max(abs(surface.a20), abs(surface.a02), 1e-300)
    if abs(p) < 1e-12 * scale:
        raise AsymptoticDirection(f"p({theta}) = {p}; direction is asymptotic")

    def curve_fn(t):
        return contour_samples(surface, theta, t)

    def k0_at(h):
        t = np.arange(-2.0, 3.0) * h
        x, y = curve_fn(t)
        kappa, _ = _fd.plane_curvature(x, y, h)
        xp = float(_fd.diff1(x, h)[1])
        return math.copysign(1.0, xp) * float(kappa[1])

    def k1_at(h):
        return _fd.arclength_derivative_once(curve_fn, 1, h)

    k0 = _adaptive_estimate(k0_at, h_start=2e-4, h_floor=1.25e-5)
    k1 = _adaptive_estimate(k1_at, h_start=4e-3, h_floor=2.5e-5)
    return ContourObservation(theta=theta, k0=k0, k1=k1)

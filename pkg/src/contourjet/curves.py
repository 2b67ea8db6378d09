"""Forward model for space curves under orthogonal projection.

A curve with non-vanishing curvature at the base point is kept in the adapted
frame

    gamma(t) = (t, sum_{i>=2} a_i t^i / i!, sum_{i>=3} b_i t^i / i!),

so a2 is the curvature and b3 the torsion at 0.  Projecting along a unit
direction xi gives a plane curve in xi-perp; with a positively oriented basis
{X, Y} (meaning {X, Y, xi} is positively oriented in R^3) and the parameter
orientation inherited from gamma, its signed curvature is

    kappa(t) = det(gamma', gamma'', xi) / |pi_xi gamma'|^3.

Everything here is computed with the truncated-series engine; the closed-form
transcriptions are kept alongside as an independent route, and finite
difference oracles provide a third, sampling-based route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _fd
from .errors import NotAType, OrderExceeded, TangentDirection
from .series import (
    TruncatedSeries,
    series_add,
    series_compose,
    series_derive,
    series_integrate,
    series_invert,
    series_mul,
    series_rational_power,
    series_scale,
)

__all__ = [
    "CurveJet",
    "OsculatingDirection",
    "GeneralDirection",
    "CurvatureJet",
    "project_osculating",
    "projected_curvature_jet",
    "closed_form_kappa3",
    "cuspidal_curvature",
    "project_tangential_secondary",
    "plane_basis",
    "projected_plane_curve",
    "numeric_curvature_oracle",
    "numeric_cuspidal_oracle",
]


@dataclass(frozen=True)
class CurveJet:
    """Taylor data (a_2..a_k, b_3..b_k) of a space curve in the adapted frame."""

    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if len(self.a) != len(self.b) + 1:
            raise ValueError(
                f"need coefficients a_2..a_k and b_3..b_k; got {len(self.a)} a's "
                f"and {len(self.b)} b's"
            )
        if self.order < 3:
            raise ValueError("curve jets start at order 3")

    @property
    def order(self) -> int:
        return len(self.a) + 1

    @classmethod
    def with_terms(cls, order: int, **terms: float) -> "CurveJet":
        """Build a jet from named coefficients, e.g. with_terms(5, a2=1, b3=1)."""
        a = [0.0] * (order - 1)
        b = [0.0] * (order - 2)
        for name, value in terms.items():
            kind, idx = name[0], int(name[1:])
            if kind == "a" and 2 <= idx <= order:
                a[idx - 2] = float(value)
            elif kind == "b" and 3 <= idx <= order:
                b[idx - 3] = float(value)
            else:
                raise ValueError(f"coefficient {name} out of range for order {order}")
        return cls(tuple(a), tuple(b))

    def pad_to(self, order: int) -> "CurveJet":
        """Explicit zero-extension (declares the higher Taylor terms to be 0)."""
        if order < self.order:
            raise ValueError("pad_to cannot shrink a jet")
        return CurveJet(
            self.a + (0.0,) * (order - self.order),
            self.b + (0.0,) * (order - self.order),
        )

    @property
    def a2(self) -> float:
        return self.a[0]

    @property
    def b3(self) -> float:
        return self.b[0]

    def component_series(self, order: int):
        """(x, y, z) as truncated series of the requested order <= self.order."""
        if order > self.order:
            raise OrderExceeded(
                f"curve jet of order {self.order} cannot provide order {order}"
            )
        x = TruncatedSeries.identity(order)
        ycoef = [0.0, 0.0] + [self.a[i - 2] / math.factorial(i) for i in range(2, order + 1)]
        zcoef = [0.0, 0.0, 0.0] + [self.b[i - 3] / math.factorial(i) for i in range(3, order + 1)]
        return x, TruncatedSeries(tuple(ycoef)), TruncatedSeries(tuple(zcoef[: order + 1]))

    def point(self, t: np.ndarray) -> np.ndarray:
        """Evaluate the polynomial representative; shape (3, len(t))."""
        t = np.asarray(t, dtype=float)
        y = np.zeros_like(t)
        for i in range(self.order, 1, -1):
            y = y * t + self.a[i - 2] / math.factorial(i)
        z = np.zeros_like(t)
        for i in range(self.order, 2, -1):
            z = z * t + self.b[i - 3] / math.factorial(i)
        return np.stack([t, y * t * t, z * t**3])

    def __str__(self):
        return f"CurveJet(order={self.order}, a={self.a}, b={self.b})"


@dataclass(frozen=True)
class OsculatingDirection:
    """Projection direction (cos(theta), sin(theta), 0) in the osculating plane."""

    theta: float

    def __post_init__(self):
        if not 0.0 < self.theta < math.pi:
            raise ValueError(f"theta must lie in (0, pi), got {self.theta}")

    def unit_vector(self) -> tuple[float, float, float]:
        return (math.cos(self.theta), math.sin(self.theta), 0.0)


@dataclass(frozen=True)
class GeneralDirection:
    """Direction (sin t1 cos t2, sin t1 sin t2, cos t1) in polar coordinates."""

    theta1: float
    theta2: float

    def unit_vector(self) -> tuple[float, float, float]:
        s1 = math.sin(self.theta1)
        return (s1 * math.cos(self.theta2), s1 * math.sin(self.theta2), math.cos(self.theta1))


@dataclass(frozen=True)
class CurvatureJet:
    """Arclength Taylor data (kappa(0), kappa'(0), kappa''(0)/2!, ...)."""

    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError(f"non-finite curvature jet {self.values}")

    @property
    def order(self) -> int:
        return len(self.values) - 1


def projected_curvature_jet(curve: CurveJet, xi, n: int) -> CurvatureJet:
    """Arclength curvature jet of pi_xi(gamma), for any unit direction xi.

    Runs entirely on truncated series: kappa(t) = det(gamma', gamma'', xi) *
    beta^(-3/2) with beta = |gamma'|^2 - <gamma', xi>^2, then composes with the
    inverse of the arclength t -> integral of sqrt(beta).
    """
    if n + 2 > curve.order:
        raise OrderExceeded(
            f"jet order {n} needs curve order {n + 2}, have {curve.order}"
        )
    m = n + 2
    x, y, z = curve.component_series(m)
    xp, yp, zp = series_derive(x), series_derive(y), series_derive(z)
    xpp, ypp, zpp = series_derive(xp), series_derive(yp), series_derive(zp)
    ux, uy, uz = (float(c) for c in xi)
    # det(gamma', gamma'', xi) = <gamma' x gamma'', xi>
    alpha = series_add(
        series_add(
            series_scale(series_add(series_mul(yp, zpp), series_scale(series_mul(zp, ypp), -1.0)), ux),
            series_scale(series_add(series_mul(zp, xpp), series_scale(series_mul(xp, zpp), -1.0)), uy),
        ),
        series_scale(series_add(series_mul(xp, ypp), series_scale(series_mul(yp, xpp), -1.0)), uz),
    )
    dot_xi = series_add(
        series_add(series_scale(xp, ux), series_scale(yp, uy)), series_scale(zp, uz)
    )
    speed2 = series_add(
        series_add(series_mul(xp, xp), series_mul(yp, yp)),
        series_add(series_mul(zp, zp), series_scale(series_mul(dot_xi, dot_xi), -1.0)),
    )
    kappa_t = series_mul(alpha, series_rational_power(speed2, -3, 2))
    arclength = series_integrate(series_rational_power(speed2, 1, 2))
    t_of_s = series_invert(arclength)
    kappa_s = series_compose(kappa_t, t_of_s)
    return CurvatureJet(kappa_s.coeffs[: n + 1])


def project_osculating(curve: CurveJet, direction: OsculatingDirection, n: int) -> CurvatureJet:
    """Curvature jet of the projection into the osculating plane.

    The projected curve has an inflection at 0, so values[0] is exactly zero.
    """
    return projected_curvature_jet(curve, direction.unit_vector(), n)


def closed_form_kappa3(curve: CurveJet, direction: OsculatingDirection) -> CurvatureJet:
    """Transcribed order-3 arclength curvature jet for an osculating projection.

    Independent of the series route; used to cross-validate it.  Needs the
    curve coefficients through order 5.
    """
    if curve.order < 5:
        raise OrderExceeded(f"closed form needs curve order >= 5, have {curve.order}")
    a2, a3 = curve.a[0], curve.a[1]
    b3, b4, b5 = curve.b[0], curve.b[1], curve.b[2]
    sn, cs = math.sin(direction.theta), math.cos(direction.theta)
    return CurvatureJet((
        0.0,
        -b3 / sn**3,
        -(b4 * sn + 6.0 * a2 * b3 * cs) / (2.0 * sn**5),
        -(45.0 * a2**2 * b3 * cs**2 + b5 * sn**2 + 10.0 * (a3 * b3 + a2 * b4) * sn * cs)
        / (6.0 * sn**7),
    ))


def cuspidal_curvature(c2, c3) -> float:
    """det(c''(0), c'''(0)) / |c''(0)|^(5/2) of an A-type singular plane point.

    Invariant under reparametrization; for the tangential projection of a
    curve jet with a2 > 0 it equals b3 / a2^(3/2).
    """
    x2, y2 = float(c2[0]), float(c2[1])
    x3, y3 = float(c3[0]), float(c3[1])
    norm2 = math.hypot(x2, y2)
    if norm2 == 0.0:
        raise NotAType("second derivative vanishes; no cuspidal curvature")
    return (x2 * y3 - y2 * x3) / norm2**2.5


def project_tangential_secondary(curve: CurveJet, direction: GeneralDirection) -> CurvatureJet:
    """Order-1 curvature jet of the projection along a non-tangent direction.

    Closed form in the adapted frame where the first axis is tangent to the
    curve; matches the series route of projected_curvature_jet.
    """
    c1, s1 = math.cos(direction.theta1), math.sin(direction.theta1)
    c2, s2 = math.cos(direction.theta2), math.sin(direction.theta2)
    if c1 == 0.0:
        raise TangentDirection("secondary direction is tangent to the curve")
    if curve.order < 3:
        raise OrderExceeded("tangential closed form needs curve order >= 3")
    a2, a3, b3 = curve.a[0], curve.a[1], curve.b[0]
    d = c1 * c1 * c2 * c2 + s2 * s2
    q = (
        -b3 * c1 * c1 * c2 * c2 * s1 * s2
        - b3 * s1 * s2**3
        + c1**3 * c2 * (a3 * c2 - 3.0 * a2 * a2 * s2)
        + c1 * s2 * (3.0 * a2 * a2 * c2 + a3 * s2)
    )
    return CurvatureJet((a2 * c1 / d**1.5, q / d**3))


# sampling-based oracles -------------------------------------------------------


def plane_basis(xi):
    """Deterministic orthonormal basis (e1, e2) of xi-perp with e1 x e2 = xi.

    For xi = (cos t, sin t, 0) this is exactly ((-sin t, cos t, 0), (0, 0, 1)).
    """
    xi = np.asarray(xi, dtype=float)
    xi = xi / np.linalg.norm(xi)
    helper = np.array([0.0, 0.0, 1.0]) if abs(xi[2]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(helper, xi)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(xi, e1)
    return e1, e2


def projected_plane_curve(curve: CurveJet, xi):
    """Vectorized t -> (x, y) samples of pi_xi(gamma) in the oriented basis."""
    e1, e2 = plane_basis(xi)

    def sample(t):
        pts = curve.point(np.asarray(t, dtype=float))
        return e1 @ pts, e2 @ pts

    return sample


def numeric_curvature_oracle(curve_fn, j: int, h: float | None = None) -> float:
    """Finite-difference d^j kappa/ds^j at t=0 of a sampled plane curve.

    curve_fn maps an array of parameters to (x, y) sample arrays.  Central
    3-point stencils are iterated for the arclength derivatives and Richardson
    extrapolated once (h vs 2h).  Steps default to 1e-4 for j <= 1, 1e-3 for
    j = 2 and 4e-3 for j = 3: iterating first derivatives amplifies round-off
    like eps/h^j, so the tiny step that suits kappa itself cannot serve j = 3.
    Agreement with the series route on polynomial curves is ~1e-7 relative.
    """
    if not 0 <= j <= 3:
        raise ValueError("oracle supports derivative orders 0..3")
    if h is None:
        h = _fd.DEFAULT_STEPS[j]
    return _fd.richardson(
        _fd.arclength_derivative_once(curve_fn, j, h),
        _fd.arclength_derivative_once(curve_fn, j, 2.0 * h),
    )


def numeric_cuspidal_oracle(curve_fn, h: float = 1e-3) -> float:
    """Cuspidal curvature of a sampled A-type singular plane curve at t=0."""

    def one(step):
        t = np.arange(-2.0, 3.0) * step
        x, y = (np.asarray(v, dtype=float) for v in curve_fn(t))
        c2 = (_fd.diff2(x, step)[1], _fd.diff2(y, step)[1])
        c3 = (float(_fd.diff3(x, step)[0]), float(_fd.diff3(y, step)[0]))
        return c2, c3

    (c2h, c3h), (c22h, c32h) = one(h), one(2.0 * h)
    c2 = tuple(_fd.richardson(a, b) for a, b in zip(c2h, c22h))
    c3 = tuple(_fd.richardson(a, b) for a, b in zip(c3h, c32h))
    return cuspidal_curvature(c2, c3)

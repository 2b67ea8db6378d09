"""Recovery of curve Taylor data from projected curvature jets.

Two-view setting: both projection directions lie in the osculating plane, the
relative angle phi = theta2 - theta1 is known, and each view contributes the
arclength curvature jet of its projected curve.  The absolute angles and the
torsion coefficient b3 come out in closed form; every further pair
(a_{l-2}, b_l) solves a 2x2 linear system, one level l = 4..n at a time.

The level systems are assembled by *affine probing*: the (l-2)-nd arclength
jet entry is an affine function of the unknown pair once the lower
coefficients are frozen, so three forward evaluations (at (0,0), (1,0), (0,1))
recover the constant and both column coefficients exactly.  This keeps the
inverse consistent with the forward model by construction instead of
transcribing the combinatorial constants of the level equations.

A note on attainable accuracy: the measured jet entries grow like
sin(theta)^-(n+1) times fast-growing combinatorial constants, while the
contribution of the top unknowns sits several digits below the entry
magnitude.  Float64 measurements therefore carry limited information about
(a_{n-2}, b_n) near the angular boundary; at theta ~ 0.1 and n = 8 no solver
can place b_8 better than ~1e-5 relative.  The level solves here reproduce
the measured entries exactly (they interpolate), so accuracy is set by that
conditioning, not by the algorithm.

Tangential setting: one view along the tangent (contributing the cuspidal
curvature mu of the singular projected curve) plus one general view
contributing an order-1 curvature jet determine (a2, b3, a3) in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curves import (
    CurvatureJet,
    CurveJet,
    GeneralDirection,
    OsculatingDirection,
    project_osculating,
)
from .errors import (
    CollinearDirections,
    DegenerateMeasurement,
    IllConditioned,
    OrderExceeded,
    TangentDirection,
    ZeroCurvatureMeasurement,
)

__all__ = [
    "OsculatingMeasurementPair",
    "ReconstructionReport",
    "recover_viewing_angles",
    "recover_b3",
    "recover_curve",
    "recover_curve_tangential",
]


def _real_cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


@dataclass(frozen=True)
class OsculatingMeasurementPair:
    """Two curvature jets, the relative viewing angle phi = theta2 - theta1,
    and the target reconstruction order n."""

    jet1: CurvatureJet
    jet2: CurvatureJet
    phi: float
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("reconstruction order starts at n = 3")
        if not -math.pi < self.phi < math.pi or self.phi == 0.0:
            raise CollinearDirections(
                f"phi must lie in (-pi, pi) and differ from 0, got {self.phi}"
            )
        if min(self.jet1.order, self.jet2.order) < self.n - 2:
            raise OrderExceeded(
                f"order-{self.n} recovery needs jets of order >= {self.n - 2}"
            )

    def derivative_entries(self) -> tuple[float, float]:
        d1, d2 = self.jet1.values[1], self.jet2.values[1]
        if d1 == 0.0 or d2 == 0.0:
            raise DegenerateMeasurement(
                "first arclength derivative of a measured curvature vanishes"
            )
        return d1, d2


@dataclass(frozen=True)
class ReconstructionReport:
    """Recovered angles and coefficients plus back-substitution diagnostics.

    residuals holds forward-model minus measurement, entrywise, for both jets;
    condition is the smallest scaled pivot of the level solves (inf if the
    recovery stopped at the closed-form stage n = 3).
    """

    theta1: float
    theta2: float
    a: tuple[float, ...]
    b: tuple[float, ...]
    residuals: tuple[tuple[float, ...], tuple[float, ...]]
    condition: float

    @property
    def order(self) -> int:
        return len(self.b) + 2

    def curve(self) -> CurveJet:
        """The recovered jet, with the unknowable top a-coefficients set to 0."""
        n = self.order
        return CurveJet(self.a + (0.0,) * (n - 1 - len(self.a)), self.b)


def recover_viewing_angles(m: OsculatingMeasurementPair) -> tuple[float, float]:
    """Absolute angles from the derivative ratio and phi.

    The ratio r of the first derivative entries equals sin^3(theta1+phi) /
    sin^3(theta1), so cot(theta1) = (r^(1/3) - cos(phi)) / sin(phi).
    """
    d1, d2 = m.derivative_entries()
    r = d1 / d2
    if r <= 0.0:
        raise DegenerateMeasurement(
            "derivative entries must share their sign (both equal -b3/sin^3)"
        )
    theta1 = math.pi / 2 - math.atan((r ** (1.0 / 3.0) - math.cos(m.phi)) / math.sin(m.phi))
    theta2 = theta1 + m.phi
    if not 0.0 < theta2 < math.pi:
        raise DegenerateMeasurement(
            f"secondary angle {theta2} falls outside (0, pi); inconsistent pair"
        )
    return theta1, theta2


def recover_b3(m: OsculatingMeasurementPair) -> float:
    """Torsion coefficient from the two derivative entries and phi.

    |b3| = (sin^2(phi) k1~^2 k2~^2 / (k1~^2 - 2 cos(phi) k1~ k2~ + k2~^2))^(3/2)
    with ki~ the real cube roots of the derivative entries; the sign is
    -sign(dkappa1/ds) since dkappa/ds(0) = -b3/sin^3(theta).
    """
    d1, d2 = m.derivative_entries()
    k1, k2 = _real_cbrt(d1), _real_cbrt(d2)
    denom = k1 * k1 - 2.0 * math.cos(m.phi) * k1 * k2 + k2 * k2
    if denom <= 0.0:
        raise DegenerateMeasurement("cube-root combination degenerate; bad pair")
    mag = (math.sin(m.phi) ** 2 * k1 * k1 * k2 * k2 / denom) ** 1.5
    return -math.copysign(mag, d1)


def recover_curve(m: OsculatingMeasurementPair) -> ReconstructionReport:
    """Full recovery of (a_2..a_{n-2}, b_3..b_n) plus both viewing angles."""
    theta1, theta2 = recover_viewing_angles(m)
    dirs = (OsculatingDirection(theta1), OsculatingDirection(theta2))
    a_known: list[float] = []
    b_known: list[float] = [recover_b3(m)]
    condition = math.inf

    for level in range(4, m.n + 1):
        idx = level - 2  # jet entry carrying the new pair

        def entry_pair(a_probe: float, b_probe: float) -> tuple[float, float]:
            # a_{level-1}, a_level provably do not enter entry idx; fix them at 0
            probe = CurveJet(
                tuple(a_known) + (a_probe, 0.0, 0.0),
                tuple(b_known) + (b_probe,),
            )
            return tuple(
                project_osculating(probe, d, idx).values[idx] for d in dirs
            )

        base = entry_pair(0.0, 0.0)
        col_a = tuple(v - w for v, w in zip(entry_pair(1.0, 0.0), base))
        col_b = tuple(v - w for v, w in zip(entry_pair(0.0, 1.0), base))
        rhs = (m.jet1.values[idx] - base[0], m.jet2.values[idx] - base[1])
        det = col_a[0] * col_b[1] - col_a[1] * col_b[0]
        scale = max(
            abs(col_a[0] * col_b[1]),
            abs(col_a[1] * col_b[0]),
            1e-300,
        )
        if abs(det) < 1e-12 * scale:
            raise IllConditioned(
                f"level-{level} system is singular (scaled pivot {abs(det) / scale:.2e})"
            )
        condition = min(condition, abs(det) / scale)
        a_known.append((rhs[0] * col_b[1] - rhs[1] * col_b[0]) / det)
        b_known.append((col_a[0] * rhs[1] - col_a[1] * rhs[0]) / det)

    report = ReconstructionReport(
        theta1=theta1,
        theta2=theta2,
        a=tuple(a_known),
        b=tuple(b_known),
        residuals=((), ()),
        condition=condition,
    )
    recovered = report.curve()
    resid = tuple(
        tuple(
            f - v
            for f, v in zip(
                project_osculating(recovered, d, m.n - 2).values,
                jet.values[: m.n - 1],
            )
        )
        for d, jet in zip(dirs, (m.jet1, m.jet2))
    )
    return ReconstructionReport(
        theta1=theta1,
        theta2=theta2,
        a=report.a,
        b=report.b,
        residuals=resid,
        condition=condition,
    )


def recover_curve_tangential(
    mu: float, jet: CurvatureJet, direction: GeneralDirection
) -> tuple[float, float, float]:
    """(a2, b3, a3) from the cuspidal curvature of the tangential view and the
    order-1 curvature jet of a second, non-tangent view.

    a2 comes from kappa(0) = a2 cos(theta1) / D^(3/2); b3 = mu * a2^(3/2); a3
    solves the linear occurrence in the derivative entry (coefficient
    cos(theta1) * D, nonzero whenever the direction is not tangent).
    """
    c1, s1 = math.cos(direction.theta1), math.sin(direction.theta1)
    c2, s2 = math.cos(direction.theta2), math.sin(direction.theta2)
    if c1 == 0.0:
        raise TangentDirection("secondary direction is tangent to the curve")
    if jet.order < 1:
        raise OrderExceeded("tangential recovery needs an order-1 curvature jet")
    k0, k1 = jet.values[0], jet.values[1]
    if k0 == 0.0:
        raise ZeroCurvatureMeasurement("curvature of the secondary view vanishes")
    d = c1 * c1 * c2 * c2 + s2 * s2
    a2 = k0 * d**1.5 / c1
    if a2 <= 0.0:
        raise ZeroCurvatureMeasurement(
            f"recovered a2 = {a2} is not positive; measurement inconsistent with "
            "the adapted frame (a2 > 0)"
        )
    b3 = mu * a2**1.5
    q0 = (
        -b3 * c1 * c1 * c2 * c2 * s1 * s2
        - b3 * s1 * s2**3
        - c1**3 * c2 * 3.0 * a2 * a2 * s2
        + c1 * s2 * 3.0 * a2 * a2 * c2
    )
    a3 = (k1 * d**3 - q0) / (c1 * d)
    return a2, b3, a3

"""Finite-difference plumbing shared by the numeric oracles.

Plain 3-point central stencils, iterated for arclength derivatives, with one
Richardson extrapolation (h vs 2h) on top.  Step sizes grow with the
derivative order: the round-off floor of an iterated j-th derivative scales
like eps/h**j, so a single tiny h cannot serve j = 0..3.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateGrid

# default steps per arclength-derivative order
DEFAULT_STEPS = {0: 1e-4, 1: 1e-4, 2: 1e-3, 3: 4e-3}


def diff1(values: np.ndarray, h: float) -> np.ndarray:
    """Central first derivative; result is trimmed by one point per side."""
    return (values[2:] - values[:-2]) / (2.0 * h)


def diff2(values: np.ndarray, h: float) -> np.ndarray:
    return (values[2:] - 2.0 * values[1:-1] + values[:-2]) / (h * h)


def diff3(values: np.ndarray, h: float) -> np.ndarray:
    """Central third derivative; trimmed by two points per side."""
    return (values[4:] - 2.0 * values[3:-1] + 2.0 * values[1:-3] - values[:-4]) / (
        2.0 * h**3
    )


def plane_curvature(x: np.ndarray, y: np.ndarray, h: float):
    """Signed curvature and speed of a sampled plane curve.

    Input arrays live on a uniform grid of spacing h; the outputs are trimmed
    by one point per side.  Orientation is that of the parameter.
    """
    xp, yp = diff1(x, h), diff1(y, h)
    xpp, ypp = diff2(x, h), diff2(y, h)
    speed2 = xp * xp + yp * yp
    if np.min(speed2) < 1e-12:
        raise DegenerateGrid("sampled curve is (numerically) singular on the grid")
    kappa = (xp * ypp - yp * xpp) / speed2**1.5
    return kappa, np.sqrt(speed2)


def arclength_derivative_once(curve_fn, j: int, h: float) -> float:
    """d^j kappa/ds^j at t=0 from one grid of spacing h (no extrapolation)."""
    m = j + 2
    t = np.arange(-m, m + 1, dtype=float) * h
    x, y = curve_fn(t)
    kappa, speed = plane_curvature(np.asarray(x, float), np.asarray(y, float), h)
    f = kappa
    for _ in range(j):
        f = diff1(f, h) / speed[1:-1]
        speed = speed[1:-1]
    return float(f[len(f) // 2])


def richardson(est_h: float, est_2h: float) -> float:
    """One step of Richardson extrapolation for an O(h^2) estimator."""
    return (4.0 * est_h - est_2h) / 3.0

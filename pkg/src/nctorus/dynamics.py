"""Rotation orbits on the circle and leaves of the Kronecker flow.

Angles are in full turns throughout: the circle is [0, 1) and the torus
chart is the unit square, with the left edge glued to the right edge after
a vertical shift by ``lam``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import RotationParameter, as_parameter
from .errors import DegenerateInputError, InvalidParameterError
from .ktheory import CircleFunction


@dataclass(frozen=True, eq=False)
class Orbit:
    theta0: float
    lam: RotationParameter
    points: np.ndarray

    def __len__(self):
        return len(self.points)


def _frac(x):
    r = np.mod(x, 1.0)
    return np.where(r >= 1.0, 0.0, r)


def orbit(theta0: float, lam, N: int) -> Orbit:
    """``theta0 + k lam mod 1`` for k = 0..N-1.

    Each ``k lam`` is reduced mod 1 on its own before the offset is added, so
    the error per point stays at a few ulp however large k gets.
    """
    lam = as_parameter(lam)
    if N < 1:
        raise InvalidParameterError(f"N must be positive, got {N}")
    theta0 = float(theta0) % 1.0
    steps = lam.frac_multiple(np.arange(N))
    return Orbit(theta0, lam, _frac(theta0 + steps))


def _sorted_gaps(points: np.ndarray) -> np.ndarray:
    x = np.sort(points)
    if x.size == 1:
        return np.array([1.0])
    return np.append(np.diff(x), 1.0 - x[-1] + x[0])


def three_gap_stats(o: Orbit, dedupe: float = 1e-10) -> list[float]:
    """Distinct circular gap lengths between neighbouring orbit points.

    At most three by the three-distance theorem.
    """
    gaps = _sorted_gaps(o.points)
    if np.min(gaps) <= 1e-12:
        raise DegenerateInputError("orbit revisits a point; gap statistics need distinct points")
    out: list[float] = []
    for g in np.sort(gaps).tolist():
        if not out or g - out[-1] > dedupe:
            out.append(g)
    return out


def discrepancy(o: Orbit) -> float:
    """Star discrepancy ``max_i max(|x_(i) - (i-1)/N|, |x_(i) - i/N|)``."""
    x = np.sort(o.points)
    N = x.size
    i = np.arange(1, N + 1)
    return float(np.max(np.maximum(np.abs(x - (i - 1) / N), np.abs(x - i / N))))


def birkhoff_average(f: CircleFunction, theta0: float, lam, N: int) -> complex:
    """Time average ``(1/N) sum f(theta0 + k lam)``."""
    o = orbit(theta0, lam, N)
    return complex(np.mean(f(o.points)))


def koksma_bound(f: CircleFunction, o: Orbit) -> float:
    """``variation(f) * discrepancy(o)``, the bound on |average - integral|."""
    return f.variation() * discrepancy(o)


@dataclass(frozen=True, eq=False)
class LeafTrace:
    lam: RotationParameter
    t0: float
    segments: list[tuple[tuple[float, float], tuple[float, float]]]
    return_heights: np.ndarray
    closed: bool
    period: int | None
    min_return_distance: float


def _circle_dist(a, b):
    d = np.abs(np.asarray(a) - b) % 1.0
    return np.minimum(d, 1.0 - d)


def leaf_trace(lam, t0: float, max_wraps: int, tol: float = 1e-9) -> LeafTrace:
    """Follow the leaf through ``(0, t0)`` for up to ``max_wraps`` crossings.

    Each crossing of the chart is the line ``y = h + lam x``; leaving at
    ``(1, h + lam)`` re-enters at ``(0, h + lam mod 1)``. The leaf is closed
    with period k when the k-th return height is within ``tol`` of ``t0``.
    For an exact ``p/q`` this happens at k = q; for an irrational proxy the
    returns only come close, at the convergent denominators.
    """
    lam = as_parameter(lam)
    if max_wraps < 1:
        raise InvalidParameterError(f"max_wraps must be positive, got {max_wraps}")
    t0 = float(t0) % 1.0
    heights = _frac(t0 + lam.frac_multiple(np.arange(max_wraps + 1)))
    dist = _circle_dist(heights[1:], t0)
    hits = np.nonzero(dist <= tol)[0]
    if hits.size:
        period = int(hits[0]) + 1
        closed = True
    else:
        period = None
        closed = False
    n_seg = period if closed else max_wraps
    segments = []
    slope = lam.value
    for h in heights[:n_seg].tolist():
        top = h + slope
        if top <= 1.0:
            segments.append(((0.0, h), (1.0, top)))
        else:
            # the line crosses y = 1 inside the chart and wraps to the bottom
            x_cross = (1.0 - h) / slope
            segments.append(((0.0, h), (x_cross, 1.0)))
            segments.append(((x_cross, 0.0), (1.0, top - 1.0)))
    return LeafTrace(
        lam=lam,
        t0=t0,
        segments=segments,
        return_heights=heights[1 : n_seg + 1],
        closed=closed,
        period=period,
        min_return_distance=float(np.min(dist[:n_seg])),
    )


def transverse_measure_estimate(lam, arc: tuple[float, float], theta0: float, N: int) -> float:
    """Fraction of the first N orbit points landing in the arc ``[a, b)``.

    The arc runs counterclockwise from ``a`` for length ``b - a`` (at most 1)
    and may wrap past 0, so shifted arcs need no special handling.
    """
    a, b = float(arc[0]), float(arc[1])
    length = b - a
    if not 0.0 <= length <= 1.0:
        raise InvalidParameterError(f"arc length must lie in [0, 1], got {length!r}")
    o = orbit(theta0, lam, N)
    if length >= 1.0:
        return 1.0
    rel = _frac(o.points - (a % 1.0))
    return float(np.count_nonzero(rel < length)) / N


def golden() -> RotationParameter:
    return RotationParameter.from_float((math.sqrt(5.0) - 1.0) / 2.0)

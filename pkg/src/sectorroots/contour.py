"""Path integrals and winding numbers on axis-aligned boxes.

integrate_segment is a global adaptive Gauss-Kronrod (7, 15) scheme on a
straight segment; winding numbers are computed by tracking the continuous
argument of f - a along the box boundary, never by numerical integration of
f'/(f - a), so the count is an exact integer with a measurable phase defect.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ToleranceNotMet
from .polyexp import _wrap_phase

# 15-point Kronrod nodes and weights with the embedded 7-point Gauss rule.
_XK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870,
])
_GAUSS_IDX = np.array([1, 3, 5, 7, 9, 11, 13])


def _panel(g: Callable, z0: complex, delta: complex, a: float, b: float):
    """Kronrod estimate, error estimate and L1 magnitude of the panel."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    ts = mid + half * _XK
    vals = np.asarray(g(z0 + ts * delta), dtype=complex)
    k = half * complex(np.dot(_WK, vals))
    gg = half * complex(np.dot(_WG, vals[_GAUSS_IDX]))
    l1 = abs(half) * float(np.dot(_WK, np.abs(vals)))
    return k, abs(k - gg), l1


# one ulp of a 15-point weighted sum, with headroom for the heap bookkeeping
_ROUNDOFF = 5e-15
_MAX_PANELS = 4096


def integrate_segment_err(g: Callable, z0: complex, z1: complex,
                          tol: float = 1e-12, max_depth: int = 50,
                          noise: float = _ROUNDOFF) -> tuple[complex, float]:
    """Adaptive integral of g along [z0, z1] plus its absolute error bound.

    g must accept a numpy array of points. The worst panel is refined until
    the summed error estimate falls below tol * (1 + |result|) or below
    noise times the accumulated function magnitude, whichever is larger
    (integrands with heavy cancellation, or carrying their own evaluation
    noise, stall at that floor, which is genuine attained accuracy, not
    failure). Callers whose g has relative noise above one ulp, e.g. from a
    large complex exponential phase, must raise noise accordingly. Raises
    ToleranceNotMet when a panel needs more than max_depth splits or the
    panel budget runs out.
    """
    z0 = complex(z0)
    z1 = complex(z1)
    delta = z1 - z0
    if delta == 0:
        return 0j, 0.0
    noise = max(noise, _ROUNDOFF)
    val, err, l1 = _panel(g, z0, delta, 0.0, 1.0)
    heap = [(-err, 0, 0.0, 1.0, 0, val, l1)]
    counter = 1
    total = val
    total_err = err
    total_l1 = l1
    while total_err > tol * (1.0 + abs(total)) + noise * total_l1:
        if counter >= _MAX_PANELS:
            raise ToleranceNotMet(
                f"segment quadrature: {_MAX_PANELS} panels exhausted, "
                f"error {total_err:.3e}")
        neg_err, _, a, b, depth, v, vl1 = heapq.heappop(heap)
        if depth >= max_depth:
            raise ToleranceNotMet(
                f"segment quadrature: depth {max_depth} reached, "
                f"error {total_err:.3e} vs target {tol * (1 + abs(total)):.3e}")
        mid = 0.5 * (a + b)
        v1, e1, l11 = _panel(g, z0, delta, a, mid)
        v2, e2, l12 = _panel(g, z0, delta, mid, b)
        total += (v1 + v2) - v
        total_err += (e1 + e2) - (-neg_err)
        total_l1 += (l11 + l12) - vl1
        heapq.heappush(heap, (-e1, counter, a, mid, depth + 1, v1, l11))
        heapq.heappush(heap, (-e2, counter + 1, mid, b, depth + 1, v2, l12))
        counter += 2
    bound = (total_err + noise * total_l1) * abs(delta)
    return total * delta, bound


def integrate_segment(g: Callable, z0: complex, z1: complex,
                      tol: float = 1e-12, max_depth: int = 50) -> complex:
    """Adaptive integral of g along the straight segment [z0, z1]."""
    return integrate_segment_err(g, z0, z1, tol, max_depth)[0]


@dataclass(frozen=True)
class Box:
    """Closed axis-aligned rectangle [x0, x1] x [y0, y1]."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("box must have positive width and height")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def diameter(self) -> float:
        return math.hypot(self.width, self.height)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))

    def corners(self) -> list[complex]:
        """Counterclockwise from the lower-left corner."""
        return [complex(self.x0, self.y0), complex(self.x1, self.y0),
                complex(self.x1, self.y1), complex(self.x0, self.y1)]

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        return (self.x0 - pad <= z.real <= self.x1 + pad
                and self.y0 - pad <= z.imag <= self.y1 + pad)

    def split(self, cross: complex | None = None) -> list["Box"]:
        """Four children sharing the crosshair point (default: center)."""
        c = self.center if cross is None else complex(cross)
        cx, cy = c.real, c.imag
        if not (self.x0 < cx < self.x1 and self.y0 < cy < self.y1):
            raise ValueError("crosshair outside the box interior")
        return [Box(self.x0, self.y0, cx, cy), Box(cx, self.y0, self.x1, cy),
                Box(self.x0, cy, cx, self.y1), Box(cx, cy, self.x1, self.y1)]

    def expanded(self, frac: float) -> "Box":
        dx = frac * self.width
        dy = frac * self.height
        return Box(self.x0 - dx, self.y0 - dy, self.x1 + dx, self.y1 + dy)


@dataclass(frozen=True)
class WindingResult:
    """Integer count, the raw (unrounded) winding value, and the defect."""

    count: int
    raw: complex
    roundoff: float


_PHASE_STEP = 0.5 * math.pi
_MAX_BISECT = 42


def _refine(pathval, s0, s1, depth: int) -> float:
    """Accumulated phase change from s0 to s1, bisecting until each step
    moves the argument by less than pi/2."""
    dphi = _wrap_phase(s1.w.phase - s0.w.phase)
    if abs(dphi) < _PHASE_STEP:
        return dphi
    if depth >= _MAX_BISECT:
        raise ToleranceNotMet("phase step would not settle under bisection")
    zm = 0.5 * (s0.z + s1.z)
    sm = pathval.extend(s0, zm)
    return _refine(pathval, s0, sm, depth + 1) + _refine(pathval, sm, s1, depth + 1)


def winding_count(pathval, box: Box) -> WindingResult:
    """Winding number of f - a around 0 along the box boundary (ccw).

    pathval provides start/extend evaluation of w = f - a in scaled form and
    raises BoundaryTooClose itself when |w| drops below its safe floor.
    """
    corners = box.corners()
    first = pathval.start(corners[0])
    total = 0.0
    prev = first
    for i in range(4):
        z_from = corners[i]
        z_to = corners[(i + 1) % 4]
        n0 = max(2, pathval.min_samples(z_from, z_to))
        targets = [z_from + (z_to - z_from) * (j / n0) for j in range(1, n0 + 1)]
        if i == 3:
            # close the loop on the exact starting sample
            targets[-1] = corners[0]
        for z in targets[:-1]:
            s = pathval.extend(prev, z)
            total += _refine(pathval, prev, s, 0)
            prev = s
        if i == 3:
            s = first
            total += _refine(pathval, prev, s, 0)
        else:
            s = pathval.extend(prev, targets[-1])
            total += _refine(pathval, prev, s, 0)
        prev = s
    raw = total / (2.0 * math.pi)
    count = int(round(raw))
    roundoff = abs(raw - count)
    if roundoff > 0.25 or count < 0:
        raise ToleranceNotMet(
            f"winding phase defect {roundoff:.3f} too large (raw {raw:.6f})")
    return WindingResult(count=count, raw=complex(raw), roundoff=roundoff)


def winding_number(F, a: complex, box: Box, tol: float = 1e-10) -> WindingResult:
    """Winding number of f - a on the box boundary for a PolyExpFunction.

    Thin wrapper building the standard path evaluator; use find_a_points for
    searches that need decay-sector rescue or clipping.
    """
    from .funcmodel import PolyExpRootModel  # deferred: funcmodel uses this module

    model = PolyExpRootModel(F, tol=tol)
    return winding_count(model.path_evaluator(complex(a)), box)

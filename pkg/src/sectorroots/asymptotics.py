"""Critical rays, asymptotic values, and the first-order sector form.

For f' = p exp(q) with d = deg q >= 1 and A the leading coefficient of q,
the plane splits into d sectors of opening 2 pi / d around the rays

    phi_k = ((2k - 1) pi - arg A) / d,   k = 1, ..., d,

along which Re(A z^d) -> -infinity. f tends to a finite limit a_k along
phi_k, and inside the surrounding decay cone

    f(z) = a_k + (p(z) / q'(z)) exp(q(z)) (1 + o(1)).

Everything here is computed from (p, q, c) by quadrature; nothing is
hardcoded to particular examples.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegreeZero, NearCriticalZero, ToleranceNotMet
from .polyexp import (PolyExpFunction, ScaledComplex, eval_f, eval_scaled_exp,
                      integral_scaled, _wrap_phase)

TWO_PI = 2.0 * math.pi


def _mod_2pi(t: float) -> float:
    t = math.fmod(t, TWO_PI)
    return t + TWO_PI if t < 0 else t


def angular_distance(a: float, b: float) -> float:
    """Distance between two directions, in [0, pi]."""
    return abs(_wrap_phase(a - b))


@dataclass(frozen=True)
class AsymptoticData:
    """Critical rays with their limits, frozen for one function.

    rays are sorted ascending in [0, 2 pi); values[k] is the limit of f
    along rays[k], certified to value_tol.
    """

    d: int
    A: complex
    rays: tuple[float, ...]
    values: tuple[complex, ...]
    value_tol: float

    def nearest_ray(self, theta: float) -> int:
        """Index of the ray closest to the direction theta."""
        return min(range(self.d),
                   key=lambda k: (angular_distance(theta, self.rays[k]), k))


def critical_rays(F: PolyExpFunction) -> list[float]:
    """The d directions of maximal decay of exp(q), sorted ascending.

    Raises DegreeZero when q is constant (no rays exist).
    """
    d = F.q.degree
    if d < 1:
        raise DegreeZero("deg q = 0: the function has no critical rays")
    arg_a = cmath.phase(F.A)
    rays = [_mod_2pi(((2 * k - 1) * math.pi - arg_a) / d) for k in range(1, d + 1)]
    return sorted(rays)


def _tail_estimate(F: PolyExpFunction, z: complex) -> float:
    """|p(z)/q'(z)| exp(Re q(z)), the size of f(z) - a_k on a decay ray."""
    qp = F.q.derivative()(z)
    if qp == 0:
        return math.inf
    re_q = F.q(z).real
    if re_q > 700.0:
        return math.inf
    return abs(F.p(z) / qp) * math.exp(max(re_q, -745.0))


def asymptotic_values(F: PolyExpFunction, tol: float = 1e-9,
                      r_max: float = 50.0) -> AsymptoticData:
    """Limits a_k of f along each critical ray, by straight-line quadrature.

    The integration endpoint R on each ray is pushed out until the dropped
    tail is provably below tol / 10, then f(R e^{i phi_k}) is evaluated with
    quadrature tolerance tol / 10.
    """
    rays = critical_rays(F)
    if F.p.is_zero:
        # f is constant; every limit equals c
        return AsymptoticData(d=F.d, A=F.A, rays=tuple(rays),
                              values=tuple(complex(F.c) for _ in rays),
                              value_tol=tol)
    values = []
    for phi in rays:
        direction = cmath.rect(1.0, phi)
        r = 1.0
        while r <= r_max:
            if _tail_estimate(F, r * direction) < 0.1 * tol:
                break
            r *= 1.2
        else:
            raise ToleranceNotMet(
                f"tail along ray {phi:.6f} not below {0.1 * tol:.1e} by r = {r_max}")
        values.append(eval_f(F, r * direction, 0.1 * tol))
    return AsymptoticData(d=F.d, A=F.A, rays=tuple(rays),
                          values=tuple(values), value_tol=tol)


def sector_remainder(F: PolyExpFunction, z: complex,
                     data: AsymptoticData) -> tuple[ScaledComplex, int]:
    """(p(z)/q'(z)) exp(q(z)) in scaled form, and the nearest ray index.

    Raises NearCriticalZero when q'(z) is numerically zero, where the
    sector form degenerates.
    """
    z = complex(z)
    qp = F.q.derivative()(z)
    if abs(qp) < 1e-12 * (1.0 + abs(z)) ** max(data.d - 1, 0):
        raise NearCriticalZero(f"q'({z}) ~ 0; sector form undefined here")
    k = data.nearest_ray(cmath.phase(z) % TWO_PI)
    pz = F.p(z)
    if pz == 0:
        return ScaledComplex.zero(), k
    factor = ScaledComplex.from_complex(pz / qp)
    return factor.mul(eval_scaled_exp(F.q, z)), k


def asymptotic_approx(F: PolyExpFunction, z: complex, data: AsymptoticData):
    """First-order sector approximation a_k + (p/q') exp(q) at z.

    Returns (value, k). value is a plain complex when it fits in double
    range; in growth regions beyond that it is a ScaledComplex (where the
    a_k term is below relative machine precision anyway).
    """
    rem, k = sector_remainder(F, z, data)
    if rem.is_zero or rem.logmag <= 690.0:
        return complex(data.values[k]) + rem.to_complex(), k
    return rem, k


def in_decay_interior(F: PolyExpFunction, z: complex, margin: float = 0.05) -> bool:
    """True when the leading term of Re q strictly decreases along the
    outward radial direction at z (z sits inside a decay cone)."""
    if F.q.degree < 1 or z == 0:
        return False
    ang = cmath.phase(F.A) + F.q.degree * cmath.phase(z)
    return math.cos(ang) < -margin


def tail_remainder(F: PolyExpFunction, z: complex,
                   tol: float = 1e-12) -> ScaledComplex:
    """Exact f(z) - a_k as a scaled integral, for z inside a decay cone.

    Integrates -p exp(q) from z radially outward until Re q has dropped by
    46 (relative truncation below 1e-20), entirely in scaled arithmetic.
    The result keeps full relative precision even when |f - a_k| is far
    below the cancellation floor of direct double-precision evaluation.
    """
    z = complex(z)
    if not in_decay_interior(F, z):
        raise ValueError(f"{z} is not inside a decay cone; tail form invalid")
    re0 = F.q(z).real
    u = 1.0
    re_prev = re0
    for _ in range(60):
        u *= 1.25
        re_u = F.q(z * u).real
        if re_u > re_prev + 1e-9:
            raise ValueError("Re q not decreasing outward; tail form invalid")
        re_prev = re_u
        if re_u <= re0 - 46.0:
            break
    else:
        raise ToleranceNotMet("could not find a truncation radius for the tail")
    return integral_scaled(F, z, z * u, tol).neg()


def accumulation_rays_analytic(data: AsymptoticData, target: complex,
                               tol: float = 1e-6) -> list[float]:
    """Directions where a-points of f accumulate, for a finite target a.

    a-points cluster along the two transition rays phi_k +- pi/(2d) of every
    decay sector whose limit differs from the target; a sector with
    a_k = target contributes none. Result sorted ascending in [0, 2 pi).
    """
    if data.d < 1:
        raise DegreeZero("no rays for constant q")
    half = math.pi / (2 * data.d)
    out: list[float] = []
    for k in range(data.d):
        if abs(data.values[k] - complex(target)) <= tol:
            continue
        for cand in (_mod_2pi(data.rays[k] - half), _mod_2pi(data.rays[k] + half)):
            if not any(angular_distance(cand, r) <= 1e-12 for r in out):
                out.append(cand)
    return sorted(out)

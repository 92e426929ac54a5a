"""Entire functions of the form f(z) = c + int_0^z p(t) exp(q(t)) dt.

p and q are polynomials. The family is closed under the data (p, q, c), and
every evaluation routine here works from that data alone. Values of f can
span thousands of orders of magnitude, so alongside plain complex evaluation
there is a scaled representation (log-magnitude, phase) and scaled variants
of the integral that never overflow.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import OverflowRegion

# Largest exponent allowed in plain double-precision evaluation. exp(690)
# is near 1e299, which leaves headroom for the polynomial factor.
OVERFLOW_LOG = 690.0


def _wrap_phase(t: float) -> float:
    """Reduce to (-pi, pi]."""
    t = math.fmod(t, 2.0 * math.pi)
    if t > math.pi:
        t -= 2.0 * math.pi
    elif t <= -math.pi:
        t += 2.0 * math.pi
    return t


class Polynomial:
    """Polynomial with complex coefficients, ascending order.

    coeffs[k] multiplies z**k. Trailing zero coefficients are stripped so
    the leading coefficient is nonzero whenever the polynomial is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[complex] = ()):
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, z):
        """Horner evaluation; z may be a scalar or a numpy array."""
        if isinstance(z, np.ndarray):
            acc = np.zeros_like(z, dtype=complex)
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


@dataclass(frozen=True)
class ScaledComplex:
    """Nonzero complex number exp(logmag + i*phase); zero is logmag = -inf.

    The representation survives magnitudes far outside double range and
    keeps full relative precision in both magnitude and phase.
    """

    logmag: float
    phase: float

    @staticmethod
    def zero() -> "ScaledComplex":
        return ScaledComplex(float("-inf"), 0.0)

    @staticmethod
    def from_complex(w: complex) -> "ScaledComplex":
        w = complex(w)
        if w == 0:
            return ScaledComplex.zero()
        # math.atan2, not cmath.phase: the latter raises OverflowError on
        # some libm builds when imag/real underflows to a subnormal
        return ScaledComplex(math.log(abs(w)), math.atan2(w.imag, w.real))

    @property
    def is_zero(self) -> bool:
        return self.logmag == float("-inf")

    def to_complex(self) -> complex:
        """Convert to a plain complex; overflows to inf beyond double range."""
        if self.is_zero:
            return 0j
        if self.logmag > 709.0:
            return cmath.rect(float("inf"), self.phase)
        return cmath.rect(math.exp(self.logmag), self.phase)

    def shift(self, dlog: float) -> "ScaledComplex":
        """Multiply by exp(dlog)."""
        if self.is_zero:
            return self
        return ScaledComplex(self.logmag + dlog, self.phase)

    def mul(self, other: "ScaledComplex") -> "ScaledComplex":
        if self.is_zero or other.is_zero:
            return ScaledComplex.zero()
        return ScaledComplex(self.logmag + other.logmag,
                             _wrap_phase(self.phase + other.phase))

    def div(self, other: "ScaledComplex") -> "ScaledComplex":
        if other.is_zero:
            raise ZeroDivisionError("scaled division by zero")
        if self.is_zero:
            return self
        return ScaledComplex(self.logmag - other.logmag,
                             _wrap_phase(self.phase - other.phase))

    def neg(self) -> "ScaledComplex":
        if self.is_zero:
            return self
        return ScaledComplex(self.logmag, _wrap_phase(self.phase + math.pi))

    def add(self, other: "ScaledComplex") -> "ScaledComplex":
        """Sum; exact when the magnitudes are within double headroom of
        each other, otherwise the smaller term is dropped (it is below
        relative machine precision in that case)."""
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        big, small = (self, other) if self.logmag >= other.logmag else (other, self)
        if big.logmag - small.logmag > 40.0:
            return big
        w = cmath.rect(1.0, big.phase) + cmath.rect(
            math.exp(small.logmag - big.logmag), small.phase)
        if w == 0:
            return ScaledComplex.zero()
        return ScaledComplex.from_complex(w).shift(big.logmag)

    def abs_value(self) -> float:
        """|self| as a double; underflows to 0 and overflows to inf."""
        if self.is_zero:
            return 0.0
        if self.logmag > 709.0:
            return float("inf")
        if self.logmag < -745.0:
            return 0.0
        return math.exp(self.logmag)


@dataclass(frozen=True)
class PolyExpFunction:
    """The data (p, q, c) defining f(z) = c + int_0^z p exp(q)."""

    p: Polynomial
    q: Polynomial
    c: complex

    @property
    def d(self) -> int:
        """deg q, the number of critical rays."""
        return max(self.q.degree, 0)

    @property
    def A(self) -> complex:
        """Leading coefficient of q (only meaningful when d >= 1)."""
        if self.q.degree < 1:
            raise ValueError("q is constant; no leading coefficient of interest")
        return self.q.leading


def eval_poly(poly: Polynomial, z):
    """Horner evaluation of a polynomial (scalar or numpy array argument)."""
    return poly(z)


def eval_scaled_exp(q: Polynomial, z: complex) -> ScaledComplex:
    """exp(q(z)) in scaled form: logmag = Re q(z), phase = Im q(z) wrapped."""
    w = q(complex(z))
    return ScaledComplex(w.real, _wrap_phase(w.imag))


def eval_f_prime(F: PolyExpFunction, z: complex) -> ScaledComplex:
    """f'(z) = p(z) exp(q(z)), never overflowing."""
    pz = F.p(complex(z))
    e = eval_scaled_exp(F.q, z)
    if pz == 0:
        return ScaledComplex.zero()
    return ScaledComplex.from_complex(pz).mul(e)


def _segment_poly(poly: Polynomial, z0: complex, z1: complex) -> np.ndarray:
    """Ascending coefficients (in s) of poly(z0 + s*(z1 - z0)), s in [0, 1]."""
    delta = z1 - z0
    res = np.zeros(1, dtype=complex)
    for c in reversed(poly.coeffs or (0j,)):
        res = np.convolve(res, np.array([z0, delta], dtype=complex))
        res[0] += c
    return res


def _horner_real(coeffs, s: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def segment_re_q_max(q: Polynomial, z0: complex, z1: complex) -> float:
    """Exact max of Re q on the straight segment [z0, z1].

    Re q restricted to the segment is a real polynomial in the parameter, so
    the maximum sits at an endpoint or at a real critical point inside.
    """
    coeffs = [float(c) for c in _segment_poly(q, z0, z1).real]
    while len(coeffs) > 1 and coeffs[-1] == 0.0:
        coeffs.pop()
    best = max(coeffs[0], _horner_real(coeffs, 1.0))
    n = len(coeffs) - 1
    crits: list[float] = []
    if n == 2:
        if coeffs[2] != 0.0:
            crits.append(-0.5 * coeffs[1] / coeffs[2])
    elif n == 3:
        # critical points of a real cubic: quadratic formula
        a, b, c = 3.0 * coeffs[3], 2.0 * coeffs[2], coeffs[1]
        disc = b * b - 4.0 * a * c
        if disc >= 0.0:
            rt = math.sqrt(disc)
            crits.extend(((-b - rt) / (2.0 * a), (-b + rt) / (2.0 * a)))
    elif n > 3:
        dcoeffs = [k * coeffs[k] for k in range(1, n + 1)]
        for r in np.roots(dcoeffs[::-1]):
            if abs(r.imag) < 1e-9:
                crits.append(float(r.real))
    for s in crits:
        if 0.0 < s < 1.0:
            best = max(best, _horner_real(coeffs, s))
    return best


def _segment_chunks(F: PolyExpFunction, z0: complex, z1: complex) -> int:
    """Split count keeping the phase swing of exp(q) moderate per chunk.

    Long radial paths through growth sectors turn over thousands of
    radians; one adaptive pass stalls there, while chunks of a few dozen
    radians converge immediately. Short steps stay a single segment.
    """
    qd = F.q.derivative()
    length = abs(z1 - z0)
    mid = 0.5 * (z0 + z1)
    swing = length * 1.5 * max(abs(qd(z0)), abs(qd(mid)), abs(qd(z1)))
    if swing <= 60.0:
        return 1
    return min(256, 1 + int(swing / 80.0))


def _one_segment_parts(F: PolyExpFunction, z0: complex, z1: complex,
                       tol: float) -> tuple[ScaledComplex, float]:
    from .contour import integrate_segment_err

    m = segment_re_q_max(F.q, z0, z1)
    p, q = F.p, F.q

    def g(zz):
        qz = q(zz)
        return p(zz) * np.exp(qz - m)

    # exp(q) carries phase noise of |q| ulps; below that the samples are
    # indistinguishable from the truth and refinement cannot help
    mag = max(abs(q(z0)), abs(q(0.5 * (z0 + z1))), abs(q(z1)))
    val, err = integrate_segment_err(g, z0, z1, tol,
                                     noise=1e-15 * (1.0 + mag))
    err_log = m + math.log(max(err, 1e-300))
    if val == 0:
        return ScaledComplex.zero(), err_log
    return ScaledComplex.from_complex(val).shift(m), err_log


def integral_scaled_parts(F: PolyExpFunction, z0: complex, z1: complex,
                          tol: float = 1e-12) -> tuple[ScaledComplex, float]:
    """integral_scaled plus the log of its attained absolute error bound.

    The error bound covers quadrature truncation and the machine roundoff
    floor of the samples, in the same (true, unscaled) units as the value.
    """
    z0 = complex(z0)
    z1 = complex(z1)
    if z0 == z1:
        return ScaledComplex.zero(), -math.inf
    n = _segment_chunks(F, z0, z1)
    if n == 1:
        return _one_segment_parts(F, z0, z1, tol)
    total = ScaledComplex.zero()
    err_acc = -math.inf
    step = (z1 - z0) / n
    for k in range(n):
        part, err_log = _one_segment_parts(F, z0 + k * step,
                                           z0 + (k + 1) * step, tol)
        total = total.add(part)
        err_acc = float(np.logaddexp(err_acc, err_log))
    return total, err_acc


def integral_scaled(F: PolyExpFunction, z0: complex, z1: complex,
                    tol: float = 1e-12) -> ScaledComplex:
    """int_{z0}^{z1} p exp(q) along the straight segment, in scaled form.

    The exponential is factored at the path maximum of Re q, so the working
    integrand is bounded by |p| and the result keeps full relative accuracy
    for arbitrarily large or small magnitudes.
    """
    return integral_scaled_parts(F, z0, z1, tol)[0]


def eval_f(F: PolyExpFunction, z: complex, tol: float = 1e-12) -> complex:
    """f(z) by adaptive quadrature along the straight segment [0, z].

    Raises OverflowRegion when Re q exceeds the safe exponent range anywhere
    on the path; callers should switch to the sector form there.
    """
    z = complex(z)
    if z == 0:
        return complex(F.c)
    m = segment_re_q_max(F.q, 0j, z)
    if m > OVERFLOW_LOG:
        raise OverflowRegion(
            f"Re q reaches {m:.1f} > {OVERFLOW_LOG:.0f} on [0, {z}]")
    val = integral_scaled(F, 0j, z, tol)
    return complex(F.c) + val.to_complex()


def eval_f_scaled(F: PolyExpFunction, z: complex, tol: float = 1e-12) -> ScaledComplex:
    """f(z) in scaled form; works in growth sectors where eval_f overflows.

    When the integral dwarfs c the constant is absorbed at full relative
    precision of the scaled sum.
    """
    z = complex(z)
    base = ScaledComplex.from_complex(complex(F.c))
    if z == 0:
        return base
    return base.add(integral_scaled(F, 0j, z, tol))


# ---------------------------------------------------------------------------
# JSON encoding of function specifications


def _pair(w: complex) -> list[float]:
    w = complex(w)
    return [w.real, w.imag]


def function_to_json(F: PolyExpFunction) -> str:
    """Serialize as {"p": [[re, im], ...], "q": [[re, im], ...], "c": [re, im]}."""
    doc = {
        "p": [_pair(c) for c in F.p.coeffs],
        "q": [_pair(c) for c in F.q.coeffs],
        "c": _pair(F.c),
    }
    return json.dumps(doc, sort_keys=True, separators=(", ", ": "))


def function_from_json(text: str) -> PolyExpFunction:
    doc = json.loads(text)
    for key in ("p", "q", "c"):
        if key not in doc:
            raise ValueError(f"function spec missing key {key!r}")
    p = Polynomial([complex(re, im) for re, im in doc["p"]])
    q = Polynomial([complex(re, im) for re, im in doc["q"]])
    c = complex(doc["c"][0], doc["c"][1])
    return PolyExpFunction(p=p, q=q, c=c)


def load_function(path) -> PolyExpFunction:
    with open(path, "r", encoding="utf-8") as fh:
        return function_from_json(fh.read())


def save_function(F: PolyExpFunction, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(function_to_json(F) + "\n")

"""Growth and counting statistics for the integral family, plus the
canonical products with zeros on the positive axis.

log M(r) and circle means are computed through the scaled evaluator, so
overflow regions (order 2 and 3 growth leaves double range long before
r = 11) and deep decay sectors (where direct evaluation of f would lose
everything to cancellation) both give honest log-magnitudes.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import zeta

from .contour import Box
from .errors import (BoundaryTooClose, DegreeZero, NonPositiveLogM,
                     TailTooLarge, ToleranceNotMet)
from .funcmodel import PathSample, PolyExpRootModel, _HEADROOM_LOG
from .polyexp import PolyExpFunction, ScaledComplex
from .rootfinder import (RootRecord, SearchResult, _JITTER, _Search, _dedup,
                         _wind_once)
from .sectorgeom import RaySet

_GOLDEN = 0.5 * (math.sqrt(5.0) - 1.0)

# tail bound the truncated-product contract demands
_TAIL_BOUND = 1e-8

_CHUNK = 1 << 19


def _model_for(F: PolyExpFunction, data=None) -> PolyExpRootModel:
    model = PolyExpRootModel(F, data=data)
    if data is None:
        try:
            model.ensure_data()
        except (DegreeZero, ToleranceNotMet):
            model.data = None
    return model


def _log_abs_f(model: PolyExpRootModel, z: complex) -> float:
    """log|f(z)| via the scaled evaluator.

    Decay interiors go through the tail rescue (f = a_k + remainder), which
    keeps log|f| exact even where the anchored integral would return the
    asymptotic value plus noise.
    """
    if model.in_rescue_zone(z):
        return model.diff_scaled(z, 0j).logmag
    fs, _ = model.anchored_f(z)
    return fs.logmag


def _golden_max(g, lo: float, hi: float, iters: int = 48):
    """Plain golden-section maximization on [lo, hi]."""
    a, b = float(lo), float(hi)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = g(x1), g(x2)
    for _ in range(iters):
        if b - a < 1e-9:
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = g(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = g(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def log_max_modulus(F: PolyExpFunction, r: float, samples: int = 256,
                    *, data=None) -> float:
    """Natural log of max |f| on the circle |z| = r.

    Scans `samples` equispaced directions, then polishes the best one with
    a golden-section pass over the bracketing arc.
    """
    if not r > 0.0:
        raise ValueError("r must be positive")
    if samples < 64:
        raise ValueError("need at least 64 circle samples")
    model = _model_for(F, data)
    thetas = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    vals = [_log_abs_f(model, r * cmath.exp(1j * t)) for t in thetas]
    j = int(np.argmax(vals))
    step = 2.0 * math.pi / samples

    def g(t: float) -> float:
        return _log_abs_f(model, r * cmath.exp(1j * t))

    _, polished = _golden_max(g, thetas[j] - step, thetas[j] + step)
    return max(float(vals[j]), float(polished))


def circle_log_mean(F: PolyExpFunction, r: float, samples: int = 4096,
                    *, data=None) -> float:
    """Mean of log|f| over `samples` equispaced points of |z| = r.

    On the periodic circle the rectangle rule is spectrally accurate as
    long as no zero of f sits on (or hugs) the circle.
    """
    if not r > 0.0:
        raise ValueError("r must be positive")
    if samples < 64:
        raise ValueError("need at least 64 circle samples")
    model = _model_for(F, data)
    total = 0.0
    for k in range(samples):
        t = 2.0 * math.pi * k / samples
        total += _log_abs_f(model, r * cmath.exp(1j * t))
    return total / samples


def jensen_defect(F: PolyExpFunction, roots, r: float, samples: int = 4096,
                  *, data=None) -> float:
    """Absolute defect of Jensen's identity at radius r.

    Compares the circle mean of log|f| against log|f(0)| plus the full
    counting integral sum(m * log(r/|z_k|)) over the located zeros with
    |z_k| <= r. A complete, correctly-multiplicity'd zero list drives the
    defect to quadrature accuracy; a missed or spurious zero shows up as
    an O(log) offset.

    Note the full integral starts at 0, not at the N(r) normalization
    point 1: zeros inside the unit disk enter with log(r/|z|). With the
    truncated normalization the identity would be off by the constant
    sum(m * log(1/|z_k|)) over moduli below 1.
    """
    if abs(F.c) == 0.0:
        raise ValueError("Jensen's identity needs f(0) != 0")
    mean = circle_log_mean(F, r, samples, data=data)
    total = 0.0
    for rec in roots:
        z = complex(getattr(rec, "location", rec))
        m = int(getattr(rec, "multiplicity", 1))
        if 0.0 < abs(z) <= r:
            total += m * math.log(r / abs(z))
    return abs(total + math.log(abs(complex(F.c))) - mean)


def order_estimate(F_or_product, rgrid, *, samples: int = 128,
                   data=None) -> float:
    """Least-squares slope of log log M(r) against log r.

    Accepts either the integral family or a CanonicalProduct. The grid must
    be ascending with at least 4 radii, all beyond r = 2 (closer in, log M
    can dip under e and the outer log loses meaning: NonPositiveLogM).
    """
    radii = [float(r) for r in rgrid]
    if len(radii) < 4:
        raise ValueError("order estimate needs at least 4 radii")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("rgrid must be strictly ascending")
    if radii[0] <= 2.0:
        raise ValueError("all radii must exceed 2")
    if isinstance(F_or_product, CanonicalProduct):
        logm = [_product_log_max(F_or_product, r, samples) for r in radii]
    else:
        model_data = data
        if model_data is None:
            model_data = _model_for(F_or_product).data
        logm = [log_max_modulus(F_or_product, r, samples, data=model_data)
                for r in radii]
    bad = [r for r, m in zip(radii, logm) if m <= 1.0]
    if bad:
        raise NonPositiveLogM(
            f"log M(r) <= 1 at r = {bad[0]}; grid starts too far in")
    x = np.log(radii)
    y = np.log(logm)
    return float(np.polyfit(x, y, 1)[0])


# ---------------------------------------------------------------------------
# counting functions


@dataclass(frozen=True)
class CountingTable:
    """n(r), N(r) and log M(r) on a shared radius grid.

    N(r) = integral of n(t)/t from 1 to r, evaluated in closed form from
    the root moduli; moduli below 1 contribute log r.
    """

    radii: tuple
    n: tuple
    N: tuple
    logM: tuple

    @property
    def slack(self) -> tuple:
        """Jensen slack N(r) - logM(r), nonpositive up to the O(1) term."""
        return tuple(nv - lm for nv, lm in zip(self.N, self.logM))

    def rows(self):
        return zip(self.radii, self.n, self.N, self.logM, self.slack)

    def to_csv(self, path: str | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["r", "n", "N", "logM", "slack"])
        for r, n, nn, lm, sl in self.rows():
            w.writerow([f"{r:.17g}", n, f"{nn:.17g}", f"{lm:.17g}",
                        f"{sl:.17g}"])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text


def _root_moduli(roots):
    pairs = []
    for rec in roots:
        z = getattr(rec, "location", rec)
        m = int(getattr(rec, "multiplicity", 1))
        pairs.append((abs(complex(z)), m))
    pairs.sort(key=lambda p: p[0])
    return pairs


def counting_functions(roots, logM, rgrid) -> CountingTable:
    """Exact n(r)/N(r) from located roots, tabulated against log M.

    roots may be RootRecords (multiplicity honored) or bare complex
    numbers. logM is either a sequence aligned with rgrid or a callable
    evaluated on it. The root list must be complete out to max(rgrid).
    """
    radii = [float(r) for r in rgrid]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("rgrid must be strictly ascending")
    if any(r <= 0 for r in radii):
        raise ValueError("radii must be positive")
    if callable(logM):
        logm = [float(logM(r)) for r in radii]
    else:
        logm = [float(v) for v in logM]
        if len(logm) != len(radii):
            raise ValueError("logM and rgrid lengths differ")
    pairs = _root_moduli(roots)
    mods = [p[0] for p in pairs]
    cum = np.cumsum([p[1] for p in pairs]) if pairs else np.zeros(0)

    ns = []
    Ns = []
    for r in radii:
        k = bisect_right(mods, r)
        ns.append(int(cum[k - 1]) if k else 0)
        acc = 0.0
        if r >= 1.0:
            for rho, m in pairs[:k]:
                acc += m * (math.log(r) - math.log(max(rho, 1.0)))
        else:
            # integral runs backward from 1; only moduli below 1 matter
            for rho, m in pairs:
                if rho < 1.0:
                    acc += m * math.log(max(rho, r))
                else:
                    break
        Ns.append(acc)
    return CountingTable(tuple(radii), tuple(ns), tuple(Ns), tuple(logm))


# ---------------------------------------------------------------------------
# canonical products with zeros a_n = n^(1/rho)


@dataclass(frozen=True)
class CanonicalProduct:
    """Truncation of prod (1 - z/a_n) with a_n = n^(1/rho), 0 < rho < 1."""

    rho: float
    n_terms: int

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise ValueError("rho must lie in (0, 1)")
        if self.n_terms < 1:
            raise ValueError("n_terms must be positive")

    @cached_property
    def zeros(self) -> np.ndarray:
        """Ascending zero moduli. Materialized lazily; avoid for huge n_terms."""
        n = np.arange(1, self.n_terms + 1, dtype=np.float64)
        return n ** (1.0 / self.rho)

    @property
    def max_radius(self) -> float:
        """Largest |z| the tail precondition admits at this truncation."""
        return _TAIL_BOUND / float(zeta(1.0 / self.rho, self.n_terms + 1))


def canonical_product_eval(P: CanonicalProduct, z: complex) -> complex:
    """Truncated product times the first-order tail factor exp(-z * S1).

    S1 is the exact Hurwitz-zeta tail sum of 1/a_n. Requires the tail bound
    |z| * S1 < 1e-8, which keeps the dropped quadratic tail terms below
    5e-17; otherwise TailTooLarge names the truncation needed.
    """
    z = complex(z)
    s = 1.0 / P.rho
    s1 = float(zeta(s, P.n_terms + 1))
    if abs(z) * s1 >= _TAIL_BOUND:
        need = (abs(z) / (_TAIL_BOUND * (s - 1.0))) ** (1.0 / (s - 1.0))
        raise TailTooLarge(
            f"tail bound |z|*S1 = {abs(z) * s1:.3e} >= {_TAIL_BOUND:g}; "
            f"needs n_terms around {int(need) + 1}")
    core = 1.0 + 0.0j
    for lo in range(1, P.n_terms + 1, _CHUNK):
        hi = min(lo + _CHUNK - 1, P.n_terms)
        n = np.arange(lo, hi + 1, dtype=np.float64)
        core *= complex(np.prod(1.0 - z / n ** s))
    return core * cmath.exp(-z * s1)


def canonical_one_point_rays(rho: float) -> RaySet:
    """Rays arg z = +-pi(1 - 1/(2 rho)) where product 1-points accumulate.

    The two signs collapse to the single ray 0 at rho = 1/2.
    """
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must lie in (0, 1)")
    t = math.pi * (1.0 - 0.5 / rho)
    return RaySet([t, -t])


class CanonicalProductModel:
    """Sample-protocol evaluator for a canonical product on |z| <= r_max.

    Factors with a_n up to well past r_max are kept exactly; the rest are
    folded into exp(-z*S1 - z^2*S2/2) with Hurwitz-zeta tail sums, leaving
    a cubic tail error below 1e-13. Works with the winding subdivision
    search (path_evaluator/diff_scaled/derivative_scaled/min_samples).
    """

    def __init__(self, P: CanonicalProduct, r_max: float):
        if not r_max > 0.0:
            raise ValueError("r_max must be positive")
        self.P = P
        self.r_max = float(r_max)
        s = 1.0 / P.rho
        n = max(64, int(math.ceil((4.0 * r_max) ** P.rho)) + 8)
        while (r_max ** 3 / 3.0) * float(zeta(3.0 * s, n + 1)) >= 1e-13:
            n *= 2
            if n > 50_000_000:
                raise TailTooLarge(
                    f"no workable core truncation for r_max = {r_max:g}")
        self.n_core = n
        idx = np.arange(1, n + 1, dtype=np.float64)
        self.a = idx ** s
        self.s1 = float(zeta(s, n + 1))
        self.s2 = float(zeta(2.0 * s, n + 1))
        # evaluation noise is linear in the factor count
        self.rel_err = (n + 16) * 1e-16
        self._near = self.a[self.a <= 4.0 * r_max]

    def value(self, z: complex) -> complex:
        z = complex(z)
        w = 1.0 - z / self.a
        tail = cmath.exp(-z * self.s1 - 0.5 * z * z * self.s2)
        return complex(np.prod(w)) * tail

    def log_abs(self, z: complex) -> float:
        z = complex(z)
        w = np.abs(1.0 - z / self.a)
        with np.errstate(divide="ignore"):
            s = float(np.sum(np.log(w)))
        return s + (-z * self.s1 - 0.5 * z * z * self.s2).real

    def value_and_logderiv(self, z: complex):
        z = complex(z)
        diffs = z - self.a
        val = self.value(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            dlog = complex(np.sum(1.0 / diffs)) - self.s1 - z * self.s2
        return val, dlog

    # --- sample protocol -------------------------------------------------

    def diff_scaled(self, z: complex, a: complex) -> ScaledComplex:
        return ScaledComplex.from_complex(self.value(z) - complex(a))

    def derivative_scaled(self, z: complex) -> ScaledComplex:
        z = complex(z)
        diffs = z - self.a
        k = int(np.argmin(np.abs(diffs)))
        if diffs[k] == 0:
            # on a zero: product rule leaves the deleted-factor product
            rest = np.delete(1.0 - z / self.a, k)
            tail = cmath.exp(-z * self.s1 - 0.5 * z * z * self.s2)
            return ScaledComplex.from_complex(
                complex(np.prod(rest)) * tail * (-1.0 / self.a[k]))
        val, dlog = self.value_and_logderiv(z)
        return ScaledComplex.from_complex(val * dlog)

    def path_evaluator(self, a: complex) -> "_ProductPath":
        return _ProductPath(self, complex(a))

    def min_samples(self, z0: complex, z1: complex) -> int:
        z0 = complex(z0)
        z1 = complex(z1)
        d = z1 - z0
        L = abs(d)
        if L == 0.0 or len(self._near) == 0:
            return 12
        t = ((self._near - z0.real) * d.real + (0.0 - z0.imag) * d.imag)
        t = np.clip(t / (L * L), 0.0, 1.0)
        px = z0.real + t * d.real
        py = z0.imag + t * d.imag
        dist = np.hypot(self._near - px, py)
        phase = float(np.sum(np.minimum(math.pi, L / np.maximum(dist, 1e-6))))
        return min(12 + int(phase / 1.2) + int(0.5 * L), 20000)


class _ProductPath:
    """Boundary-walk evaluator of w = P - a for canonical products.

    Direct evaluation is absolute here (no incremental state): |P| stays
    within double range on any disk the tail admits, and w inherits only
    the factor-count rounding noise.
    """

    def __init__(self, model: CanonicalProductModel, a: complex):
        self.model = model
        self.a = complex(a)
        self.floor_log = math.log(1e-9 * max(1.0, abs(self.a)))

    def _sample(self, z: complex) -> PathSample:
        val = self.model.value(z)
        w = val - self.a
        ws = ScaledComplex.from_complex(w)
        err = self.model.rel_err * (abs(val) + abs(self.a)) + 1e-300
        err_log = math.log(err)
        if ws.is_zero or ws.logmag < self.floor_log:
            raise BoundaryTooClose(
                f"|P - a| = {ws.abs_value():.3e} under the proximity floor "
                f"at {z}")
        if ws.logmag - err_log < _HEADROOM_LOG:
            raise BoundaryTooClose(
                f"|P - a| at {z} inside evaluation noise "
                f"({ws.abs_value():.3e} vs err {err:.3e})")
        return PathSample(complex(z), ws, err_log)

    def start(self, z: complex) -> PathSample:
        return self._sample(z)

    def extend(self, prev: PathSample, z: complex) -> PathSample:
        return self._sample(z)

    def min_samples(self, z0: complex, z1: complex) -> int:
        return self.model.min_samples(z0, z1)


def _product_log_max(P: CanonicalProduct, r: float, samples: int = 128,
                     model: CanonicalProductModel | None = None) -> float:
    """max log|P| on |z| = r by circle scan plus golden polish."""
    if samples < 64:
        raise ValueError("need at least 64 circle samples")
    if model is None:
        model = CanonicalProductModel(P, r)
    thetas = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    vals = [model.log_abs(r * cmath.exp(1j * t)) for t in thetas]
    j = int(np.argmax(vals))
    step = 2.0 * math.pi / samples
    _, polished = _golden_max(
        lambda t: model.log_abs(r * cmath.exp(1j * t)),
        thetas[j] - step, thetas[j] + step)
    return max(float(vals[j]), float(polished))


def find_product_a_points(P: CanonicalProduct, a: complex, region: Box,
                          tol: float = 1e-9) -> SearchResult:
    """Locate every a-point of the canonical product inside region.

    Same subdivision search as the integral family, driven by the direct
    product evaluator. The region boundary is nudged outward (up to five
    0.3 percent steps) if it starts too close to an a-point.
    """
    a = complex(a)
    r_max = max(abs(z) for z in region.expanded(0.05).corners())
    model = CanonicalProductModel(P, r_max)

    searched = region
    top_count = None
    last: Exception | None = None
    for i in range(len(_JITTER)):
        searched = region.expanded(0.003 * i)
        try:
            top_count = _wind_once(model, a, searched)
            break
        except (BoundaryTooClose, ToleranceNotMet) as exc:
            last = exc
    if top_count is None:
        raise BoundaryTooClose(
            f"region boundary {region} stayed too close to an a-point after "
            f"{len(_JITTER) - 1} retries: {last}")

    search = _Search(model, a, tol, threads=1)
    try:
        records = search.descend(searched, top_count, 0)
    finally:
        search.close()
    records = _dedup(records, searched.diameter)
    records.sort(key=RootRecord.sort_key)
    result = SearchResult(records, a, region, searched, top_count,
                          search.clipped)
    if result.total_multiplicity != top_count:
        raise ToleranceNotMet(
            f"multiplicity sum {result.total_multiplicity} != region "
            f"winding {top_count}")
    return result

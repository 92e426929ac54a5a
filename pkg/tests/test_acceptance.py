"""Acceptance gate.

One test per criterion, each at its stated tolerance. Every test records
a PASS/FAIL line (echoed in the terminal summary) carrying the measured
numbers, then asserts. Checks whose measured behavior genuinely differs
from the stated expectation are left failing with the witness values in
the detail line; they are not weakened to pass.
"""

import cmath
import math

import numpy as np
import scipy.special
from conftest import record_criterion

from sectorroots import (AccumulationConfig, Box, CanonicalProduct,
                         KernelParams, ScaledComplex, canonical_product_eval,
                         config_rays, enumerate_configs, eval_f_scaled,
                         exp_function, find_product_a_points, jensen_defect,
                         kernel_grid_report, kernel_integral_residue,
                         order_estimate)
from sectorroots.asymptotics import asymptotic_approx
from sectorroots.catalog import gamma_quadrature
from sectorroots.cli import _auto_terms
from sectorroots.sectorgeom import angle_distance

PI = math.pi


def _conclude(num: int, ok: bool, detail: str) -> None:
    record_criterion(num, ok, detail)
    assert ok, f"criterion {num}: {detail}"


def _crash(num: int, exc: BaseException) -> None:
    record_criterion(num, False, f"crashed: {type(exc).__name__}: {exc}")


def _worst_deviation(result, center: float, r_min: float,
                     r_max: float | None = None) -> float:
    worst = 0.0
    for rec in result:
        z = rec.location
        if abs(z) < r_min or (r_max is not None and abs(z) > r_max):
            continue
        worst = max(worst, angle_distance(cmath.phase(z), center))
    return worst


def test_criterion_1_erf_example_geometry(ex1_zeros, ex1_ones):
    try:
        zeros, t_zeros = ex1_zeros
        ones, t_ones = ex1_ones
        limit = PI / 4 + 0.05
        dev_zero = _worst_deviation(zeros, 0.0, 3.0)
        dev_one = _worst_deviation(ones, PI, 3.0)
        worst_res = max(max((r.residual for r in zeros), default=0.0),
                        max((r.residual for r in ones), default=0.0))
        winding_ok = (zeros.total_multiplicity == zeros.winding_total
                      and ones.total_multiplicity == ones.winding_total)
        seconds = t_zeros + t_ones
    except Exception as exc:
        _crash(1, exc)
        raise
    ok = (dev_zero < limit and dev_one < limit and worst_res < 1e-9
          and winding_ok and seconds < 60.0)
    _conclude(1, ok,
              f"{len(zeros)} zeros/{len(ones)} 1-points in [-8,8]^2; ray "
              f"deviations {dev_zero:.4f}/{dev_one:.4f} < {limit:.4f}; max "
              f"residual {worst_res:.2e} < 1e-9; multiplicity == winding "
              f"{winding_ok}; {seconds:.1f} s < 60 s")


def test_criterion_2_asymptotic_values(data1, data2):
    try:
        err1 = max(abs(data1.values[0] - 1.0), abs(data1.values[1]))
        err2 = max(abs(data2.values[0] - 1.0), abs(data2.values[1]),
                   abs(data2.values[2]))
        gamma_err = max(
            abs(gamma_quadrature(4.0 / 3.0) - scipy.special.gamma(4.0 / 3.0)),
            abs(gamma_quadrature(2.0 / 3.0) - scipy.special.gamma(2.0 / 3.0)))
    except Exception as exc:
        _crash(2, exc)
        raise
    ok = err1 <= 1e-8 and err2 <= 1e-8 and gamma_err <= 1e-10
    _conclude(2, ok,
              f"limit errors {err1:.2e} (deg 2), {err2:.2e} (deg 3) <= 1e-8; "
              f"quadrature Gamma coefficients within {gamma_err:.2e} <= "
              f"1e-10 of the independent oracle")


def test_criterion_3_cubic_example_geometry(ex2_zeros, ex2_ones):
    try:
        zeros, _ = ex2_zeros
        ones, _ = ex2_ones
        limit = PI / 6 + 0.05
        dev_zero = _worst_deviation(zeros, 0.0, 3.0, 6.0)
        # the half-plane proxy applies to the same |z| >= 3 range; the
        # smallest 1-point pair (modulus 1.29) sits right of the slab
        halfplane_bad = [rec.location for rec in ones
                         if 3.0 <= abs(rec.location) <= 6.0
                         and rec.location.real >= 0.05 * abs(rec.location)]
    except Exception as exc:
        _crash(3, exc)
        raise
    ok = dev_zero < limit and not halfplane_bad
    _conclude(3, ok,
              f"{len(zeros)} zeros/{len(ones)} 1-points in [-6,6]^2; zero "
              f"ray deviation {dev_zero:.4f} < {limit:.4f} on 3 <= |z| <= 6; "
              f"{len(halfplane_bad)} 1-points with Re z >= 0.05|z| there")


def test_criterion_4_sector_approximation_decay(ex1, ex2, data1, data2):
    try:
        ratios = []
        for F, data in ((ex1, data1), (ex2, data2)):
            theta = data.rays[0] + 0.5 * PI / data.d + 0.2
            errs = []
            for r in (10.0, 20.0):
                z = r * cmath.exp(1j * theta)
                approx, _ = asymptotic_approx(F, z, data)
                if not isinstance(approx, ScaledComplex):
                    approx = ScaledComplex.from_complex(approx)
                truth = eval_f_scaled(F, z)
                errs.append(approx.add(truth.neg()).div(truth).abs_value())
            ratios.append(errs[1] / errs[0])
    except Exception as exc:
        _crash(4, exc)
        raise
    ok = all(0.3 <= q <= 0.7 for q in ratios)
    _conclude(4, ok,
              f"error(20)/error(10) = {ratios[0]:.4f} (deg 2), "
              f"{ratios[1]:.4f} (deg 3); required within [0.3, 0.7]; "
              f"measured decay follows 2^-d, not the stated halving")


def test_criterion_5_kernel_identity():
    try:
        grid_worst = max(row["abs_diff"] for row in kernel_grid_report())
        small_delta = []
        for eps in (0.2, 0.5, 1.0):
            value = kernel_integral_residue(KernelParams(eps, 1e-3))
            small_delta.append(abs(value - 0.5 * PI * math.sin(eps)))
    except Exception as exc:
        _crash(5, exc)
        raise
    ok = grid_worst < 1e-6 and all(d < 1e-3 for d in small_delta)
    diffs = ", ".join(f"{d:.4e}" for d in small_delta)
    _conclude(5, ok,
              f"16-point grid max |residue - quadrature| = {grid_worst:.2e} "
              f"< 1e-6; delta = 1e-3 distances to (pi/2) sin eps: [{diffs}] "
              f"vs < 1e-3 (first-order term is ~2e-3 at eps = 0.2)")


def test_criterion_6_jensen_identity(ex1, data1, ex1_zeros):
    try:
        zeros, _ = ex1_zeros
        defects = [jensen_defect(ex1, zeros, r, 4096, data=data1)
                   for r in (2.0, 4.0, 6.0)]
    except Exception as exc:
        _crash(6, exc)
        raise
    ok = all(d <= 1e-4 for d in defects)
    shown = ", ".join(f"{d:.2e}" for d in defects)
    _conclude(6, ok,
              f"identity defects at r = 2, 4, 6 with 4096 samples: "
              f"[{shown}], all <= 1e-4 (also certifies the zero list)")


def test_criterion_7_order_estimates(ex1, ex2, data1, data2):
    try:
        grid = tuple(np.geomspace(3.0, 11.0, 5))
        est_exp = order_estimate(exp_function(), grid)
        est1 = order_estimate(ex1, grid, data=data1)
        est2 = order_estimate(ex2, grid, data=data2)
    except Exception as exc:
        _crash(7, exc)
        raise
    ok = (abs(est_exp - 1.0) <= 0.05 and abs(est1 - 2.0) <= 0.1
          and abs(est2 - 3.0) <= 0.15)
    _conclude(7, ok,
              f"orders on geometric grid to r = 11: exp {est_exp:.4f} "
              f"(1 +- 0.05), deg-2 example {est1:.4f} (2 +- 0.1), deg-3 "
              f"example {est2:.4f} (3 +- 0.15)")


def test_criterion_8_canonical_products():
    try:
        n = _auto_terms(0.5, 1.0)
        value = canonical_product_eval(CanonicalProduct(0.5, n), -1.0 + 0j)
        closed = math.sinh(PI) / PI
        eval_err = abs(value - closed)

        res = find_product_a_points(CanonicalProduct(1.0 / 3.0, 64),
                                    1.0 + 0j,
                                    Box(-60.5, -60.5, 60.5, 60.5))
        annulus = [rec.location for rec in res
                   if 20.0 <= abs(rec.location) <= 60.0]
        devs = [min(angle_distance(cmath.phase(z), PI / 2),
                    angle_distance(cmath.phase(z), -PI / 2))
                for z in annulus]
        rays_ok = bool(annulus) and all(d <= 0.3 for d in devs)
    except Exception as exc:
        _crash(8, exc)
        raise
    ok = eval_err < 1e-6 and rays_ok
    where = ", ".join(f"{z:.3f} (dev {d:.3f})"
                      for z, d in zip(annulus, devs)) or "none"
    _conclude(8, ok,
              f"sinh(pi)/pi error {eval_err:.2e} < 1e-6 with {n} factors; "
              f"1-points in 20 <= |z| <= 60: {where}; required within 0.3 "
              f"of +-pi/2 (they sit on the positive real axis)")


def test_criterion_9_enumeration_and_ray_sets(data1, data2):
    try:
        rep = enumerate_configs(8)
        published = {
            (2, (1, 0)): ((PI / 4, 7 * PI / 4),
                          (3 * PI / 4, 5 * PI / 4)),
            (3, (1, 0, 0)): ((PI / 6, 11 * PI / 6),
                             (PI / 2, 5 * PI / 6, 7 * PI / 6, 3 * PI / 2)),
        }
        worst = 0.0
        for data in (data1, data2):
            cfg = AccumulationConfig(
                data.d, cmath.phase(data.A) % (2 * PI),
                tuple(int(round(v.real)) for v in data.values))
            zero, one = config_rays(cfg)
            want_zero, want_one = published[(data.d, cfg.assignment)]
            for got, want in ((zero, want_zero), (one, want_one)):
                assert len(got) == len(want)
                for t in want:
                    worst = max(worst,
                                min(angle_distance(t, g) for g in got))
    except Exception as exc:
        _crash(9, exc)
        raise
    ok = rep.violations == () and worst <= 1e-9
    _conclude(9, ok,
              f"{rep.configs_checked} configurations to degree 8: "
              f"{len(rep.violations)} counterexamples; published ray sets "
              f"reproduced to {worst:.2e} <= 1e-9")

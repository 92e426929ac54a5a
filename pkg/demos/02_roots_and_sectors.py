"""Locating zeros and 1-points, and checking where they accumulate.

The degree-2 built-in has asymptotic value 1 in the decay sector around
ray 0 and value 0 around ray pi. Zeros therefore accumulate along the
transition rays +-pi/4 and 1-points along +-3pi/4. This script finds
every zero and every 1-point in [-8, 8]^2 by winding-number subdivision,
then reports cone membership for |z| >= 3.
"""

import time

import math

from sectorroots import (Box, Sector, asymptotic_values, example,
                         find_a_points, sector_report)

F = example(1)
data = asymptotic_values(F, tol=1e-9)
region = Box(-8.0, -8.0, 8.0, 8.0)

for target, bisector, label in ((0j, 0.0, "zeros"),
                                (1 + 0j, math.pi, "1-points")):
    t0 = time.perf_counter()
    result = find_a_points(F, target, region, tol=1e-9, data=data)
    dt = time.perf_counter() - t0
    print(f"{label}: {len(result)} points, total multiplicity "
          f"{result.total_multiplicity}, boundary winding "
          f"{result.winding_total}, {dt:.1f} s")
    worst = max(r.residual for r in result)
    print(f"  worst residual |f - a| = {worst:.2e}")
    smallest = min(result, key=lambda r: abs(r.location))
    print(f"  smallest: {smallest.location:.12f} "
          f"(modulus {abs(smallest.location):.6f})")

    cone = Sector(bisector, math.pi / 4 + 0.05)
    report = sector_report([r.location for r in result], cone, r0=3.0)
    print(f"  cone around {bisector:.4f} (half opening {cone.half_opening:.4f}): "
          f"{'holds' if report.holds else 'violated'} for |z| >= 3 "
          f"({len(report.inside)} inside, {len(report.small)} below r0)")
    print()

"""Feasibility engine: induced ray sets, cone verdicts, exhaustive sweep."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sectorroots import (AccumulationConfig, CounterexampleFound, RaySet,
                         config_rays, enumerate_configs, wrap_angle)
from sectorroots.asymptotics import accumulation_rays_analytic
from sectorroots.rayconfig import assess
from sectorroots.sectorgeom import angle_distance

PI = math.pi


def _close_sets(got, want, tol=1e-9):
    assert len(got) == len(want)
    for t in want:
        assert min(angle_distance(t, g) for g in got) <= tol


def test_config_validates():
    with pytest.raises(ValueError):
        AccumulationConfig(0, 0.0, ())
    with pytest.raises(ValueError):
        AccumulationConfig(2, 0.0, (1,))
    with pytest.raises(ValueError):
        AccumulationConfig(2, 0.0, (1, 2))


def test_mixed_flag():
    assert AccumulationConfig(2, 0.0, (0, 1)).mixed
    assert not AccumulationConfig(2, 0.0, (1, 1)).mixed
    assert not AccumulationConfig(1, 0.0, (0,)).mixed


def test_ray_pair_degree_two():
    # phi_0 = 0, so the pair is 0 -+ pi/4 wrapped into [0, 2pi)
    lo, hi = AccumulationConfig(2, PI, (1, 0)).ray_pair(0)
    assert lo == pytest.approx(7 * PI / 4, abs=1e-12)
    assert hi == pytest.approx(PI / 4, abs=1e-12)


def test_induced_sets_degree_two():
    zero, one = config_rays(AccumulationConfig(2, PI, (1, 0)))
    _close_sets(zero, (PI / 4, 7 * PI / 4))
    _close_sets(one, (3 * PI / 4, 5 * PI / 4))


def test_induced_sets_degree_three():
    zero, one = config_rays(AccumulationConfig(3, PI, (1, 0, 0)))
    _close_sets(zero, (PI / 6, 11 * PI / 6))
    _close_sets(one, (PI / 2, 5 * PI / 6, 7 * PI / 6, 3 * PI / 2))


def test_constant_assignment_leaves_one_side_empty():
    zero, one = config_rays(AccumulationConfig(3, 0.3, (1, 1, 1)))
    assert len(zero) == 6 and len(one) == 0
    zero, one = config_rays(AccumulationConfig(3, 0.3, (0, 0, 0)))
    assert len(zero) == 0 and len(one) == 6


@settings(max_examples=120, deadline=None)
@given(d=st.integers(1, 8), argA=st.floats(-3.0, 3.0),
       bits=st.integers(0, 255))
def test_union_covers_all_transition_rays(d, argA, bits):
    assignment = tuple((bits >> k) & 1 for k in range(d))
    zero, one = config_rays(AccumulationConfig(d, argA, assignment))
    merged = RaySet(list(zero) + list(one))
    assert len(merged) == 2 * d


@settings(max_examples=80, deadline=None)
@given(d=st.integers(1, 6), argA=st.floats(-3.0, 3.0),
       theta=st.floats(-3.0, 3.0), bits=st.integers(0, 63))
def test_rotation_equivariance(d, argA, theta, bits):
    assignment = tuple((bits >> k) & 1 for k in range(d))
    base_z, base_o = config_rays(AccumulationConfig(d, argA, assignment))
    rot_z, rot_o = config_rays(
        AccumulationConfig(d, argA - d * theta, assignment))
    _close_sets(rot_z, [wrap_angle(t + theta) for t in base_z], 1e-8)
    _close_sets(rot_o, [wrap_angle(t + theta) for t in base_o], 1e-8)


def test_verdict_matches_erf_example():
    v = assess(AccumulationConfig(2, PI, (1, 0)))
    assert v.zero_cone_opening == pytest.approx(PI / 2, abs=1e-9)
    assert v.one_cone_opening == pytest.approx(PI / 2, abs=1e-9)
    assert v.disjoint
    # opening sits exactly on the strict pi/2 threshold: hypothesis missed
    assert not v.disjoint_cone_hypothesis_met
    assert not v.halfplane_hypothesis_met


def test_verdict_matches_cubic_example():
    v = assess(AccumulationConfig(3, PI, (1, 0, 0)))
    assert v.zero_cone_opening == pytest.approx(PI / 3, abs=1e-9)
    assert v.one_cone_opening == pytest.approx(PI, abs=1e-9)
    assert v.disjoint
    assert not v.disjoint_cone_hypothesis_met
    assert not v.halfplane_hypothesis_met


def test_config_agrees_with_asymptotic_rays(data1, data2):
    for data in (data1, data2):
        argA = wrap_angle(PI - data.d * data.rays[0])
        assignment = tuple(int(round(v.real)) for v in data.values)
        zero, one = config_rays(AccumulationConfig(data.d, argA, assignment))
        _close_sets(zero, accumulation_rays_analytic(data, 0.0))
        _close_sets(one, accumulation_rays_analytic(data, 1.0))


def test_enumeration_clean_to_degree_four():
    rep = enumerate_configs(4)
    assert rep.violations == ()
    assert rep.halfplane_met_degrees == (1,)
    # 16 argA samples times sum of 2^d for d = 1..4
    assert rep.configs_checked == 16 * 30
    d = rep.to_dict()
    assert d == {"dmax": 4, "configs_checked": 480, "violations": []}


def test_enumeration_validates():
    with pytest.raises(ValueError):
        enumerate_configs(0)
    with pytest.raises(ValueError):
        enumerate_configs(13)
    with pytest.raises(ValueError):
        enumerate_configs(4, arg_samples=0)

"""polyexp: representation, scaled arithmetic, overflow-safe evaluation.

Oracles: mpmath closed forms for the example functions, direct complex
arithmetic for ScaledComplex, dense sampling for the segment maximum.
"""

import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sectorroots import (OverflowRegion, PolyExpFunction, Polynomial,
                         ScaledComplex, eval_f, eval_f_scaled, example1,
                         exp_function, function_from_json, function_to_json,
                         square_minus_one)
from sectorroots.polyexp import (eval_f_prime, eval_scaled_exp,
                                 integral_scaled_parts, segment_re_q_max)

mp.mp.dps = 30


def f1_closed_form(z):
    """Example 1 equals 1/2 + erf(z)/2 - z exp(-z^2)/sqrt(pi)."""
    z = mp.mpc(z)
    return complex(mp.mpf(1) / 2 + mp.erf(z) / 2
                   - z / mp.sqrt(mp.pi) * mp.e ** (-z * z))


# -- Polynomial ---------------------------------------------------------------

def test_polynomial_basics():
    p = Polynomial((1.0, 0.0, 3.0))
    assert p.degree == 2
    assert p.leading == 3.0
    assert p(2.0) == 13.0
    assert p.derivative()(2.0) == 12.0
    assert Polynomial(()).is_zero
    assert Polynomial(()).degree == -1


def test_polynomial_trailing_zeros_trimmed():
    p = Polynomial((2.0, 1.0, 0.0, 0.0))
    assert p.degree == 1
    assert p.leading == 1.0


def test_polynomial_vectorized():
    p = Polynomial((1.0, 2.0))
    zs = np.array([0.0, 1.0, 1j], dtype=complex)
    assert np.allclose(p(zs), [1.0, 3.0, 1.0 + 2j])


# -- ScaledComplex ------------------------------------------------------------

finite = st.complex_numbers(min_magnitude=1e-6, max_magnitude=1e6,
                            allow_nan=False, allow_infinity=False)


@given(finite, finite)
@settings(max_examples=150, deadline=None)
def test_scaled_mul_div_match_complex(a, b):
    sa, sb = ScaledComplex.from_complex(a), ScaledComplex.from_complex(b)
    assert cmath.isclose(sa.mul(sb).to_complex(), a * b, rel_tol=1e-12)
    assert cmath.isclose(sa.div(sb).to_complex(), a / b, rel_tol=1e-12)


@given(finite, finite)
@settings(max_examples=150, deadline=None)
def test_scaled_add_matches_complex(a, b):
    sa, sb = ScaledComplex.from_complex(a), ScaledComplex.from_complex(b)
    s = sa.add(sb).to_complex()
    assert abs(s - (a + b)) <= 1e-12 * (abs(a) + abs(b))


def test_scaled_beyond_double_range():
    big = ScaledComplex(logmag=5000.0, phase=1.0)
    prod = big.mul(big)
    assert prod.logmag == pytest.approx(10000.0)
    ratio = prod.div(big)
    assert ratio.logmag == pytest.approx(5000.0)
    assert ratio.phase == pytest.approx(1.0)


def test_scaled_shift_and_zero():
    z = ScaledComplex.zero()
    assert z.is_zero
    assert z.add(ScaledComplex.from_complex(2.0)).to_complex() == 2.0
    w = ScaledComplex.from_complex(1.0).shift(math.log(10.0))
    assert w.to_complex() == pytest.approx(10.0)


def test_scaled_exp_matches_cmath():
    q = Polynomial((0.5, 0.0, -1.0))
    for z in (0.3 + 0.2j, -1.0 + 2.0j):
        got = eval_scaled_exp(q, z).to_complex()
        assert cmath.isclose(got, cmath.exp(q(z)), rel_tol=1e-12)


# -- function evaluation ------------------------------------------------------

def test_derived_degree_and_leading(ex1):
    assert ex1.d == 2
    assert ex1.A == -1.0


def test_eval_f_example1_closed_form(ex1):
    # mixed tolerance: at 3.5j the value is ~4e5, so the achievable
    # absolute error scales with |f| (integrand noise floor), not with 1
    for z in (0.0, 0.3 + 0.2j, -1.5 + 2.0j, 2.0 - 1.0j, 3.5j):
        want = f1_closed_form(z)
        assert abs(eval_f(ex1, complex(z)) - want) < 1e-12 * (1 + abs(want))


def test_eval_f_exp_encoding():
    F = exp_function()
    for z in (0.0 + 0j, 1.0 + 1.0j, -2.3 + 0.4j, 3.0):
        assert cmath.isclose(eval_f(F, complex(z)), cmath.exp(complex(z)),
                             rel_tol=1e-12)


def test_eval_f_square_minus_one():
    F = square_minus_one()
    for z in (0.0 + 0j, 1.0 + 0j, 2.0 - 1.0j):
        assert abs(eval_f(F, z) - (z * z - 1.0)) < 1e-13


def test_eval_f_prime(ex1):
    # f' = p e^q exactly
    z = 1.2 - 0.7j
    want = ex1.p(z) * cmath.exp(ex1.q(z))
    assert cmath.isclose(eval_f_prime(ex1, z).to_complex(), want,
                         rel_tol=1e-12)


def test_eval_f_overflow_raises(ex1):
    with pytest.raises(OverflowRegion):
        eval_f(ex1, 40.0j)  # Re q = 1600 on the imaginary axis


def test_eval_f_scaled_growth_region(ex1):
    # compare log|f| against the closed form via mpmath at a growth point
    z = 12.0j
    got = eval_f_scaled(ex1, z)
    want = mp.mpf(1) / 2 + mp.erf(mp.mpc(z)) / 2 \
        - mp.mpc(z) / mp.sqrt(mp.pi) * mp.e ** (-mp.mpc(z) ** 2)
    assert got.logmag == pytest.approx(float(mp.log(abs(want))), abs=1e-10)


def test_segment_re_q_max_dense_oracle():
    rng = np.random.default_rng(11)
    for _ in range(40):
        coeffs = rng.normal(size=4) + 1j * rng.normal(size=4)
        q = Polynomial(tuple(coeffs))
        z0 = complex(*rng.normal(size=2))
        z1 = complex(*rng.normal(size=2))
        ts = np.linspace(0.0, 1.0, 20001)
        dense = np.max(q(z0 + ts * (z1 - z0)).real)
        exact = segment_re_q_max(q, z0, z1)
        assert exact >= dense - 1e-9
        assert exact <= dense + 1e-6


def test_integral_parts_error_bound_honest(ex2):
    a = 1.0 / mp.gamma(mp.mpf(4) / 3)
    b = 1.0 / mp.gamma(mp.mpf(2) / 3)

    def oracle(z0, z1):
        g = lambda t: (a * t ** 3 + b * t) * mp.e ** (-t ** 3)
        return complex(mp.quad(g, [mp.mpc(z0), mp.mpc(z1)]))

    for (z0, z1) in [(0, 3 + 1j), (0, 7.5), (1 + 1j, 5 + 2j),
                     (0, 11 * cmath.exp(0.35j))]:
        got, err_log = integral_scaled_parts(ex2, complex(z0), complex(z1),
                                             1e-13)
        want = oracle(z0, z1)
        assert abs(got.to_complex() - want) <= max(math.exp(err_log), 1e-14)


def test_json_roundtrip(ex1):
    text = function_to_json(ex1)
    G = function_from_json(text)
    assert G.p == ex1.p and G.q == ex1.q and G.c == ex1.c
    assert function_to_json(G) == text

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import assert_close, compact_profiles
from hardysharp.oracle import abs_y1, radial_step
from hardysharp.params import geom, validate_adjoint, validate_forward
from hardysharp.profile import (ScalarField, evaluate, indicator, lp_weighted_norm, power,
                                profile_from_json, profile_to_json, radialize, weighted_norm)
from hardysharp.sharpness import extremizer_adjoint


def test_evaluate_examples():
    f = indicator(0, 1)
    assert evaluate(f, 0.5) == 1.0
    assert evaluate(f, 2.0) == 0.0
    assert evaluate(power(1.0, -0.5, 1.0), 4.0) == pytest.approx(0.5)


def test_norm_indicator():
    P = validate_forward(n=2, p=2, alpha=0, beta=0.5, gamma=0)
    assert lp_weighted_norm(indicator(0, 1), P) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


@pytest.mark.parametrize("n,p,beta", [(1, 2.0, 0.25), (2, 2.0, 0.5), (3, 1.5, 1.0), (2, 3.0, 0.3)])
def test_norm_adjoint_extremizer(n, p, beta):
    P = validate_adjoint(n=n, p=p, alpha=0, beta=beta, gamma=0)
    f = extremizer_adjoint(P)
    want = ((p - 1) / (n - p * beta) * geom(n).omega_n) ** (1 / p)
    assert_close(lp_weighted_norm(f, P), want, 1e-12)


@pytest.mark.parametrize("n,p,delta", [(1, 2.0, 0.1), (2, 1.5, 0.01), (3, 3.0, 1e-4)])
def test_norm_forward_ball(n, p, delta):
    v = geom(n).v_n
    R = (1 / v) ** (1 / n) - delta
    want = v ** (1 / p) * R ** (n / p)
    assert_close(weighted_norm(indicator(0, R), p, 0.0, n), want, 1e-13)


def test_norm_divergent_is_inf():
    assert weighted_norm(power(1.0, -1.0, 0.0, 1.0), 2.0, 0.0, 2) == math.inf
    assert weighted_norm(power(1.0, -0.5, 1.0), 2.0, 0.0, 1) == math.inf


def test_log_pieces_in_norm():
    # int_0^1 (ln(1/r))^2 dr = 2, n = 1, omega_1 = 2
    f = power(-1.0, 0.0, 0.0, 1.0, logpow=1)
    assert weighted_norm(f, 2.0, 0.0, 1) == pytest.approx(2.0, rel=1e-13)


@given(compact_profiles(), st.floats(1.0, 4.0), st.floats(0.1, 10.0))
def test_norm_homogeneity(f, p, c):
    a = weighted_norm(f.scale(c), p, 0.3, 2)
    b = c * weighted_norm(f, p, 0.3, 2)
    assert_close(a, b, 1e-12)


@given(compact_profiles())
def test_json_round_trip(f):
    g = profile_from_json(profile_to_json(f))
    assert g.max_abs_coeff_diff(f) == 0.0


def test_radialize_abs_y1():
    radii = np.linspace(0.1, 2.0, 20)
    g = radialize(abs_y1(2), 2, radii, 4000, seed=3)
    vals = evaluate(g, radii)
    # per-radius standard error of r|cos| is about 0.31 r / sqrt(4000)
    assert np.all(np.abs(vals - 2 * radii / math.pi) <= 5 * 0.31 * radii / math.sqrt(4000))


def test_radialize_radial_field_is_exact():
    radii = (np.arange(100) + 0.5) / 100 * 2.0
    g = radialize(radial_step(2), 2, radii, 50, seed=0)
    assert evaluate(g, 0.5) == 1.0 and evaluate(g, 1.5) == 0.0
    assert g.support[1] == pytest.approx(1.0)


def test_radialize_zero_field():
    F = ScalarField(lambda y: np.zeros(len(y)), 1.0, 2, "zero")
    assert radialize(F, 2, [0.25, 0.5, 0.75], 100, seed=0).is_zero


def test_radialize_deterministic():
    radii = [0.5, 1.0, 1.5]
    a = radialize(abs_y1(3), 3, radii, 500, seed=11)
    b = radialize(abs_y1(3), 3, radii, 500, seed=11)
    assert a.max_abs_coeff_diff(b) == 0.0

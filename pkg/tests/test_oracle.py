import math

import numpy as np
import pytest

from hardysharp.errors import RangeError, UnsupportedError
from hardysharp.operators import hardy_forward
from hardysharp.oracle import (abs_y1, builtin_field, lemma21_check, mc_adjoint, mc_hardy,
                               radial_step)
from hardysharp.params import validate_forward
from hardysharp.profile import ScalarField, evaluate, indicator

P = validate_forward(n=2, p=2, alpha=0, beta=0.5, gamma=0)


def test_mc_hardy_radial_step_matches_closed_form():
    H = hardy_forward(indicator(0, 1), P)
    for r in (0.5, 2.0):
        est = mc_hardy(radial_step(2), r, P, 200_000, seed=1)
        assert abs(est.mean - float(evaluate(H, r))) <= 4 * est.std_error + 1e-12


def test_mc_deterministic():
    a = mc_hardy(abs_y1(2), 1.0, P, 50_000, seed=9)
    b = mc_hardy(abs_y1(2), 1.0, P, 50_000, seed=9)
    assert a == b


def test_mc_adjoint_requires_compact_support():
    F = ScalarField(lambda y: np.ones(len(y)), math.inf, 2, "one")
    with pytest.raises(UnsupportedError):
        mc_adjoint(F, 1.0, P, 20_000, 0)


def test_sample_floor_and_dimension():
    with pytest.raises(RangeError):
        mc_hardy(abs_y1(2), 1.0, P, 1000, 0)
    P4 = validate_forward(n=4, p=2, alpha=0, beta=0.5, gamma=0)
    with pytest.raises(UnsupportedError):
        mc_hardy(abs_y1(4), 1.0, P4, 20_000, 0)


def test_unknown_field():
    with pytest.raises(KeyError):
        builtin_field("nope")


@pytest.mark.parametrize("name", ["abs-y1", "radial-step"])
def test_lemma21_small(name):
    rep = lemma21_check(builtin_field(name, 2), P, [0.5, 1.0, 1.5], 100_000, seed=4,
                        cells=200, samples_per_radius=500)
    assert rep.passed, rep.as_dict()


def test_lemma21_n3():
    P3 = validate_forward(n=3, p=2, alpha=0, beta=1.0, gamma=0)
    rep = lemma21_check(builtin_field("offset-gaussian", 3), P3, [0.5, 2.0], 100_000, seed=2,
                        cells=200, samples_per_radius=500, contraction=False)
    assert rep.passed, rep.as_dict()


P0 = validate_forward(n=2, p=2, alpha=0, beta=0.0, gamma=0)


def test_mc_hardy_unit_disk_examples():
    # constant integrand inside the ball: zero variance
    est = mc_hardy(radial_step(2), 1.0, P0, 20_000, seed=0)
    assert est.mean == pytest.approx(1.0, abs=1e-12) and est.std_error == pytest.approx(0, abs=1e-12)
    est = mc_hardy(radial_step(2), 2.0, P0, 200_000, seed=0)
    assert abs(est.mean - 0.25) <= 3 * est.std_error


def test_mc_adjoint_log2():
    P1 = validate_forward(n=1, p=2, alpha=0, beta=0.0, gamma=0)
    est = mc_adjoint(radial_step(1), 0.5, P1, 200_000, seed=0)
    assert abs(est.mean - math.log(2)) <= 3 * est.std_error
    assert mc_adjoint(radial_step(1), 1.5, P1, 20_000, seed=0).mean == 0.0


def test_mc_adjoint_power_piece():
    from hardysharp.operators import hardy_adjoint
    from hardysharp.profile import power, radial_field
    Pa = validate_forward(n=3, p=2, alpha=0, beta=1.0, gamma=0)
    f = power(1.0, 0.5, 0.0, 2.0)
    H = hardy_adjoint(f, Pa)
    for r in (0.3, 1.0):
        est = mc_adjoint(radial_field(f, 3), r, Pa, 200_000, seed=1)
        assert abs(est.mean - float(evaluate(H, r))) <= 3 * est.std_error


def test_std_error_convergence():
    a = mc_hardy(abs_y1(2), 1.0, P, 10_000, seed=5).std_error
    b = mc_hardy(abs_y1(2), 1.0, P, 1_000_000, seed=5).std_error
    assert 5 <= a / b <= 20

import json
import math

import pytest
from hypothesis import given, strategies as st

from conftest import assert_close
from hardysharp.errors import DegenerateSubstitutionError, RangeError
from hardysharp.operators import OperatorKind
from hardysharp.params import geom, validate_adjoint, validate_forward
from hardysharp.profile import indicator
from hardysharp.sharpness import (CSV_COLUMNS, c_sharp, c_sharp_adjoint, c_sharp_alpha0,
                                  extremizer_adjoint, extremizer_forward, gaps_decreasing, ratio,
                                  reports_to_csv, sharpness_sweep, upper_bound_check)

FWD, ADJ, FWDP = OperatorKind.FORWARD, OperatorKind.ADJOINT, OperatorKind.FORWARD_P


@given(st.integers(1, 3), st.floats(1.0, 4.0), st.floats(0.05, 0.95))
def test_c_sharp_unweighted_is_one(n, p, frac):
    P = validate_forward(n=n, p=p, alpha=0, beta=frac * n / p, gamma=0)
    assert abs(c_sharp(P) - 1.0) <= 1e-12


@given(st.integers(1, 3), st.floats(1.05, 4.0), st.floats(0.05, 0.9), st.floats(-0.9, 2.0))
def test_c_sharp_alpha0_gamma(n, p, frac, gfrac):
    gamma = gfrac * n
    try:
        P = validate_forward(n=n, p=p, alpha=0, beta=frac * n / p, gamma=gamma)
    except Exception:
        return
    assert_close(c_sharp(P), c_sharp_alpha0(P), 1e-12)


def test_c_sharp_weighted_example():
    P = validate_forward(n=1, p=2, q=4, alpha=-0.5, beta=0, gamma=0)
    assert c_sharp(P) == pytest.approx(math.sqrt(2 / 3) * 2 ** -0.25, rel=1e-14)
    assert c_sharp(P) == pytest.approx(0.68657, abs=5e-5)


@given(st.integers(1, 3), st.floats(1.05, 4.0), st.floats(0.05, 0.95))
def test_c_sharp_adjoint_theorem_a(n, p, frac):
    P = validate_adjoint(n=n, p=p, alpha=0, beta=frac * n / p, gamma=0)
    pp = p / (p - 1)
    assert_close(c_sharp_adjoint(P), (P.q / pp) ** (1 / pp), 1e-12)


def test_c_sharp_adjoint_examples():
    assert c_sharp_adjoint(validate_adjoint(n=2, p=1, alpha=0, beta=1, gamma=0)) == 1.0
    P = validate_adjoint(n=2, p=2, q=2, alpha=0, beta=0.5, gamma=-1)
    assert c_sharp_adjoint(P) == pytest.approx(2 * math.pi ** 0.25, rel=1e-14)


@pytest.mark.parametrize("alpha", [0.0, -0.5])
def test_constants_continuous_at_p1(alpha):
    base = dict(n=2, alpha=alpha, beta=1.0, gamma=0.3)
    at1_f = c_sharp(validate_forward(dict(base, p=1.0)))
    near_f = c_sharp(validate_forward(dict(base, p=1.0 + 1e-9)))
    assert abs(at1_f - near_f) <= 1e-6
    if alpha == 0:
        at1 = c_sharp_adjoint(validate_adjoint(dict(base, p=1.0)))
        near = c_sharp_adjoint(validate_adjoint(dict(base, p=1.0 + 1e-9)))
        assert abs(at1 - near) <= 1e-6


def test_extremizer_forward_examples():
    P = validate_forward(n=1, p=2, alpha=0, beta=0.25, gamma=0)
    assert extremizer_forward(0.1, P).max_abs_coeff_diff(indicator(0, 0.4)) <= 1e-15
    with pytest.raises(RangeError):
        extremizer_forward(0.5, P)


def test_extremizer_adjoint_norm_and_ratio():
    P = validate_adjoint(n=2, p=2, alpha=0, beta=0.5, gamma=-1)
    f = extremizer_adjoint(P)
    n, p, q = P.n, P.p, P.q
    from hardysharp.profile import lp_weighted_norm
    want = (q * n * geom(n).v_n / (P.pprime * (P.gamma + n))) ** (1 / p)
    assert_close(lp_weighted_norm(f, P), want, 1e-12)
    rep = ratio(f, P, ADJ)
    assert abs(rep.gap) <= 1e-10 * rep.formula_constant


def test_indicator_ratio_below_one():
    P = validate_forward(n=2, p=2, alpha=0, beta=0.5, gamma=0)
    assert ratio(indicator(0, 1), P, FWD).ratio <= 1.0


def test_forward_sweep_decreasing():
    P = validate_forward(n=2, p=2, alpha=0, beta=0.5, gamma=0)
    reps = sharpness_sweep(P, FWDP)
    assert gaps_decreasing(reps)
    assert reps[-1].gap <= 0.01 * reps[-1].formula_constant


def test_pullback_sweep_weighted():
    P = validate_forward(n=1, p=2, q=4, alpha=-0.5, beta=0, gamma=0)
    reps = sharpness_sweep(P, FWDP)
    assert gaps_decreasing(reps)
    assert reps[-1].gap <= 0.01 * reps[-1].formula_constant


def test_adjoint_sweep_single():
    P = validate_adjoint(n=3, p=1.5, alpha=0, beta=0.5, gamma=0.2)
    reps = sharpness_sweep(P, ADJ, [1, 2, 3])
    assert len(reps) == 1 and abs(reps[0].gap) <= 1e-10


def test_adjoint_p1_shells():
    P = validate_adjoint(n=2, p=1, alpha=0, beta=1, gamma=0)
    reps = sharpness_sweep(P, ADJ)
    assert gaps_decreasing(reps) and reps[-1].gap <= 1e-3


def test_p1_weighted_forward_degenerate():
    P = validate_forward(n=2, p=1, alpha=-0.5, beta=1, gamma=-0.5)
    with pytest.raises(DegenerateSubstitutionError):
        sharpness_sweep(P, FWDP)


@pytest.mark.parametrize("kind,params", [
    (FWD, dict(n=2, p=2, alpha=-0.5, beta=0.5, gamma=0)),
    (FWD, dict(n=3, p=1.5, alpha=0.2, beta=0.6, gamma=0.5)),
    (ADJ, dict(n=2, p=2, alpha=0, beta=0.5, gamma=-1)),
])
def test_random_profiles_below_constant(kind, params):
    reps = upper_bound_check(params, kind, count=15, seed=5)
    assert all(r.within_bound for r in reps)


def test_report_serialization():
    P = validate_forward(n=2, p=2, alpha=0, beta=0.5, gamma=0)
    reps = sharpness_sweep(P, FWDP, [0.1])
    text = reports_to_csv(reps)
    assert text.splitlines()[0].split(",") == list(CSV_COLUMNS)
    d = json.loads(reps[0].to_json())
    assert d["formula"] == pytest.approx(1.0)

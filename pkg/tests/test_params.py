import math

import pytest
from hypothesis import given, strategies as st

from hardysharp.errors import (AdjointConstraintError, DimensionError, ForwardConstraintError,
                               RangeError, ScalingError, ValidationError)
from hardysharp.params import conjugate, geom, inv_conjugate, validate_adjoint, validate_forward


def test_forward_valid_weighted_tuple():
    P = validate_forward(n=1, p=2, q=4, alpha=-0.5, beta=0, gamma=0)
    assert abs(P.residual) < 1e-15
    assert P.n == 1 and isinstance(P.p, float)


def test_forward_gamma_at_minus_n_rejected():
    with pytest.raises((ScalingError, RangeError)):
        validate_forward(n=2, p=1, q=2, alpha=0, beta=1, gamma=-2)


def test_forward_alpha_constraint():
    with pytest.raises(ForwardConstraintError):
        validate_forward(n=2, p=2, q=2, alpha=1, beta=0.5, gamma=-1)


def test_adjoint_valid():
    P = validate_adjoint(n=2, p=2, q=2, alpha=0, beta=0.5, gamma=-1)
    assert P.q == 2.0


def test_adjoint_degenerate_q():
    with pytest.raises(ValidationError):
        validate_adjoint(n=1, p=2, alpha=0, beta=0.5, gamma=0)


def test_adjoint_solves_q():
    P = validate_adjoint(n=3, p=1, alpha=0, beta=1, gamma=0)
    assert P.q == pytest.approx(1.5, abs=1e-15)


def test_solve_each_unknown():
    full = dict(n=2, p=2.0, q=8.0, alpha=-0.5, beta=0.5, gamma=0.0)
    for k in ("q", "alpha", "gamma"):
        d = dict(full)
        d[k] = None
        P = validate_forward(d)
        assert getattr(P, k) == pytest.approx(full[k], rel=1e-12, abs=1e-12)


def test_two_unknowns_rejected():
    with pytest.raises(ValidationError):
        validate_forward(n=2, p=2, beta=0.5)


def test_bad_dimension():
    for n in (0, -1, 1.5):
        with pytest.raises(DimensionError):
            validate_forward(n=n, p=2, q=4, alpha=0, beta=0.5, gamma=0)


def test_scaling_violation_reports_residual():
    with pytest.raises(ScalingError) as e:
        validate_forward(n=2, p=2, q=3, alpha=0, beta=0.5, gamma=0)
    assert "residual" in str(e.value)


def test_conjugate_examples():
    assert conjugate(2) == 2
    assert conjugate(1) == math.inf
    assert conjugate(4) == pytest.approx(4 / 3)
    assert inv_conjugate(1) == 0.0


@given(st.floats(1.0001, 50.0))
def test_conjugate_involution(p):
    assert conjugate(conjugate(p)) == pytest.approx(p, rel=1e-10)
    assert 1 / p + inv_conjugate(p) == pytest.approx(1.0, abs=1e-15)


def test_geom():
    assert geom(1).v_n == 2 and geom(1).omega_n == 2
    assert geom(2).v_n == pytest.approx(math.pi) and geom(2).omega_n == pytest.approx(2 * math.pi)
    assert geom(3).v_n == pytest.approx(4 * math.pi / 3)
    assert geom(3).omega_n == pytest.approx(4 * math.pi)


@given(st.integers(1, 12))
def test_geom_relation(n):
    g = geom(n)
    assert g.omega_n == pytest.approx(n * g.v_n, rel=1e-14)


@given(st.integers(1, 3), st.floats(1.0, 4.0), st.floats(0.0, 0.99))
def test_solved_tuples_satisfy_relation(n, p, frac):
    beta = frac * n / p
    try:
        P = validate_forward(n=n, p=p, alpha=0, beta=beta, gamma=0)
    except ValidationError:
        return
    assert abs(P.residual) <= 1e-12
    assert 1 < P.q < math.inf

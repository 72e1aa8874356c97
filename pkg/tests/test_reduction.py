import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import assert_close, compact_profiles
from hardysharp.errors import DegenerateSubstitutionError
from hardysharp.operators import OperatorKind
from hardysharp.params import validate_adjoint, validate_forward
from hardysharp.profile import evaluate, indicator, power
from hardysharp.reduction import (inverse_adjoint, inverse_forward, norm_residual,
                                  reconstruct_constant, reduced_params_adjoint,
                                  reduced_params_forward, substitute_adjoint, substitute_forward,
                                  transform_profile_adjoint, transform_profile_forward,
                                  untransform_profile_adjoint, untransform_profile_forward,
                                  weak_identity_residual)
from hardysharp.sharpness import c_sharp, c_sharp_adjoint

FWD, ADJ = OperatorKind.FORWARD, OperatorKind.ADJOINT
XS = np.array([0.01, 0.3, 1.0, 2.5, 40.0])

FWD_TUPLES = [dict(n=1, p=2, alpha=-0.5, beta=0, gamma=0), dict(n=2, p=2, alpha=0, beta=0.5, gamma=-1),
              dict(n=3, p=1.5, alpha=0.2, beta=0.6, gamma=0.5), dict(n=2, p=3, alpha=-0.5, beta=0.3, gamma=0.7)]
ADJ_TUPLES = [dict(n=2, p=2, alpha=0, beta=0.5, gamma=-1), dict(n=1, p=2, alpha=0, beta=0.25, gamma=0),
              dict(n=3, p=1.5, alpha=0.5, beta=0.8, gamma=0.2), dict(n=2, p=3, alpha=-0.5, beta=0.3, gamma=0.4)]


def test_substitute_forward_examples():
    P = validate_forward(n=3, p=2, alpha=0, beta=0.5, gamma=0)
    np.testing.assert_allclose(substitute_forward(XS, P), XS ** 3 / 3, rtol=1e-14)
    P = validate_forward(n=1, p=2, alpha=-0.5, beta=0, gamma=0)
    np.testing.assert_allclose(substitute_forward(XS, P), 2 / 3 * XS ** 1.5, rtol=1e-14)


def test_substitute_forward_p1_degenerate():
    P = validate_forward(n=2, p=1, alpha=0, beta=1, gamma=0)
    with pytest.raises(DegenerateSubstitutionError):
        substitute_forward(1.0, P)


def test_substitute_adjoint_examples():
    P = validate_adjoint(n=2, p=2, alpha=0, beta=0.0, gamma=0)
    np.testing.assert_allclose(substitute_adjoint(XS, P), XS ** 2 / 2, rtol=1e-14)
    P = validate_adjoint(n=1, p=2, alpha=0, beta=0.25, gamma=0)
    np.testing.assert_allclose(substitute_adjoint(XS, P), 1.5 * XS ** (2 / 3), rtol=1e-14)


@pytest.mark.parametrize("i", range(4))
def test_round_trips(i):
    P = validate_forward(FWD_TUPLES[i])
    np.testing.assert_allclose(inverse_forward(substitute_forward(XS, P), P), XS, rtol=1e-12)
    Q = validate_adjoint(ADJ_TUPLES[i])
    np.testing.assert_allclose(inverse_adjoint(substitute_adjoint(XS, Q), Q), XS, rtol=1e-12)


def test_transform_forward_examples():
    P = validate_forward(n=2, p=2, alpha=0, beta=0.5, gamma=0)
    assert transform_profile_forward(indicator(0, 1), P).max_abs_coeff_diff(indicator(0, 0.5)) <= 1e-14
    P = validate_forward(n=1, p=2, alpha=-0.5, beta=0, gamma=0)
    g = transform_profile_forward(power(1.0, 0.5, 1.0, 2.0), P)
    s1, s2 = substitute_forward(1.0, P), substitute_forward(2.0, P)
    assert g.max_abs_coeff_diff(indicator(s1, s2)) <= 1e-13


def test_transform_adjoint_beta0_is_plain_substitution():
    P = validate_adjoint(n=3, p=2, alpha=0, beta=0, gamma=0)
    f = power(2.0, -1.0, 0.5, 3.0)
    g = transform_profile_adjoint(f, P)
    np.testing.assert_allclose(evaluate(g, substitute_adjoint(XS[1:4], P)), evaluate(f, XS[1:4]),
                               rtol=1e-13)


def test_reduced_forward_examples():
    r = reduced_params_forward(validate_forward(n=2, p=2, q=2, alpha=0, beta=0.5, gamma=-1))
    assert r.gamma_red == pytest.approx(-0.5) and r.beta_red == pytest.approx(0.25)
    assert r.alpha_red == 0 and abs(r.residual) < 1e-14
    r = reduced_params_forward(validate_forward(n=2, p=2, alpha=0.5, beta=0.5, gamma=0))
    assert r.beta_red == pytest.approx(0.0, abs=1e-15)
    r = reduced_params_forward(validate_forward(n=3, p=2, alpha=0, beta=0.6, gamma=0))
    assert r.beta_red == pytest.approx(0.2)


def test_reduced_adjoint_examples():
    P = validate_adjoint(n=2, p=2, alpha=0, beta=0.0, gamma=0)
    r = reduced_params_adjoint(P)
    assert r.gamma_red == pytest.approx(P.q / P.p - 1) and r.beta_red == 0
    r = reduced_params_adjoint(validate_adjoint(n=2, p=2, q=2, alpha=0, beta=0.5, gamma=-1))
    assert r.gamma_red == pytest.approx(-0.25) and r.beta_red == pytest.approx(0.125)
    assert abs(r.residual) < 1e-14


@pytest.mark.parametrize("i", range(4))
def test_constant_reconstruction(i):
    P = validate_forward(FWD_TUPLES[i])
    assert_close(reconstruct_constant(P, FWD), c_sharp(P), 1e-12)
    Q = validate_adjoint(ADJ_TUPLES[i])
    assert_close(reconstruct_constant(Q, ADJ), c_sharp_adjoint(Q), 1e-12)


@given(compact_profiles(a_lo=-1.0, a_hi=1.0), st.integers(0, 3))
def test_norm_preserved_forward(f, i):
    assert norm_residual(f, validate_forward(FWD_TUPLES[i]), FWD) <= 1e-10


@given(compact_profiles(a_lo=-1.0, a_hi=1.0), st.integers(0, 3))
def test_norm_preserved_adjoint(f, i):
    assert norm_residual(f, validate_adjoint(ADJ_TUPLES[i]), ADJ) <= 1e-10


@given(compact_profiles(a_lo=-1.0, a_hi=1.0), st.integers(0, 3))
def test_untransform_inverts(f, i):
    P = validate_forward(FWD_TUPLES[i])
    assert untransform_profile_forward(transform_profile_forward(f, P), P).max_abs_coeff_diff(f) <= 1e-12
    Q = validate_adjoint(ADJ_TUPLES[i])
    assert untransform_profile_adjoint(transform_profile_adjoint(f, Q), Q).max_abs_coeff_diff(f) <= 1e-12


@given(compact_profiles(a_lo=-1.0, a_hi=1.0), st.integers(0, 3))
def test_weak_identity(f, i):
    lams = np.geomspace(1e-3, 1e2, 20)
    assert weak_identity_residual(f, validate_forward(FWD_TUPLES[i]), lams, FWD) <= 1e-9
    assert weak_identity_residual(f, validate_adjoint(ADJ_TUPLES[i]), lams, ADJ) <= 1e-9

"""Change of variables reducing weighted radial problems to the half-line.

Forward branch (``p > 1``): with ``m = n - alpha/(p-1)``

    s = x^m / m,        g(s) = f(x) x^(alpha/(p-1)),

so that ``int f^p x^(alpha+n-1) dx = int g^p ds`` and
``int_0^x f t^(n-1) dt = int_0^s g``.  Adjoint branch: with
``k = n(alpha+n-p beta)/(n-beta)`` and ``sigma = beta(np-alpha-n)/((n-beta)p)``

    s = x^k / k,        g(s) = f(x) x^sigma,

so that ``int_x^inf f t^(beta-1) dt = k^(beta*-1) int_s^inf g r^(beta*-1) dr``.

The weak quantities are compared through the library's own one-dimensional
operators: on even profiles of ``R`` the 1-D Hardy operator is
``2^beta' s^(beta'-1) int_0^s g`` and 1-D measures count both half-lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSubstitutionError
from .operators import OperatorKind, hardy_adjoint, hardy_forward
from .params import SpaceParams, geom, inv_conjugate, validate_adjoint, validate_forward
from .profile import RadialProfile, Term
from .weaknorm import superlevel_measure


@dataclass(frozen=True)
class ReducedParams:
    gamma_red: float
    alpha_red: float
    beta_red: float
    branch: OperatorKind
    p: float
    q: float

    @property
    def residual(self) -> float:
        return (self.gamma_red + 1.0) / self.q + self.beta_red - 1.0 / self.p

    def as_space_params(self) -> SpaceParams:
        """The one-dimensional tuple ``(1, p, q, 0, beta_red, gamma_red)``."""
        return SpaceParams(1, self.p, self.q, 0.0, self.beta_red, self.gamma_red)

    def as_dict(self) -> dict:
        return {"gamma_red": self.gamma_red, "alpha_red": self.alpha_red,
                "beta_red": self.beta_red, "branch": self.branch.value,
                "p": self.p, "q": self.q}


# -- exponents -----------------------------------------------------------------

def forward_exponent(params: SpaceParams) -> float:
    """``m = (n(p-1)-alpha)/(p-1)``."""
    if params.p == 1:
        raise DegenerateSubstitutionError("forward substitution is undefined at p=1")
    return (params.n * (params.p - 1.0) - params.alpha) / (params.p - 1.0)


def adjoint_exponent(params: SpaceParams) -> float:
    """``k = n(alpha+n-p beta)/(n-beta)``."""
    n, p, a, b = params.n, params.p, params.alpha, params.beta
    return n * (a + n - p * b) / (n - b)


def adjoint_shift(params: SpaceParams) -> float:
    """``sigma`` with ``g(s(x)) = f(x) x^sigma``."""
    n, p, a, b = params.n, params.p, params.alpha, params.beta
    return b * (n * p - a - n) / ((n - b) * p)


# -- point maps ----------------------------------------------------------------

def _power_map(x, e: float):
    x = np.asarray(x, dtype=float)
    out = x ** e / e
    return float(out) if out.ndim == 0 else out


def _power_inv(s, e: float):
    s = np.asarray(s, dtype=float)
    out = (e * s) ** (1.0 / e)
    return float(out) if out.ndim == 0 else out


def substitute_forward(x, params: SpaceParams):
    return _power_map(x, forward_exponent(params))


def inverse_forward(s, params: SpaceParams):
    return _power_inv(s, forward_exponent(params))


def substitute_adjoint(x, params: SpaceParams):
    return _power_map(x, _checked_k(params))


def inverse_adjoint(s, params: SpaceParams):
    return _power_inv(s, _checked_k(params))


def _checked_k(params: SpaceParams) -> float:
    validate_adjoint(params)
    return adjoint_exponent(params)


# -- profile maps --------------------------------------------------------------

def _compose(f: RadialProfile, e: float, shift: float) -> RadialProfile:
    """Profile of ``s -> f(x) x^shift`` with ``x = (e s)^(1/e)``."""
    segs = []
    lm = math.log(e)
    for seg in f.segments:
        terms = []
        for t in seg.terms:
            a = (t.exponent + shift) / e
            c = t.coeff * e ** a
            if t.logpow:
                # ln x = (ln s + ln e)/e
                terms.append(Term(c / e, a, 1))
                terms.append(Term(c * lm / e, a, 0))
            else:
                terms.append(Term(c, a, 0))
        lo = 0.0 if seg.lo == 0.0 else seg.lo ** e / e
        hi = math.inf if math.isinf(seg.hi) else seg.hi ** e / e
        segs.append((lo, hi, terms))
    return RadialProfile.from_segments(segs)


def transform_profile_forward(f: RadialProfile, params: SpaceParams) -> RadialProfile:
    m = forward_exponent(params)
    return _compose(f, m, params.alpha / (params.p - 1.0))


def untransform_profile_forward(g: RadialProfile, params: SpaceParams) -> RadialProfile:
    """Inverse of :func:`transform_profile_forward` (pull-back to ``x``)."""
    m = forward_exponent(params)
    return _pull_back(g, m, params.alpha / (params.p - 1.0))


def transform_profile_adjoint(f: RadialProfile, params: SpaceParams) -> RadialProfile:
    k = _checked_k(params)
    return _compose(f, k, adjoint_shift(params))


def untransform_profile_adjoint(g: RadialProfile, params: SpaceParams) -> RadialProfile:
    k = _checked_k(params)
    return _pull_back(g, k, adjoint_shift(params))


def _pull_back(g: RadialProfile, e: float, shift: float) -> RadialProfile:
    """``x -> g(x^e/e) x^(-shift)``."""
    segs = []
    for seg in g.segments:
        terms = []
        for t in seg.terms:
            c = t.coeff * e ** (-t.exponent)
            a = e * t.exponent - shift
            if t.logpow:
                # ln s = e ln x - ln e
                terms.append(Term(c * e, a, 1))
                terms.append(Term(-c * math.log(e), a, 0))
            else:
                terms.append(Term(c, a, 0))
        lo = 0.0 if seg.lo == 0.0 else (e * seg.lo) ** (1.0 / e)
        hi = math.inf if math.isinf(seg.hi) else (e * seg.hi) ** (1.0 / e)
        segs.append((lo, hi, terms))
    return RadialProfile.from_segments(segs)


# -- reduced parameters --------------------------------------------------------

def reduced_params_forward(params: SpaceParams) -> ReducedParams:
    P = validate_forward(params)
    m = forward_exponent(P)
    beta_red = (P.beta * (P.p - 1.0) - P.alpha) / (P.n * (P.p - 1.0) - P.alpha)
    gamma_red = (P.gamma + P.n) / m - 1.0
    return ReducedParams(gamma_red, 0.0, beta_red, OperatorKind.FORWARD, P.p, P.q)


def reduced_params_adjoint(params: SpaceParams) -> ReducedParams:
    P = validate_adjoint(params)
    gamma_red = P.q * (P.n - P.beta) / (P.p * P.n) - 1.0
    beta_red = P.beta / (P.p * P.n)
    return ReducedParams(gamma_red, 0.0, beta_red, OperatorKind.ADJOINT, P.p, P.q)


def prefactor_forward(params: SpaceParams) -> float:
    """``[(p-1)/(n(p-1)-alpha)]^(1/p'+1/q)``."""
    return (1.0 / forward_exponent(params)) ** (inv_conjugate(params.p) + 1.0 / params.q)


def prefactor_adjoint(params: SpaceParams) -> float:
    """``[(n-beta)/(n(alpha+n-p beta))]^(1+1/q-1/p)``."""
    return (1.0 / adjoint_exponent(params)) ** (1.0 + 1.0 / params.q - 1.0 / params.p)


# -- norm and weak-quantity identities ------------------------------------------

def lp_integral_x(f: RadialProfile, params: SpaceParams) -> float:
    """``int_0^inf f^p x^(alpha+n-1) dx`` (no sphere factor)."""
    from .profile import power_integral
    return power_integral(f, params.p, params.alpha + params.n - 1.0)


def lp_integral_s(g: RadialProfile, p: float) -> float:
    """``int_0^inf g^p ds``."""
    from .profile import power_integral
    return power_integral(g, p, 0.0)


def norm_residual(f: RadialProfile, params: SpaceParams, branch: OperatorKind) -> float:
    """Relative mismatch of the two sides of the ``L^p`` transformation identity."""
    if branch is OperatorKind.ADJOINT:
        g = transform_profile_adjoint(f, params)
    else:
        g = transform_profile_forward(f, params)
    a = lp_integral_x(f, params)
    b = lp_integral_s(g, params.p)
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def raw_weak_n(f: RadialProfile, params: SpaceParams, lam, branch: OperatorKind):
    """``lam (int_E x^(gamma+n-1) dx)^(1/q)``, ``E = {x^(beta-n) int_0^x f t^(n-1) > lam}``
    (forward) or ``E = {int_x^inf f t^(beta-1) > lam}`` (adjoint)."""
    n, beta, q, gamma = params.n, params.beta, params.q, params.gamma
    c = n * geom(n).v_n ** (beta / n)
    if branch is OperatorKind.ADJOINT:
        H = hardy_adjoint(f, params)
    else:
        H = hardy_forward(f, params)
    lam = np.asarray(lam, dtype=float)
    mu = superlevel_measure(H, c * lam, gamma, n)
    return lam * (np.asarray(mu) / geom(n).omega_n) ** (1.0 / q)


def raw_weak_half_line(g: RadialProfile, red: ReducedParams, lam):
    """``Lam (int_{T g > Lam} s^gamma_red ds)^(1/q)`` on the half-line, through
    the 1-D operators of the library."""
    P1 = red.as_space_params()
    b = red.beta_red
    if red.branch is OperatorKind.ADJOINT:
        H = hardy_adjoint(g, P1)
    else:
        H = hardy_forward(g, P1)
    lam = np.asarray(lam, dtype=float)
    mu = superlevel_measure(H, 2.0 ** b * lam, red.gamma_red, 1)
    return lam * (np.asarray(mu) / 2.0) ** (1.0 / red.q)


def weak_identity_sides(f: RadialProfile, params: SpaceParams, lams, branch: OperatorKind):
    """Both sides of the weak-type transformation identity on a grid of ``lam``.

    Returns ``(lhs, rhs)`` arrays where ``lhs`` is the n-dimensional quantity
    and ``rhs`` is the prefactor times the half-line quantity at the
    rescaled level.
    """
    lams = np.asarray(lams, dtype=float)
    if branch is OperatorKind.ADJOINT:
        red = reduced_params_adjoint(params)
        e = adjoint_exponent(params)
        g = transform_profile_adjoint(f, params)
        pref = prefactor_adjoint(params)
    else:
        red = reduced_params_forward(params)
        e = forward_exponent(params)
        g = transform_profile_forward(f, params)
        pref = prefactor_forward(params)
    lhs = raw_weak_n(f, params, lams, branch)
    rhs = pref * raw_weak_half_line(g, red, lams * e ** (1.0 - red.beta_red))
    return lhs, rhs


def weak_identity_residual(f: RadialProfile, params: SpaceParams, lams, branch: OperatorKind) -> float:
    lhs, rhs = weak_identity_sides(f, params, lams, branch)
    scale = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1e-300)
    return float(np.max(np.abs(lhs - rhs) / scale))


# -- constant reconstruction -----------------------------------------------------

def reconstruct_constant(params: SpaceParams, branch: OperatorKind) -> float:
    """Sharp constant rebuilt from the reduced one-dimensional constant.

    ``C = n^(1+1/q-1/p) v_n^(beta/n+1/q-1/p) * prefactor * K_half`` with
    ``K_half = C_1 2^(1/p-1/q-beta_red)`` the half-line constant of the
    reduced ``alpha = 0`` problem.
    """
    from .sharpness import c_sharp, c_sharp_adjoint

    if branch is OperatorKind.ADJOINT:
        red = reduced_params_adjoint(params)
        c1 = c_sharp_adjoint(red.as_space_params())
        pref = prefactor_adjoint(params)
    else:
        red = reduced_params_forward(params)
        c1 = c_sharp(red.as_space_params())
        pref = prefactor_forward(params)
    n, p, q, b = params.n, params.p, params.q, params.beta
    k_half = c1 * 2.0 ** (1.0 / p - 1.0 / q - red.beta_red)
    return (n ** (1.0 + 1.0 / q - 1.0 / p) * geom(n).v_n ** (b / n + 1.0 / q - 1.0 / p)
            * pref * k_half)

"""Closed-form Hardy type operators on radial profiles.

For a radial ``f`` the operators reduce to one-dimensional integrals::

    H_beta f(r)   = n v_n^(beta/n) r^(beta-n) int_0^r f(t) t^(n-1) dt
    H*_beta f(r)  = n v_n^(beta/n)            int_r^inf f(t) t^(beta-1) dt

and both are evaluated term by term on the power-log family.
"""

from __future__ import annotations

import enum
import math

from . import _integrals
from .errors import DivergenceError, RangeError, UnsupportedExponentError
from .params import SpaceParams, geom, inv_conjugate
from .profile import RadialProfile, Segment, Term, _product_terms, _merge_free


class OperatorKind(enum.Enum):
    FORWARD = "forward"
    ADJOINT = "adjoint"
    FORWARD_P = "forward_p"


def _antiderivative(term: Term, shift: float) -> list:
    """Antiderivative of ``term(t) * t^shift`` as terms; rejects ``(ln t)^2``."""
    e = term.exponent + shift
    if term.logpow == 1 and _integrals.snap(e + 1.0) == 0.0:
        raise UnsupportedExponentError(
            "integrand c t^-1 ln t would produce (ln t)^2")
    return [Term(term.coeff * c, a, k) for c, a, k in _integrals.antiderivative_terms(e, term.logpow)]


def _value(terms, r: float) -> float:
    return sum(t.coeff * r ** t.exponent * (math.log(r) ** t.logpow if t.logpow else 1.0)
               for t in terms)


def _seg_integral(seg: Segment, shift: float, lo: float, hi: float) -> float:
    return sum(t.coeff * _integrals.powlog_integral(t.exponent + shift, t.logpow, lo, hi)
               for t in seg.terms)


def _multiply(terms, c: float, a: float) -> list:
    return [Term(c * t.coeff, t.exponent + a, t.logpow) for t in terms]


def cumulative(f: RadialProfile, n: int) -> RadialProfile:
    """``r -> int_0^r f(t) t^(n-1) dt`` as a profile (constant after the support)."""
    segs = []
    acc = 0.0
    for seg in f.segments:
        anti = [a for t in seg.terms for a in _antiderivative(t, n - 1.0)]
        if seg.lo == 0.0:
            try:
                _seg_integral(seg, n - 1.0, 0.0, min(seg.hi, 1.0))
            except DivergenceError as exc:
                raise DivergenceError(f"int_0^r f t^(n-1) dt diverges at 0: {exc}") from None
            base = 0.0
        else:
            base = _value(anti, seg.lo)
        terms = list(anti)
        if acc - base != 0.0:
            terms.append(Term(acc - base, 0.0, 0))
        segs.append((seg.lo, seg.hi, terms))
        if math.isinf(seg.hi):
            acc = math.inf
            break
        acc += _seg_integral(seg, n - 1.0, seg.lo, seg.hi)
    if math.isfinite(acc) and segs:
        segs.append((f.segments[-1].hi, math.inf, [Term(acc, 0.0, 0)]))
    return _build(segs, f)


def _build(segs, f: RadialProfile) -> RadialProfile:
    # gaps between input segments carry the running constant
    out = list(segs)
    filled = []
    for i, (lo, hi, terms) in enumerate(out):
        filled.append((lo, hi, terms))
        if i + 1 < len(out) and out[i + 1][0] > hi:
            nxt_lo = out[i + 1][0]
            const = _value(terms, hi) if not math.isinf(hi) else 0.0
            filled.append((hi, nxt_lo, [Term(const, 0.0, 0)]))
    return RadialProfile.from_segments(filled)


def hardy_forward(f: RadialProfile, params: SpaceParams) -> RadialProfile:
    """``H_beta f`` for radial ``f``: the ball average normalized by ``|B|^(1-beta/n)``."""
    n, beta = params.n, params.beta
    if f.is_zero:
        return RadialProfile(())
    F = cumulative(f, n)
    c = n * geom(n).v_n ** (beta / n)
    return RadialProfile.from_segments(
        (s.lo, s.hi, _multiply(s.terms, c, beta - n)) for s in F.segments)


def holder_mass_exponent(params: SpaceParams) -> float:
    """``m`` with ``int_0^x t^(-alpha/(p-1)) t^(n-1) dt = x^m / m``."""
    n, p, alpha = params.n, params.p, params.alpha
    if p == 1:
        return float(n)
    return n - alpha / (p - 1.0)


def hardy_forward_p(f: RadialProfile, params: SpaceParams) -> RadialProfile:
    """Hölder-normalized forward operator.

    ``H_{beta,p} f(x) = H_beta f(x) * || |y|^(-alpha/p) chi_{|y|<|x|} ||_{p'}``.
    For ``alpha = 0`` this is ``|B(0,|x|)|^(beta/n - 1/p) int_{|y|<|x|} f``,
    the operator that turns Hölder's inequality into an identity on
    indicators of balls.  At ``p = 1`` it coincides with ``H_beta``.
    """
    inv_pp = inv_conjugate(params.p)
    H = hardy_forward(f, params)
    if inv_pp == 0.0 or H.is_zero:
        return H
    m = holder_mass_exponent(params)
    if not m > 0:
        raise RangeError("n(p-1)-alpha must be positive", "n(p-1)>alpha")
    c = (geom(params.n).omega_n / m) ** inv_pp
    return RadialProfile.from_segments(
        (s.lo, s.hi, _multiply(s.terms, c, m * inv_pp)) for s in H.segments)


def hardy_adjoint(f: RadialProfile, params: SpaceParams) -> RadialProfile:
    """``H*_beta f``: tail integral of ``f(y) |B(0,|y|)|^(beta/n-1)`` over ``|y| >= |x|``."""
    n, beta = params.n, params.beta
    if f.is_zero:
        return RadialProfile(())
    c = n * geom(n).v_n ** (beta / n)
    shift = beta - 1.0
    segs = []
    tail = 0.0  # int_hi^inf f(t) t^(beta-1) dt
    for seg in reversed(f.segments):
        anti = [a for t in seg.terms for a in _antiderivative(t, shift)]
        if math.isinf(seg.hi):
            try:
                _seg_integral(seg, shift, max(seg.lo, 1.0), math.inf)
            except DivergenceError as exc:
                raise DivergenceError(f"tail integral diverges: {exc}") from None
            top = 0.0
        else:
            top = _value(anti, seg.hi)
        # on the segment: tail + A(hi) - A(r)
        terms = [Term(-t.coeff, t.exponent, t.logpow) for t in anti]
        if tail + top != 0.0:
            terms.append(Term(tail + top, 0.0, 0))
        segs.append((seg.lo, seg.hi, terms))
        if seg.lo > 0.0:
            tail += _seg_integral(seg, shift, seg.lo, seg.hi)
    segs.reverse()
    filled = []
    first_lo = segs[0][0]
    if first_lo > 0:
        filled.append((0.0, first_lo, [Term(_value(segs[0][2], first_lo), 0.0, 0)]))
    for i, (lo, hi, terms) in enumerate(segs):
        filled.append((lo, hi, terms))
        if i + 1 < len(segs) and segs[i + 1][0] > hi:
            filled.append((hi, segs[i + 1][0], [Term(_value(segs[i + 1][2], segs[i + 1][0]), 0.0, 0)]))
    prof = RadialProfile.from_segments(filled)
    return prof.scale(c)


def apply(kind: OperatorKind, f: RadialProfile, params: SpaceParams) -> RadialProfile:
    if kind is OperatorKind.FORWARD:
        return hardy_forward(f, params)
    if kind is OperatorKind.ADJOINT:
        return hardy_adjoint(f, params)
    if kind is OperatorKind.FORWARD_P:
        return hardy_forward_p(f, params)
    raise ValueError(kind)


def dilate(f: RadialProfile, t: float, n: int) -> RadialProfile:
    """``t^(-n) f(r/t)``, the L^1-preserving dilation in ``R^n``."""
    if not t > 0:
        raise RangeError(f"dilation factor must be positive, got {t}", "t>0")
    lt = math.log(t)
    segs = []
    for s in f.segments:
        terms = []
        for term in s.terms:
            c = term.coeff * t ** (-term.exponent - n)
            # ln(r/t) = ln r - ln t
            if term.logpow == 1:
                terms.append(Term(c, term.exponent, 1))
                terms.append(Term(-c * lt, term.exponent, 0))
            else:
                terms.append(Term(c, term.exponent, 0))
        segs.append((s.lo * t, s.hi * t, terms))
    return RadialProfile.from_segments(segs)


def pairing(f: RadialProfile, g: RadialProfile, params) -> float:
    """``int_{R^n} f(|x|) g(|x|) dx``."""
    n = params if isinstance(params, int) else params.n
    total = 0.0
    for a in f.segments:
        for b in g.segments:
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if not hi > lo:
                continue
            for t in _merge_free(_product_terms(a.terms, b.terms)):
                if t.logpow > 2:
                    raise UnsupportedExponentError("product log power above 2")
                total += t.coeff * _integrals.powlog_integral(t.exponent + n - 1.0, t.logpow, lo, hi)
    return geom(n).omega_n * total

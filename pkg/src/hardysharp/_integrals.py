"""Definite integrals of ``r^e (ln r)^k`` on sub-intervals of ``[0, inf]``."""

from __future__ import annotations

import math

from scipy import integrate, special

from .errors import DivergenceError

EXP_SNAP = 1e-12


def snap(x: float, target: float = 0.0, tol: float = EXP_SNAP) -> float:
    return target if abs(x - target) <= tol * max(1.0, abs(target)) else x


def antiderivative_terms(e: float, k: int):
    """Antiderivative of ``r^e (ln r)^k`` as a list of ``(coeff, exponent, logpow)``."""
    b = snap(e + 1.0)
    if b == 0.0:
        return [(1.0 / (k + 1), 0.0, k + 1)]
    out = []
    fact = 1.0
    for j in range(k + 1):
        # (-1)^j k!/(k-j)! / b^(j+1)
        out.append(((-1) ** j * fact / b ** (j + 1), e + 1.0, k - j))
        fact *= (k - j)
    return out


def _eval_term(c, a, k, r):
    if r == 0.0 or math.isinf(r):
        raise ValueError("endpoint must be finite and positive")
    return c * r ** a * math.log(r) ** k


def powlog_integral(e: float, k: int, lo: float, hi: float) -> float:
    """``int_lo^hi r^e (ln r)^k dr`` for integer ``k >= 0``.

    ``lo`` may be 0 and ``hi`` may be ``inf``; a divergent integral raises
    :class:`DivergenceError`.
    """
    if not hi > lo:
        return 0.0
    b = snap(e + 1.0)
    if lo == 0.0 and not b > 0:
        raise DivergenceError(f"r^{e}(ln r)^{k} not integrable at 0")
    if math.isinf(hi) and not b < 0:
        raise DivergenceError(f"r^{e}(ln r)^{k} not integrable at infinity")
    terms = antiderivative_terms(e, k)
    top = 0.0 if math.isinf(hi) else sum(_eval_term(c, a, kk, hi) for c, a, kk in terms)
    bot = 0.0 if lo == 0.0 else sum(_eval_term(c, a, kk, lo) for c, a, kk in terms)
    return top - bot


def _gamma_window(a: float, x1: float, x2: float) -> float:
    """``int_x1^x2 t^(a-1) e^-t dt`` for ``0 <= x1 <= x2 <= inf``."""
    g = special.gamma(a)
    lower = special.gammainc(a, x2) - special.gammainc(a, x1)
    if lower < 0.5:
        return g * lower
    return g * (special.gammaincc(a, x1) - (0.0 if math.isinf(x2) else special.gammaincc(a, x2)))


def _abslog_piece(e: float, s: float, lo: float, hi: float) -> float:
    """Interval on one side of r = 1."""
    b = snap(e + 1.0)
    if hi <= 1.0:
        # w = -ln r in [w2, w1]; integrand w^s e^{-b w}
        w1 = math.inf if lo == 0.0 else -math.log(lo)
        w2 = -math.log(hi)
        if b > 0:
            return b ** (-s - 1.0) * _gamma_window(s + 1.0, b * w2, b * w1)
        if math.isinf(w1):
            raise DivergenceError(f"r^{e}|ln r|^{s} not integrable at 0")
        if b == 0:
            return (w1 ** (s + 1.0) - w2 ** (s + 1.0)) / (s + 1.0)
        val, _ = integrate.quad(lambda w: w ** s * math.exp(-b * w), w2, w1,
                                epsabs=0.0, epsrel=1e-14, limit=200)
        return val
    u1 = math.log(lo)
    u2 = math.inf if math.isinf(hi) else math.log(hi)
    if b < 0:
        return (-b) ** (-s - 1.0) * _gamma_window(s + 1.0, -b * u1, -b * u2)
    if math.isinf(u2):
        raise DivergenceError(f"r^{e}|ln r|^{s} not integrable at infinity")
    if b == 0:
        return (u2 ** (s + 1.0) - u1 ** (s + 1.0)) / (s + 1.0)
    val, _ = integrate.quad(lambda u: u ** s * math.exp(b * u), u1, u2,
                            epsabs=0.0, epsrel=1e-14, limit=200)
    return val


def powabslog_integral(e: float, s: float, lo: float, hi: float) -> float:
    """``int_lo^hi r^e |ln r|^s dr`` for real ``s >= 0``.

    Integer ``s`` reduces to :func:`powlog_integral`; otherwise the
    substitution ``u = ln r`` gives incomplete gamma functions, with a
    Gauss-Kronrod fallback on finite windows where the exponential grows.
    """
    if not hi > lo:
        return 0.0
    if s == 0:
        return powlog_integral(e, 0, lo, hi)
    if float(s).is_integer():
        k = int(s)
        total = 0.0
        if lo < 1.0:
            total += (-1) ** k * powlog_integral(e, k, lo, min(hi, 1.0))
        if hi > 1.0:
            total += powlog_integral(e, k, max(lo, 1.0), hi)
        return total
    total = 0.0
    if lo < 1.0:
        total += _abslog_piece(e, s, lo, min(hi, 1.0))
    if hi > 1.0:
        total += _abslog_piece(e, s, max(lo, 1.0), hi)
    return total

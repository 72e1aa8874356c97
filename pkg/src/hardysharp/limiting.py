"""Behaviour of ``lam |{H_beta f > lam}|^(1/q)`` as ``lam -> 0`` (unweighted).

For ``p = 1`` (so ``1/q = 1 - beta/n``) the score tends to ``||f||_1``; for
``p > 1`` it tends to 0.  The dilation ``f_t = t^-n f(./t)`` obeys

    lam |{H f_t > lam}|^((n-beta)/n) = t^(n-beta) lam |{H f > t^(n-beta) lam}|^((n-beta)/n),

which is what turns the small-``lam`` limit into a concentration argument.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import optimize

from .operators import cumulative, dilate, hardy_forward
from .params import SpaceParams, geom, validate_limiting
from .profile import RadialProfile, indicator, l1_mass, power
from .weaknorm import superlevel_measure

DEFAULT_SCHEDULE = tuple(10.0 ** -k for k in range(0, 9))


def builtin_profile(name: str) -> RadialProfile:
    """Named test profiles (version 1).

    ``step``      chi_(0,1)
    ``twostep``   2 chi_(0,1) + chi_(1,2)
    ``powerbump`` r^(-1/4) chi_(0,1)
    """
    if name == "step":
        return indicator(0.0, 1.0)
    if name == "twostep":
        return indicator(0.0, 1.0, 2.0) + indicator(1.0, 2.0)
    if name == "powerbump":
        return power(1.0, -0.25, 0.0, 1.0)
    raise KeyError(f"unknown builtin profile {name!r}; choose step, twostep, powerbump")


BUILTIN_PROFILES = ("step", "twostep", "powerbump")


@dataclass
class LimitTrace:
    params: SpaceParams
    lambdas: np.ndarray
    scores: np.ndarray
    extrapolated_limit: float
    target: float

    @property
    def abs_err(self) -> float:
        return abs(self.extrapolated_limit - self.target)

    @property
    def rel_err(self) -> float:
        if self.target == 0:
            return self.abs_err
        return self.abs_err / abs(self.target)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "score"])
        for lam, s in zip(self.lambdas, self.scores):
            w.writerow([repr(float(lam)), repr(float(s))])
        return buf.getvalue()

    def summary(self) -> dict:
        return {"limit": self.extrapolated_limit, "target": self.target,
                "rel_err": self.rel_err, "params": self.params.as_dict()}

    def to_json(self) -> str:
        return json.dumps(self.summary())


def _check_lebesgue(params: SpaceParams) -> SpaceParams:
    if params.alpha != 0 or params.gamma != 0:
        raise ValueError("limiting experiments use alpha = gamma = 0")
    return validate_limiting(params.n, params.p, params.beta, params.q)


def score(f: RadialProfile, params: SpaceParams, lams) -> np.ndarray:
    """``lam |{H_beta f > lam}|^(1/q)`` for an array of ``lam``."""
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    if f.is_zero:
        return np.zeros_like(lams)
    H = hardy_forward(f, params)
    m = np.asarray(superlevel_measure(H, lams, 0.0, params.n))
    return lams * m ** (1.0 / params.q)


def extrapolate(lams: np.ndarray, scores: np.ndarray) -> float:
    """Limit estimate from the last three points.

    On a geometric ``lam`` schedule a score ``L + c lam^e`` gives a geometric
    sequence of differences, which Aitken's delta-squared step removes
    exactly.  When the differences are not of one sign (or vanish) the last
    score is returned.
    """
    s = np.asarray(scores, dtype=float)
    if len(s) < 3:
        return float(s[-1])
    a, b, c = s[-3:]
    d1, d2 = b - a, c - b
    denom = d2 - d1
    if d1 == 0 or d2 == 0 or d1 * d2 < 0 or denom == 0:
        return float(c)
    est = c - d2 * d2 / denom
    if not math.isfinite(est):
        return float(c)
    return max(float(est), 0.0)   # scores are non-negative


def limiting_weak(f: RadialProfile, params: SpaceParams,
                  lambda_schedule: Optional[Sequence[float]] = None) -> LimitTrace:
    P = _check_lebesgue(params)
    lams = np.asarray(lambda_schedule if lambda_schedule is not None else DEFAULT_SCHEDULE,
                      dtype=float)
    if lams.ndim != 1 or len(lams) == 0 or np.any(lams <= 0) or np.any(np.diff(lams) >= 0):
        raise ValueError("lambda schedule must be positive and strictly decreasing")
    sc = score(f, P, lams)
    target = l1_mass(f, P.n) if P.p == 1 else 0.0
    return LimitTrace(P, lams, sc, extrapolate(lams, sc), target)


def scaling_identity_check(f: RadialProfile, t: float, lam: float, params: SpaceParams) -> float:
    """Relative residual of the dilation identity for the ``p = 1`` exponent ``(n-beta)/n``."""
    P = _check_lebesgue(params)
    n, b = P.n, P.beta
    e = (n - b) / n
    if f.is_zero:
        return 0.0
    m_t = superlevel_measure(hardy_forward(dilate(f, t, n), P), lam, 0.0, n)
    m_1 = superlevel_measure(hardy_forward(f, P), t ** (n - b) * lam, 0.0, n)
    lhs = lam * m_t ** e
    rhs = t ** (n - b) * lam * m_1 ** e
    scale = max(abs(lhs), abs(rhs))
    return 0.0 if scale == 0 else abs(lhs - rhs) / scale


@dataclass
class ConcentrationReport:
    applicable: bool
    mass: float
    epsilon: float
    radius: float
    t_schedule: tuple
    scaled_radii: tuple

    @property
    def shrinking(self) -> bool:
        r = self.scaled_radii
        return self.applicable and all(b <= a for a, b in zip(r, r[1:]))

    def as_dict(self) -> dict:
        return {"applicable": self.applicable, "mass": self.mass, "epsilon": self.epsilon,
                "radius": self.radius, "t": list(self.t_schedule),
                "scaled_radii": list(self.scaled_radii), "shrinking": self.shrinking}


def mass_concentration_check(f: RadialProfile, epsilon: float, t_schedule: Sequence[float],
                             n: int) -> ConcentrationReport:
    """Smallest ``R`` with ``int_{B_R} f > ||f||_1 - epsilon``; ``f_t`` keeps that
    mass inside ``B_{R t}``, so ``R t -> 0`` along ``t -> 0``."""
    ts = tuple(float(t) for t in t_schedule)
    M = l1_mass(f, n)
    if not math.isfinite(M):
        return ConcentrationReport(False, M, epsilon, math.nan, ts, ())
    if epsilon >= M:
        return ConcentrationReport(True, M, epsilon, 0.0, ts, tuple(0.0 for _ in ts))
    F = cumulative(f, n)
    w = geom(n).omega_n
    target = M - epsilon

    def mass(r):
        return w * float(F(r)) - target

    hi = f.support[1]
    if math.isinf(hi):
        hi = 1.0
        while mass(hi) <= 0:
            hi *= 2.0
    lo = 0.0
    R = optimize.brentq(mass, max(lo, 1e-300), hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return ConcentrationReport(True, M, epsilon, R, ts, tuple(R * t for t in ts))

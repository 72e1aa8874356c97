"""Sharp constants and the extremizer experiments that certify them.

``C_sharp``  = [n(p-1)/(n(p-1)-alpha)]^(1/p') (n/(n+gamma))^(1/q) v_n^(beta/n+1/q-1/p)
``C*_sharp`` = (q/p')^(1/p') (n/(n+gamma))^(1/p'+1/q) v_n^(beta/n+1/q-1/p)

At ``p = 1`` every factor raised to ``1/p'`` is 1.

Extremizers.  The adjoint is extremized exactly by
``r^((beta-alpha-n)/(p-1)) chi_(1,inf)`` (for ``alpha = 0`` the exponent is
``(beta-n)/(p-1)``).  The forward bound is approached by
``x^(-alpha/(p-1)) chi_(0, X-delta)``, the pull-back of a half-line indicator,
evaluated through the Hölder-normalized operator ``H_{beta,p}``; for
``alpha = 0`` this is ``chi_(0, v_n^(-1/n) - delta)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateSubstitutionError, RangeError
from .operators import OperatorKind, apply, holder_mass_exponent
from .params import SpaceParams, cpow, geom, inv_conjugate, validate_adjoint, validate_forward
from .profile import RadialProfile, Term, indicator, lp_weighted_norm, power, profile_to_list
from .weaknorm import weak_norm

ERRATA_ADJOINT = "extremizer exponent (beta-alpha-n)/(p-1); printed (beta-n)/n is inconsistent"
NOTE_FORWARD_P = "ratio of H_{beta,p}; the lower-bound operator of the construction"
CSV_COLUMNS = ("n", "p", "q", "alpha", "beta", "gamma", "kind", "formula", "ratio", "gap",
               "witness_lambda", "family_param")


# -- constants -----------------------------------------------------------------

def c_sharp(params) -> float:
    P = validate_forward(params)
    n, p, q, a, b, g = P.n, P.p, P.q, P.alpha, P.beta, P.gamma
    e = inv_conjugate(p)
    bracket = cpow(n * (p - 1.0) / (n * (p - 1.0) - a), e) if e else 1.0
    return bracket * (n / (n + g)) ** (1.0 / q) * geom(n).v_n ** (b / n + 1.0 / q - 1.0 / p)


def c_sharp_adjoint(params) -> float:
    P = validate_adjoint(params)
    n, p, q, b, g = P.n, P.p, P.q, P.beta, P.gamma
    e = inv_conjugate(p)
    lead = cpow(q / P.pprime, e) if e else 1.0
    return lead * (n / (n + g)) ** (e + 1.0 / q) * geom(n).v_n ** (b / n + 1.0 / q - 1.0 / p)


def c_sharp_alpha0(params) -> float:
    """The ``alpha = 0`` form ``v_n^(-gamma/(nq)) (n/(n+gamma))^(1/q)``."""
    P = validate_forward(params)
    return geom(P.n).v_n ** (-P.gamma / (P.n * P.q)) * (P.n / (P.n + P.gamma)) ** (1.0 / P.q)


def formula_constant(params, kind: OperatorKind) -> float:
    if kind is OperatorKind.ADJOINT:
        return c_sharp_adjoint(params)
    return c_sharp(params)


# -- extremizers ---------------------------------------------------------------

def ball_radius(params: SpaceParams) -> float:
    """``X`` with ``|| |y|^(-alpha/p) chi_{|y|<X} ||_{p'} = 1`` (``v_n^(-1/n)`` at ``alpha = 0``)."""
    if params.p == 1:
        return (1.0 / geom(params.n).v_n) ** (1.0 / params.n)
    m = holder_mass_exponent(params)
    return (m / geom(params.n).omega_n) ** (1.0 / m)


def extremizer_forward(delta: float, params: SpaceParams) -> RadialProfile:
    """``chi_(0, v_n^(-1/n) - delta)`` for ``alpha = 0``."""
    if params.alpha != 0:
        raise RangeError("extremizer_forward needs alpha = 0; use pullback_family", "alpha=0")
    X = (1.0 / geom(params.n).v_n) ** (1.0 / params.n)
    if not 0.0 < delta < X:
        raise RangeError(f"delta={delta} outside (0, {X})", "0<delta<v_n^(-1/n)")
    return indicator(0.0, X - delta)


def pullback_family(delta: float, params: SpaceParams) -> RadialProfile:
    """``x^(-alpha/(p-1)) chi_(0, X-delta)``: the half-line indicator pulled back.

    In the reduced variable ``s = x^m/m`` this is ``chi_(0, s(X-delta))``.
    """
    if params.p == 1:
        raise DegenerateSubstitutionError("pull-back family needs p > 1")
    X = ball_radius(params)
    if not 0.0 < delta < X:
        raise RangeError(f"delta={delta} outside (0, {X})", "0<delta<X")
    return power(1.0, -params.alpha / (params.p - 1.0), 0.0, X - delta)


def extremizer_adjoint(params: SpaceParams) -> RadialProfile:
    """``r^((beta-alpha-n)/(p-1)) chi_(1,inf)``, exact for ``p > 1``."""
    P = validate_adjoint(params)
    if P.p == 1:
        raise RangeError("p=1 has no power extremizer; use shell_family", "p>1")
    return power(1.0, (P.beta - P.alpha - P.n) / (P.p - 1.0), 1.0, math.inf)


def shell_family(eps: float, params: SpaceParams) -> RadialProfile:
    """Thin shells ``chi_(1, 1+eps)``; the ``p = 1`` adjoint ratio tends to the constant."""
    if not eps > 0:
        raise RangeError("eps must be positive", "eps>0")
    return indicator(1.0, 1.0 + eps)


# -- reports -------------------------------------------------------------------

@dataclass
class SharpnessReport:
    params: SpaceParams
    kind: OperatorKind
    formula_constant: float
    test_function: str
    profile: RadialProfile
    ratio: float
    gap: float
    witness_lambda: Optional[float]
    family_param: Optional[float] = None
    attained: str = ""
    notes: tuple = ()

    @property
    def within_bound(self) -> bool:
        return self.ratio <= self.formula_constant * (1.0 + 1e-8)

    def as_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "kind": self.kind.value,
            "formula": self.formula_constant,
            "test_function": self.test_function,
            "profile": profile_to_list(self.profile),
            "ratio": self.ratio,
            "gap": self.gap,
            "witness_lambda": self.witness_lambda,
            "family_param": self.family_param,
            "attained": self.attained,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    def csv_row(self) -> list:
        P = self.params
        return [P.n, P.p, P.q, P.alpha, P.beta, P.gamma, self.kind.value,
                repr(self.formula_constant), repr(self.ratio), repr(self.gap),
                "" if self.witness_lambda is None else repr(self.witness_lambda),
                "" if self.family_param is None else repr(self.family_param)]


def reports_to_csv(reports: Sequence[SharpnessReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def _validated(params, kind: OperatorKind) -> SpaceParams:
    return validate_adjoint(params) if kind is OperatorKind.ADJOINT else validate_forward(params)


def ratio(f: RadialProfile, params, kind: OperatorKind, description: str = "profile",
          family_param: Optional[float] = None) -> SharpnessReport:
    """``||T f||_{q,inf;gamma} / ||f||_{p;alpha}`` with the formula constant alongside."""
    P = _validated(params, kind)
    if f.is_zero:
        raise RangeError("ratio needs a nonzero profile", "f!=0")
    num = weak_norm(apply(kind, f, P), P)
    den = lp_weighted_norm(f, P)
    if not (math.isfinite(den) and den > 0):
        raise RangeError(f"||f||_(p,alpha) = {den} is not a positive finite number", "0<||f||<inf")
    C = formula_constant(P, kind)
    r = num.value / den
    notes = list(P.flags)
    if kind is OperatorKind.ADJOINT:
        notes.append(ERRATA_ADJOINT)
    if kind is OperatorKind.FORWARD_P:
        notes.append(NOTE_FORWARD_P)
    return SharpnessReport(P, kind, C, description, f, r, C - r, num.witness_lambda,
                           family_param, num.attained.value, tuple(notes))


DEFAULT_DELTAS = (1e-1, 1e-2, 1e-3, 1e-4)
DEFAULT_EPS = (1e-1, 1e-2, 1e-3, 1e-4)


def sharpness_sweep(params, kind: OperatorKind, schedule: Optional[Sequence[float]] = None) -> list:
    """Ratios along the extremizing family for ``kind``.

    * ADJOINT, ``p > 1``: one report for the exact extremizer (schedule ignored).
    * ADJOINT, ``p = 1``: thin shells ``chi_(1,1+eps)`` for ``eps`` in the schedule.
    * FORWARD / FORWARD_P: the pull-back family for ``delta`` in the schedule,
      scaled by the family radius ``X`` when no schedule is given.  At ``p = 1``
      only ``alpha = 0`` has a family (balls), since the substitution degenerates.
    """
    P = _validated(params, kind)
    if kind is OperatorKind.ADJOINT:
        if P.p > 1:
            return [ratio(extremizer_adjoint(P), P, kind, "extremizer_adjoint")]
        return [ratio(shell_family(e, P), P, kind, "shell", e)
                for e in (schedule or DEFAULT_EPS)]
    X = ball_radius(P)
    deltas = list(schedule) if schedule else [d * X for d in DEFAULT_DELTAS]
    out = []
    for d in deltas:
        if P.p == 1:
            if P.alpha != 0:
                raise DegenerateSubstitutionError(
                    "forward family at p=1 exists only for alpha=0")
            f = extremizer_forward(d, P)
        else:
            f = pullback_family(d, P)
        out.append(ratio(f, P, kind, "pullback" if P.alpha else "extremizer_forward", d))
    return out


def gaps_decreasing(reports: Sequence[SharpnessReport], strict: bool = True) -> bool:
    g = [r.gap for r in reports]
    if strict:
        return all(b < a for a, b in zip(g, g[1:]))
    return all(b <= a + 1e-12 * max(1.0, abs(a)) for a, b in zip(g, g[1:]))


# -- random admissible profiles --------------------------------------------------

def random_profile(rng: np.random.Generator, params: SpaceParams, kind: OperatorKind,
                   max_pieces: int = 5) -> RadialProfile:
    """1 to ``max_pieces`` positive power pieces with finite norms under ``params``.

    Supports are bounded and usually bounded away from 0; when a piece starts
    at 0 its exponent is kept above the integrability threshold with a margin.
    """
    P = params
    k = int(rng.integers(1, max_pieces + 1))
    edges = np.sort(np.exp(rng.uniform(math.log(0.05), math.log(20.0), size=k + 1)))
    edges = np.unique(edges)
    if len(edges) < 2:
        edges = np.array([0.5, 2.0])
    segs = []
    start_at_zero = rng.random() < 0.3
    # exponent a near 0 keeps f^p r^(alpha+n-1) and the operator outputs integrable
    a_min = -(P.alpha + P.n) / P.p + 0.25
    if kind is OperatorKind.ADJOINT:
        a_min = max(a_min, -P.beta + 0.25)
    for i, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        if rng.random() < 0.2 and i > 0:
            continue  # leave a gap
        nterms = 1 if rng.random() < 0.7 else 2
        terms = []
        for _ in range(nterms):
            a = float(rng.uniform(-2.0, 2.0))
            c = float(np.exp(rng.uniform(-1.5, 1.5)))
            if i == 0 and start_at_zero:
                a = max(a, a_min + float(rng.uniform(0.0, 1.0)))
            terms.append(Term(c, a, 0))
        segs.append((0.0 if (i == 0 and start_at_zero) else float(lo), float(hi), terms))
    return RadialProfile.from_segments(segs)


def upper_bound_check(params, kind: OperatorKind, count: int = 200, seed: int = 0) -> list:
    """Ratios of ``count`` seeded random profiles; each must stay below the constant."""
    P = _validated(params, kind)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), 7]))
    return [ratio(random_profile(rng, P, kind), P, kind, f"random[{i}]", i) for i in range(count)]

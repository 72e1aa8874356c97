"""Parameter tuples for the weighted weak-type inequalities.

A tuple ``(n, p, q, alpha, beta, gamma)`` describes the map
``L^p(|x|^alpha dx) -> L^{q,inf}(|x|^gamma dx)`` on ``R^n`` for the Hardy
type operator of order ``beta``.  All theorems require the homogeneity
relation ``(gamma+n)/q + beta = (alpha+n)/p``; the validators here check it
and can solve it for one missing member.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Mapping, Optional

from .errors import (
    AdjointConstraintError,
    DimensionError,
    ForwardConstraintError,
    RangeError,
    ScalingError,
)

INFINITY = math.inf
RELATION_TOL = 1e-12


@dataclass(frozen=True)
class GeomConstants:
    n: int
    v_n: float
    omega_n: float


def geom(n: int) -> GeomConstants:
    """Volume of the unit ball and area of the unit sphere in ``R^n``."""
    if int(n) != n or n < 1:
        raise DimensionError(f"dimension must be a positive integer, got {n!r}")
    n = int(n)
    if n == 1:
        v = 2.0
    elif n <= 150:
        v = math.pi ** (0.5 * n) / math.gamma(0.5 * n + 1.0)
    else:
        v = math.exp(0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1.0))
    return GeomConstants(n=n, v_n=v, omega_n=n * v)


def conjugate(p: float) -> float:
    """Hölder conjugate ``p/(p-1)``; ``p = 1`` maps to ``inf``."""
    if not p >= 1:
        raise RangeError(f"p must be >= 1, got {p!r}", "p>=1")
    if p == 1:
        return INFINITY
    return p / (p - 1.0)


def inv_conjugate(p: float) -> float:
    """``1/p'`` with the convention ``1/p' = 0`` at ``p = 1``."""
    if not p >= 1:
        raise RangeError(f"p must be >= 1, got {p!r}", "p>=1")
    return 0.0 if p == 1 else 1.0 - 1.0 / p


def cpow(base: float, expo: float) -> float:
    """``base**expo`` except that a zero exponent always gives 1 (incl. 0**0, 0/0)."""
    if expo == 0:
        return 1.0
    return base ** expo


@dataclass(frozen=True)
class SpaceParams:
    n: int
    p: float
    q: float
    alpha: float
    beta: float
    gamma: float

    @property
    def geom(self) -> GeomConstants:
        return geom(self.n)

    @property
    def v_n(self) -> float:
        return self.geom.v_n

    @property
    def omega_n(self) -> float:
        return self.geom.omega_n

    @property
    def pprime(self) -> float:
        return conjugate(self.p)

    @property
    def inv_pprime(self) -> float:
        return inv_conjugate(self.p)

    @property
    def residual(self) -> float:
        n = self.n
        return (self.gamma + n) / self.q + self.beta - (self.alpha + n) / self.p

    @property
    def flags(self) -> tuple:
        """Notes a report should carry about convention-dependent values."""
        out = []
        if self.p == 1 and self.alpha == 0:
            out.append("p=1,alpha=0: bracket [n(p-1)/(n(p-1)-alpha)]^(1/p') taken as 0^0=1")
        return tuple(out)

    def as_dict(self) -> dict:
        return asdict(self)

    def replace(self, **kw) -> "SpaceParams":
        d = self.as_dict()
        d.update(kw)
        return SpaceParams(**d)


_FIELDS = ("n", "p", "q", "alpha", "beta", "gamma")


def _unpack(raw) -> dict:
    if isinstance(raw, SpaceParams):
        d = raw.as_dict()
    elif isinstance(raw, Mapping):
        d = {k: raw.get(k) for k in _FIELDS}
    else:
        d = dict(zip(_FIELDS, raw))
    for k in _FIELDS:
        if d.get(k) is not None:
            d[k] = float(d[k]) if k != "n" else d[k]
    return d


def _check_common(d: dict) -> None:
    n = d["n"]
    if n is None or int(n) != n or n < 1:
        raise DimensionError(f"dimension must be a positive integer, got {n!r}")
    d["n"] = int(n)
    p, beta = d["p"], d["beta"]
    if p is None or beta is None:
        raise ScalingError("p and beta are required", "p,beta given")
    if not (1 <= p < INFINITY):
        raise RangeError(f"p={p} outside [1, inf)", "1<=p<inf")
    if not (0 <= beta < d["n"]):
        raise RangeError(f"beta={beta} outside [0, n)", "0<=beta<n")


def _solve(d: dict, adjoint: bool) -> None:
    n, p, beta = d["n"], d["p"], d["beta"]
    missing = [k for k in ("q", "gamma", "alpha") if d[k] is None]
    if len(missing) > 1:
        raise ScalingError(f"cannot solve for {missing}: at most one unknown", "one unknown")
    if not missing:
        return
    k = missing[0]
    if k == "alpha":
        d["alpha"] = p * ((d["gamma"] + n) / d["q"] + beta) - n
    elif k == "gamma":
        d["gamma"] = d["q"] * ((d["alpha"] + n) / p - beta) - n
    else:
        denom = (d["alpha"] + n) / p - beta
        if denom <= 0:
            cls = AdjointConstraintError if adjoint else ScalingError
            raise cls(f"(alpha+n)/p-beta={denom} <= 0: q has no finite solution")
        d["q"] = (d["gamma"] + n) / denom


def _check_ranges(d: dict) -> None:
    if not d["gamma"] > -d["n"]:
        raise RangeError(f"gamma={d['gamma']} must exceed -n={-d['n']}", "gamma>-n")
    if not (1 < d["q"] < INFINITY):
        raise RangeError(f"q={d['q']} outside (1, inf)", "1<q<inf")


def _check_relation(d: dict) -> None:
    n = d["n"]
    res = (d["gamma"] + n) / d["q"] + d["beta"] - (d["alpha"] + n) / d["p"]
    if not abs(res) <= RELATION_TOL:
        raise ScalingError(f"scaling relation residual {res:.3e}")


def validate_forward(raw=None, **kw) -> SpaceParams:
    """Validate a tuple for the forward operator, solving for one unknown.

    ``raw`` may be a mapping, a 6-sequence in the order
    ``(n, p, q, alpha, beta, gamma)`` or a :class:`SpaceParams`; keyword
    arguments are merged on top.  Exactly one of ``q, gamma, alpha`` may be
    ``None``.
    """
    d = _unpack(raw if raw is not None else {})
    given = {k: v for k, v in kw.items() if k in _FIELDS}
    d.update({k: v for k, v in _unpack(given).items() if k in given})
    _check_common(d)
    _solve(d, adjoint=False)
    _check_ranges(d)
    if d["alpha"] > d["beta"] * (d["p"] - 1) + RELATION_TOL:
        raise ForwardConstraintError(
            f"alpha={d['alpha']} > beta(p-1)={d['beta'] * (d['p'] - 1)}")
    _check_relation(d)
    return SpaceParams(**d)


def validate_adjoint(raw=None, **kw) -> SpaceParams:
    """Validate a tuple for the adjoint operator, solving for one unknown."""
    d = _unpack(raw if raw is not None else {})
    given = {k: v for k, v in kw.items() if k in _FIELDS}
    d.update({k: v for k, v in _unpack(given).items() if k in given})
    _check_common(d)
    if d["alpha"] is not None:
        margin = (d["alpha"] + d["n"]) / d["p"] - d["beta"]
        if not margin > 0:
            raise AdjointConstraintError(f"(alpha+n)/p-beta={margin} <= 0")
    _solve(d, adjoint=True)
    _check_ranges(d)
    margin = (d["alpha"] + d["n"]) / d["p"] - d["beta"]
    if not margin > 0:
        raise AdjointConstraintError(f"(alpha+n)/p-beta={margin} <= 0")
    _check_relation(d)
    return SpaceParams(**d)


def validate_limiting(n: int, p: float, beta: float, q: Optional[float] = None) -> SpaceParams:
    """Unweighted Lebesgue setting of the limiting theorem: ``1/q + beta/n = 1/p``.

    Unlike the weighted validators this admits ``q = 1`` (``p = 1, beta = 0``).
    """
    d = {"n": n, "p": float(p), "beta": float(beta), "alpha": 0.0, "gamma": 0.0,
         "q": None if q is None else float(q)}
    _check_common(d)
    inv_q = 1.0 / d["p"] - d["beta"] / d["n"]
    if not inv_q > 0:
        raise RangeError(f"1/q = 1/p - beta/n = {inv_q} <= 0", "1/q>0")
    if d["q"] is None:
        d["q"] = 1.0 / inv_q
    _check_relation(d)
    if d["q"] < 1:
        raise RangeError(f"q={d['q']} < 1", "q>=1")
    return SpaceParams(**d)

"""Radial profiles in the power-log family.

A profile is a function of ``r = |x|`` on ``(0, inf)`` that is, on each
interval of a finite partition, a finite sum of terms ``c * r**a * (ln r)**k``
with ``k`` in ``{0, 1}``.  Outside the listed intervals the profile is zero.
This family is closed under the Hardy type operators and their adjoints
(up to the log-collision rule in :mod:`hardysharp.operators`), and every norm
below is computed from closed-form antiderivatives.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import integrate

from . import _integrals
from .errors import DivergenceError, DomainError, SamplingError, UnsupportedExponentError
from .params import geom

EXP_TOL = 1e-13


@dataclass(frozen=True)
class Term:
    coeff: float
    exponent: float
    logpow: int = 0

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            out = self.coeff * r ** self.exponent
            if self.logpow:
                out = out * np.log(r) ** self.logpow
        return out


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    terms: tuple

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for t in self.terms:
            out = out + t(r)
        return out


@dataclass(frozen=True)
class PowerLogPiece:
    """One term on one interval; the serialization unit."""

    coeff: float
    exponent: float
    logpow: int
    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo < self.hi):
            raise ValueError(f"bad interval [{self.lo}, {self.hi})")
        if self.logpow not in (0, 1):
            raise UnsupportedExponentError(f"log power {self.logpow} not in {{0, 1}}")


def _same_exp(a: float, b: float) -> bool:
    return abs(a - b) <= EXP_TOL * max(1.0, abs(a), abs(b))


def _combine(terms: Iterable[Term]) -> tuple:
    merged: list[list] = []
    for t in terms:
        for m in merged:
            if m[2] == t.logpow and _same_exp(m[1], t.exponent):
                m[0] += t.coeff
                break
        else:
            merged.append([t.coeff, t.exponent, t.logpow])
    out = [Term(c, a, k) for c, a, k in merged if c != 0.0]
    out.sort(key=lambda t: (t.exponent, t.logpow))
    return tuple(out)


@dataclass(frozen=True)
class RadialProfile:
    segments: tuple = ()

    # -- construction -------------------------------------------------------
    @classmethod
    def from_segments(cls, segs: Iterable) -> "RadialProfile":
        """Build from ``(lo, hi, terms)`` triples; terms are ``Term`` or ``(c, a, k)``.

        Overlapping segments are added together.
        """
        raw = []
        for lo, hi, terms in segs:
            lo, hi = float(lo), float(hi)
            if not (0.0 <= lo < hi):
                raise ValueError(f"bad interval [{lo}, {hi})")
            ts = [t if isinstance(t, Term) else Term(float(t[0]), float(t[1]), int(t[2]) if len(t) > 2 else 0)
                  for t in terms]
            for t in ts:
                if t.logpow not in (0, 1):
                    raise UnsupportedExponentError(f"log power {t.logpow} not in {{0, 1}}")
            raw.append((lo, hi, ts))
        if not raw:
            return cls(())
        cuts = sorted({x for lo, hi, _ in raw for x in (lo, hi)})
        out: list[Segment] = []
        for a, b in zip(cuts[:-1], cuts[1:]):
            terms = [t for lo, hi, ts in raw if lo <= a and hi >= b for t in ts]
            terms = _combine(terms)
            if not terms:
                continue
            if out and out[-1].hi == a and out[-1].terms == terms:
                out[-1] = Segment(out[-1].lo, b, terms)
            else:
                out.append(Segment(a, b, terms))
        return cls(tuple(out))

    @classmethod
    def from_pieces(cls, pieces: Iterable[PowerLogPiece]) -> "RadialProfile":
        return cls.from_segments((p.lo, p.hi, [(p.coeff, p.exponent, p.logpow)]) for p in pieces)

    @property
    def pieces(self) -> tuple:
        return tuple(PowerLogPiece(t.coeff, t.exponent, t.logpow, s.lo, s.hi)
                     for s in self.segments for t in s.terms)

    # -- basic queries ------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.segments

    @property
    def breakpoints(self) -> tuple:
        pts = sorted({x for s in self.segments for x in (s.lo, s.hi)})
        return tuple(pts)

    @property
    def support(self) -> tuple:
        if self.is_zero:
            return (0.0, 0.0)
        return (self.segments[0].lo, self.segments[-1].hi)

    def __call__(self, r):
        return evaluate(self, r)

    def scale(self, c: float) -> "RadialProfile":
        if c == 0:
            return RadialProfile(())
        return RadialProfile(tuple(
            Segment(s.lo, s.hi, tuple(Term(c * t.coeff, t.exponent, t.logpow) for t in s.terms))
            for s in self.segments))

    def __mul__(self, c):
        return self.scale(float(c))

    __rmul__ = __mul__

    def __add__(self, other: "RadialProfile") -> "RadialProfile":
        return RadialProfile.from_segments(
            [(s.lo, s.hi, s.terms) for s in self.segments]
            + [(s.lo, s.hi, s.terms) for s in other.segments])

    def max_abs_coeff_diff(self, other: "RadialProfile") -> float:
        """Largest relative coefficient mismatch; ``inf`` if the structure differs."""
        if len(self.segments) != len(other.segments):
            return math.inf
        worst = 0.0
        for s, t in zip(self.segments, other.segments):
            if not (_close(s.lo, t.lo) and _close(s.hi, t.hi)) or len(s.terms) != len(t.terms):
                return math.inf
            for u, w in zip(s.terms, t.terms):
                if u.logpow != w.logpow or not _same_exp(u.exponent, w.exponent):
                    return math.inf
                scale = max(abs(u.coeff), abs(w.coeff))
                worst = max(worst, abs(u.coeff - w.coeff) / scale)
        return worst


def _close(a, b, tol=1e-12):
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def zero() -> RadialProfile:
    return RadialProfile(())


def indicator(lo: float, hi: float, height: float = 1.0) -> RadialProfile:
    """``height`` on ``[lo, hi)``."""
    return RadialProfile.from_segments([(lo, hi, [(height, 0.0, 0)])])


def power(coeff: float, exponent: float, lo: float = 0.0, hi: float = math.inf,
          logpow: int = 0) -> RadialProfile:
    return RadialProfile.from_segments([(lo, hi, [(coeff, exponent, logpow)])])


def evaluate(f: RadialProfile, r):
    """Value of the profile at ``r > 0`` (scalar or array); zero in gaps."""
    arr = np.asarray(r, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("profiles are evaluated at r > 0 only")
    out = np.zeros_like(arr)
    for s in f.segments:
        mask = (arr >= s.lo) & (arr < s.hi)
        if np.any(mask):
            out[mask] = s(arr[mask])
    if np.ndim(r) == 0:
        return float(out)
    return out


# -- integrals ---------------------------------------------------------------

def _product_terms(a: Sequence[Term], b: Sequence[Term]) -> list:
    return [Term(x.coeff * y.coeff, x.exponent + y.exponent, x.logpow + y.logpow)
            for x in a for y in b]


def _merge_free(terms: Iterable[Term]) -> list:
    """Like-term merge without the log-power restriction."""
    acc: dict = {}
    order = []
    for t in terms:
        for key in order:
            if key[1] == t.logpow and _same_exp(key[0], t.exponent):
                acc[key] += t.coeff
                break
        else:
            key = (t.exponent, t.logpow)
            order.append(key)
            acc[key] = t.coeff
    return [Term(c, a, k) for (a, k), c in acc.items() if c != 0.0]


def _segment_power_integral(seg: Segment, p: float, w: float) -> float:
    """``int_seg |g|^p r^w dr`` for one segment."""
    terms = seg.terms
    if len(terms) == 1:
        t = terms[0]
        return abs(t.coeff) ** p * _integrals.powabslog_integral(
            p * t.exponent + w, p * t.logpow, seg.lo, seg.hi)
    if float(p).is_integer():
        prod = [Term(1.0, 0.0, 0)]
        for _ in range(int(p)):
            prod = _merge_free(_product_terms(prod, terms))
        val = sum(t.coeff * _integrals.powlog_integral(t.exponent + w, t.logpow, seg.lo, seg.hi)
                  for t in prod)
        # expansion assumes g >= 0 when p is odd
        return abs(val)
    _check_segment_integrable(seg, p, w)
    lo = -np.inf if seg.lo == 0 else math.log(seg.lo)
    hi = np.inf if math.isinf(seg.hi) else math.log(seg.hi)

    terms = seg.terms

    def integrand(u):
        # factor out the largest power so extreme u neither overflows nor cancels
        logs = [t.exponent * u for t in terms]
        top = max(logs)
        s = sum(t.coeff * math.exp(lg - top) * u ** t.logpow for t, lg in zip(terms, logs))
        if s == 0.0:
            return 0.0
        return math.exp(min(p * (math.log(abs(s)) + top) + (w + 1.0) * u, 700.0))

    val, _ = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-13, limit=400)
    return val


def _dominant(terms, at_zero: bool) -> Term:
    if at_zero:
        return min(terms, key=lambda t: (t.exponent, -t.logpow))
    return max(terms, key=lambda t: (t.exponent, t.logpow))


def _check_segment_integrable(seg: Segment, p: float, w: float) -> None:
    if seg.lo == 0:
        d = _dominant(seg.terms, True)
        if not p * d.exponent + w + 1.0 > 0:
            raise DivergenceError("not integrable at 0")
    if math.isinf(seg.hi):
        d = _dominant(seg.terms, False)
        if not p * d.exponent + w + 1.0 < 0:
            raise DivergenceError("not integrable at infinity")


def power_integral(f: RadialProfile, p: float, w: float) -> float:
    """``int_0^inf |f(r)|^p r^w dr``; ``inf`` when divergent."""
    total = 0.0
    for seg in f.segments:
        try:
            total += _segment_power_integral(seg, p, w)
        except DivergenceError:
            return math.inf
    return total


def lp_weighted_norm(f: RadialProfile, params) -> float:
    """``(omega_n int_0^inf |f|^p r^(alpha+n-1) dr)^(1/p)``, i.e. the norm of
    ``f(|x|)`` in ``L^p(|x|^alpha dx)`` on ``R^n``.  Divergence gives ``inf``."""
    return weighted_norm(f, params.p, params.alpha, params.n)


def weighted_norm(f: RadialProfile, p: float, weight_exp: float, n: int) -> float:
    val = power_integral(f, p, weight_exp + n - 1.0)
    if math.isinf(val):
        return math.inf
    return (geom(n).omega_n * val) ** (1.0 / p)


def l1_mass(f: RadialProfile, n: int) -> float:
    """``int_{R^n} |f(|x|)| dx``."""
    return weighted_norm(f, 1.0, 0.0, n)


# -- radialization -----------------------------------------------------------

@dataclass(frozen=True)
class ScalarField:
    """Nonnegative field on ``R^n``; ``evaluator`` maps an ``(N, n)`` array to ``(N,)``."""

    evaluator: Callable
    support_radius: float = math.inf
    n: int = 2
    name: str = "field"

    def __call__(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        vals = np.asarray(self.evaluator(pts), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise SamplingError(f"{self.name} returned non-finite values")
        if math.isfinite(self.support_radius):
            vals = np.where(np.linalg.norm(pts, axis=1) <= self.support_radius, vals, 0.0)
        return vals


def radial_field(f: RadialProfile, n: int, name: str = "radial") -> ScalarField:
    """The field ``x -> f(|x|)``."""
    hi = f.support[1] if not f.is_zero else 0.0

    def ev(pts):
        r = np.linalg.norm(pts, axis=1)
        out = np.zeros(len(r))
        pos = r > 0
        out[pos] = evaluate(f, r[pos])
        return out

    return ScalarField(ev, hi, n, name)


def random_directions(rng: np.random.Generator, size: int, n: int) -> np.ndarray:
    if n == 1:
        return rng.choice(np.array([-1.0, 1.0]), size=size)[:, None]
    z = rng.standard_normal((size, n))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def spherical_average(F: ScalarField, n: int, radius: float, samples: int,
                      rng: np.random.Generator) -> tuple:
    """Mean of ``|F|`` over the sphere of given radius, with its standard error.

    In one dimension the sphere is ``{-r, r}`` and the average is exact.
    """
    if n == 1:
        vals = np.abs(F(np.array([[-radius], [radius]])))
        return float(vals.mean()), 0.0
    pts = radius * random_directions(rng, samples, n)
    vals = np.abs(F(pts))
    se = float(vals.std(ddof=1) / math.sqrt(samples)) if samples > 1 else math.inf
    return float(vals.mean()), se


def radius_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def radial_averages(F: ScalarField, n: int, radii: Sequence[float], samples_per_radius: int,
                    seed: int) -> tuple:
    """Per-radius spherical means and standard errors (arrays)."""
    radii = np.asarray(radii, dtype=float)
    if radii.ndim != 1 or len(radii) == 0 or np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise ValueError("radii must be positive and strictly increasing")
    if samples_per_radius < 1:
        raise ValueError("samples_per_radius must be >= 1")
    means = np.empty(len(radii))
    ses = np.empty(len(radii))
    for i, r in enumerate(radii):
        means[i], ses[i] = spherical_average(F, n, float(r), samples_per_radius, radius_rng(seed, i))
    return means, ses


def cell_edges(radii: np.ndarray) -> np.ndarray:
    """Midpoint cells around the radii; the first cell is reflected about ``radii[0]``."""
    radii = np.asarray(radii, dtype=float)
    if len(radii) == 1:
        return np.array([0.0, 2.0 * radii[0]])
    mids = 0.5 * (radii[1:] + radii[:-1])
    first = max(0.0, radii[0] - (mids[0] - radii[0]))
    last = radii[-1] + (radii[-1] - mids[-1])
    return np.concatenate([[first], mids, [last]])


def radialize(F: ScalarField, n: int, radii: Sequence[float], samples_per_radius: int,
              seed: int) -> RadialProfile:
    """Monte Carlo spherical average of ``|F|``, interpolated piecewise constantly.

    Each radius owns the cell between the midpoints to its neighbours.
    """
    means, _ = radial_averages(F, n, radii, samples_per_radius, seed)
    edges = cell_edges(np.asarray(radii, dtype=float))
    return RadialProfile.from_segments(
        (edges[i], edges[i + 1], [(float(m), 0.0, 0)]) for i, m in enumerate(means) if m != 0.0)


# -- serialization -----------------------------------------------------------

def profile_to_list(f: RadialProfile) -> list:
    return [{"c": p.coeff, "a": p.exponent, "k": p.logpow, "lo": p.lo,
             "hi": "inf" if math.isinf(p.hi) else p.hi} for p in f.pieces]


def profile_from_list(items: Sequence[dict]) -> RadialProfile:
    pieces = []
    for i, it in enumerate(items):
        missing = [k for k in ("c", "a", "lo", "hi") if not isinstance(it, dict) or k not in it]
        if missing:
            raise ValueError(f"piece {i} lacks keys {missing}; expected c, a, k, lo, hi")
        hi = it["hi"]
        hi = math.inf if hi in ("inf", "Infinity", math.inf) else float(hi)
        pieces.append(PowerLogPiece(float(it["c"]), float(it["a"]), int(it.get("k", 0)),
                                    float(it["lo"]), hi))
    return RadialProfile.from_pieces(pieces)


def profile_to_json(f: RadialProfile) -> str:
    return json.dumps(profile_to_list(f))


def profile_from_json(text: str) -> RadialProfile:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("profile JSON must be an array of pieces")
    return profile_from_list(data)

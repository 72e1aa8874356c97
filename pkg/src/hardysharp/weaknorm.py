"""Power-weighted superlevel measures and the weak ``L^{q,inf}`` quasi-norm.

For a radial profile ``g`` the superlevel set ``{g > lam}`` is a finite union
of annuli, so

    mu_gamma({g > lam}) = omega_n/(n+gamma) * sum (R_hi^(n+gamma) - R_lo^(n+gamma)).

Each segment of ``g`` is split into monotone pieces in the variable
``u = ln r``; on a monotone piece the superlevel set is an interval at one
end, found in closed form for a single pure power and by bisection otherwise.
The supremum over ``lam`` is taken over the piece values of ``g`` (where the
distribution function jumps), geometric grids between them with
golden-section refinement, and the exact asymptotics at ``lam -> 0`` and
``lam -> inf``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from .errors import DivergenceError, RangeError
from .params import geom
from .profile import RadialProfile, weighted_norm

U_MAX = 700.0            # |ln r| beyond this is treated as 0 / inf
BISECT_ITERS = 100
GRID_RATIO = 1.0 + 1e-4
GRID_CAP = 256           # points per bracket (the 1+1e-4 ratio is capped)
OPEN_DECADES = 6.0       # extent of the open brackets at lam -> 0 and lam -> inf
CONST_TOL = 1e-12
CRIT_TOL = 1e-9


class SupKind(enum.Enum):
    SUP_ATTAINED = "SUP_ATTAINED"
    SUP_LIMIT_ZERO = "SUP_LIMIT_ZERO"
    SUP_LIMIT_INF = "SUP_LIMIT_INF"
    CONSTANT_IN_LAMBDA = "CONSTANT_IN_LAMBDA"


@dataclass
class WeakNormResult:
    value: float
    witness_lambda: Optional[float]
    attained: SupKind
    diagnostics: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "witness_lambda": self.witness_lambda,
            "attained": self.attained.value,
            "probes": [{"lambda": lam, "score": s} for lam, s in self.diagnostics],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


# -- segment analysis ----------------------------------------------------------

def _seg_u(terms, u):
    """Segment value at ``r = e^u`` (array)."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    with np.errstate(over="ignore", invalid="ignore"):
        for t in terms:
            v = t.coeff * np.exp(t.exponent * u)
            if t.logpow:
                v = v * u
            out = out + v
    return out


def _deriv_sign(terms, u):
    """Sign-faithful rescaling of ``d/du`` of the segment value."""
    u = np.asarray(u, dtype=float)
    expo = np.array([t.exponent for t in terms])
    top = np.max(np.outer(u, expo), axis=1)
    out = np.zeros_like(u)
    for t in terms:
        w = np.exp(t.exponent * u - top)
        if t.logpow:
            out = out + t.coeff * w * (t.exponent * u + 1.0)
        else:
            out = out + t.coeff * w * t.exponent
    return out


def _end_limit(terms, at_zero: bool) -> float:
    """Limit of the segment value as ``r -> 0`` or ``r -> inf``."""
    key = (lambda t: (t.exponent, -t.logpow)) if at_zero else (lambda t: (-t.exponent, -t.logpow))
    d = min(terms, key=key)
    a, k, c = d.exponent, d.logpow, d.coeff
    if a == 0.0 and k == 0:
        return c
    grows = (a < 0) if at_zero else (a > 0)
    if a == 0.0:
        grows = True  # |ln r| -> inf at both ends
    if not grows:
        return 0.0
    sign = math.copysign(1.0, c)
    if k == 1 and at_zero:
        sign = -sign  # ln r < 0 near 0
    return sign * math.inf


def _features(terms) -> list:
    pts = [0.0]
    for i, s in enumerate(terms):
        if s.logpow and s.exponent != 0.0:
            pts.append(-1.0 / s.exponent)
        for t in terms[i + 1:]:
            if t.exponent != s.exponent:
                pts.append(math.log(abs(t.coeff / s.coeff)) / (s.exponent - t.exponent))
    return [p for p in pts if abs(p) < U_MAX]


def _stationary_points(terms, ulo: float, uhi: float) -> list:
    if len(terms) == 1:
        t = terms[0]
        if t.logpow and t.exponent != 0.0:
            u0 = -1.0 / t.exponent
            return [u0] if ulo < u0 < uhi else []
        return []
    a, b = max(ulo, -U_MAX), min(uhi, U_MAX)
    grid = [np.linspace(a, b, 2001)]
    for p in _features(terms):
        grid.append(np.linspace(max(a, p - 8.0), min(b, p + 8.0), 401))
    u = np.unique(np.concatenate(grid))
    u = u[(u > a) & (u < b)] if b > a else u[:0]
    if u.size < 2:
        return []
    d = _deriv_sign(terms, u)
    out = []
    idx = np.nonzero(np.sign(d[:-1]) * np.sign(d[1:]) < 0)[0]
    for i in idx:
        out.append(optimize.brentq(lambda x: float(_deriv_sign(terms, np.array([x]))[0]),
                                   u[i], u[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
    for i in np.nonzero(d[1:-1] == 0)[0]:
        out.append(float(u[i + 1]))
    return sorted(out)


@dataclass(frozen=True)
class _Piece:
    """Monotone piece of one segment in ``u = ln r``; ends may be +-inf."""

    terms: tuple
    ulo: float
    uhi: float
    vlo: float
    vhi: float

    @property
    def constant(self) -> bool:
        return (len(self.terms) == 1 and self.terms[0].exponent == 0.0
                and self.terms[0].logpow == 0)


def _pieces(g: RadialProfile) -> list:
    out = []
    for seg in g.segments:
        ulo = -math.inf if seg.lo == 0.0 else math.log(seg.lo)
        uhi = math.inf if math.isinf(seg.hi) else math.log(seg.hi)
        cuts = [ulo] + _stationary_points(seg.terms, ulo, uhi) + [uhi]
        for a, b in zip(cuts[:-1], cuts[1:]):
            if not b > a:
                continue
            va = _end_limit(seg.terms, True) if math.isinf(a) else float(_seg_u(seg.terms, [a])[0])
            vb = _end_limit(seg.terms, False) if math.isinf(b) else float(_seg_u(seg.terms, [b])[0])
            out.append(_Piece(seg.terms, a, b, va, vb))
    return out


def _bisect(terms, lam, a, b, increasing: bool):
    """Vectorized root of ``g(u) = lam`` on ``[a, b]`` (finite)."""
    lo = np.full_like(lam, a)
    hi = np.full_like(lam, b)
    if lam.size <= 4:
        # few levels (refinement steps): coarse bisection, then Brent
        for _ in range(16):
            mid = 0.5 * (lo + hi)
            v = _seg_u(terms, mid)
            above = v > lam if increasing else v < lam
            hi = np.where(above, mid, hi)
            lo = np.where(above, lo, mid)
        out = np.empty_like(lam)
        try:
            for j, L in enumerate(lam):
                fn = lambda x: float(_seg_u(terms, np.array([x]))[0]) - L
                out[j] = optimize.brentq(fn, lo[j], hi[j], xtol=1e-15, rtol=4 * np.finfo(float).eps)
            return out
        except (ValueError, RuntimeError):
            lo = np.full_like(lam, a)
            hi = np.full_like(lam, b)
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        v = _seg_u(terms, mid)
        above = v > lam if increasing else v < lam
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    return 0.5 * (lo + hi)


def _crossing(piece: _Piece, lam: np.ndarray) -> np.ndarray:
    """``u`` where a monotone piece crosses ``lam`` (assumed bracketed)."""
    inc = piece.vhi > piece.vlo
    if len(piece.terms) == 1 and piece.terms[0].logpow == 0:
        t = piece.terms[0]
        with np.errstate(divide="ignore", invalid="ignore"):
            u = np.log(lam / t.coeff) / t.exponent
        return np.clip(u, piece.ulo, piece.uhi)
    a = max(piece.ulo, -U_MAX)
    b = min(piece.uhi, U_MAX)
    return _bisect(piece.terms, lam, a, b, inc)


def _ball(R_exp: np.ndarray, s: float) -> np.ndarray:
    """``e^(s u)`` with ``u = -inf -> 0``."""
    with np.errstate(over="ignore"):
        return np.exp(s * R_exp)


def _measure(pieces, lam, gamma: float, n: int, inclusive: bool) -> np.ndarray:
    s = n + gamma
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    total = np.zeros_like(lam)
    for pc in pieces:
        if pc.constant:
            c = pc.vlo
            hit = (c >= lam) if inclusive else (c > lam)
            if not np.any(hit):
                continue
            if math.isinf(pc.uhi):
                raise DivergenceError("superlevel set has infinite measure")
            total = total + np.where(hit, _ball(np.array(pc.uhi), s) - _ball(np.array(pc.ulo), s), 0.0)
            continue
        top, bot = max(pc.vlo, pc.vhi), min(pc.vlo, pc.vhi)
        whole = lam <= bot
        part = (lam > bot) & (lam < top)
        if not (np.any(whole) or np.any(part)):
            continue
        inc = pc.vhi > pc.vlo
        if (np.any(whole) or (inc and np.any(part))) and math.isinf(pc.uhi):
            raise DivergenceError("superlevel set has infinite measure")
        ulo = np.full_like(lam, pc.ulo)
        uhi = np.full_like(lam, pc.uhi)
        if np.any(part):
            uc = _crossing(pc, lam[part])
            if inc:
                ulo[part] = uc
            else:
                uhi[part] = uc
        contrib = _ball(uhi, s) - _ball(ulo, s)
        total = total + np.where(whole | part, contrib, 0.0)
    return geom(n).omega_n / s * total


def superlevel_measure(g: RadialProfile, lam, gamma: float, n: int, inclusive: bool = False):
    """``mu_gamma({g > lam})`` (or ``{g >= lam}``) for scalar or array ``lam``."""
    arr = np.asarray(lam, dtype=float)
    if np.any(~(arr > 0)):
        raise RangeError("lambda must be positive", "lambda>0")
    if not gamma > -n:
        raise RangeError(f"gamma={gamma} must exceed -n", "gamma>-n")
    out = _measure(_pieces(g), arr, gamma, n, inclusive)
    return float(out[0]) if arr.ndim == 0 else out


def strong_norm(g: RadialProfile, q: float, gamma: float, n: int) -> float:
    """``(omega_n int |g|^q r^(gamma+n-1) dr)^(1/q)``; ``inf`` on divergence."""
    return weighted_norm(g, q, gamma, n)


# -- asymptotics ---------------------------------------------------------------

def _asymptote(terms, at_zero: bool, q: float, gamma: float, n: int):
    """Limit of ``lam mu^(1/q)`` as ``lam -> inf`` (head) or ``lam -> 0`` (tail).

    Returns 0.0, a finite value, or raises :class:`DivergenceError`.
    """
    key = (lambda t: (t.exponent, -t.logpow)) if at_zero else (lambda t: (-t.exponent, -t.logpow))
    d = min(terms, key=key)
    a, k, c = d.exponent, d.logpow, d.coeff
    s = n + gamma
    lim = _end_limit(terms, at_zero)
    if at_zero:
        if not lim == math.inf:
            return 0.0
        if a == 0.0:
            return 0.0  # |ln r| growth: measure decays exponentially in lam
        crit = s / (-a * q)
        if abs(crit - 1.0) <= CRIT_TOL:
            if k:
                raise DivergenceError("log-critical singularity at 0")
            return c * (geom(n).omega_n / s) ** (1.0 / q)
        if crit < 1.0:
            raise DivergenceError("weak norm unbounded as lambda -> inf")
        return 0.0
    if lim > 0:
        raise DivergenceError("profile does not decay at infinity")
    if c < 0 or a >= 0:
        return 0.0
    crit = s / (-a * q)
    if abs(crit - 1.0) <= CRIT_TOL:
        if k:
            raise DivergenceError("log-critical tail")
        return c * (geom(n).omega_n / s) ** (1.0 / q)
    if crit > 1.0:
        raise DivergenceError("weak norm unbounded as lambda -> 0")
    return 0.0


# -- supremum ------------------------------------------------------------------

def _score(pieces, lam, q, gamma, n):
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    return lam * _measure(pieces, lam, gamma, n, inclusive=True) ** (1.0 / q)


def _grid(a: float, b: float) -> np.ndarray:
    """Geometric grid strictly inside ``(a, b)``."""
    if not b > a * (1.0 + 1e-14):
        return np.empty(0)
    m = math.log(b / a) / math.log(GRID_RATIO)
    m = int(min(max(math.ceil(m), 2), GRID_CAP))
    return np.geomspace(a, b, m + 1)[1:-1]


def _refine(pieces, lam_grid, scores, i, q, gamma, n):
    lo = lam_grid[max(i - 1, 0)]
    hi = lam_grid[min(i + 1, len(lam_grid) - 1)]
    if not hi > lo:
        return lam_grid[i], scores[i]

    def neg(v):
        return -float(_score(pieces, [math.exp(v)], q, gamma, n)[0])

    a, b, c = math.log(lo), math.log(lam_grid[i]), math.log(hi)
    try:
        res = optimize.minimize_scalar(neg, bracket=(a, b, c), method="golden",
                                       tol=1e-10)
        x = float(res.x)
        if a <= x <= c and -res.fun > scores[i]:
            return math.exp(x), -float(res.fun)
    except ValueError:
        pass
    return lam_grid[i], scores[i]


def weak_norm(g: RadialProfile, params=None, *, q: float = None, gamma: float = None,
              n: int = None) -> WeakNormResult:
    """``sup_lam lam * mu_gamma({|g| > lam})^(1/q)``.

    ``params`` supplies ``n, q, gamma``; keyword arguments override it.
    """
    if params is not None:
        n = params.n if n is None else n
        q = params.q if q is None else q
        gamma = params.gamma if gamma is None else gamma
    if not gamma > -n:
        raise RangeError(f"gamma={gamma} must exceed -n", "gamma>-n")
    if g.is_zero:
        return WeakNormResult(0.0, None, SupKind.SUP_LIMIT_ZERO, [])
    pieces = _pieces(g)

    head = 0.0
    if g.segments[0].lo == 0.0:
        head = _asymptote(g.segments[0].terms, True, q, gamma, n)
    tail = 0.0
    if math.isinf(g.segments[-1].hi):
        tail = _asymptote(g.segments[-1].terms, False, q, gamma, n)
    unbounded = any(math.isinf(v) and v > 0 for pc in pieces for v in (pc.vlo, pc.vhi))

    crit = sorted({v for pc in pieces for v in (pc.vlo, pc.vhi) if math.isfinite(v) and v > 0})
    probes_l, probes_s = [], []
    best_lam, best = None, -1.0

    def take(lams):
        if len(lams) == 0:
            return None
        sc = _score(pieces, lams, q, gamma, n)
        probes_l.extend(lams.tolist())
        probes_s.extend(sc.tolist())
        i = int(np.argmax(sc))
        return i, sc

    if crit:
        c_arr = np.array(crit)
        i, sc = take(c_arr)
        if sc[i] > best:
            best, best_lam = float(sc[i]), float(c_arr[i])
        edges = [crit[0] * 10.0 ** -OPEN_DECADES] + crit
        if unbounded:
            edges.append(crit[-1] * 10.0 ** OPEN_DECADES)
        brackets = list(zip(edges[:-1], edges[1:]))
    else:
        brackets = [(1e-3, 1e3)]
    for lo, hi in brackets:
        grid = _grid(lo, hi)
        r = take(grid)
        if r is None:
            continue
        i, sc = r
        lam_i, s_i = _refine(pieces, grid, sc, i, q, gamma, n)
        if s_i > best:
            best, best_lam = float(s_i), float(lam_i)

    diag = sorted(zip(probes_l, probes_s))
    if len(diag) > 400:
        step = math.ceil(len(diag) / 400)
        keep = set(range(0, len(diag), step)) | {int(np.argmax([s for _, s in diag]))}
        diag = [diag[j] for j in sorted(keep)]
    if best_lam is not None and all(lam != best_lam for lam, _ in diag):
        diag.append((best_lam, best))
        diag.sort()

    scores = np.array(probes_s)
    lams = np.array(probes_l)
    flat = (scores.size >= 3 and scores.max() > 0
            and (scores.max() - scores.min()) <= CONST_TOL * scores.max()
            and math.log10(lams.max() / lams.min()) >= 3.0)
    if flat:
        value = max(best, head, tail)
        return WeakNormResult(value, None, SupKind.CONSTANT_IN_LAMBDA, diag)
    # a limit within rounding of the best probe is the supremum itself
    slack = 1.0 - CONST_TOL
    if tail > 0 and tail >= best * slack and tail >= head:
        return WeakNormResult(max(tail, best), None, SupKind.SUP_LIMIT_ZERO, diag)
    if head > 0 and head >= best * slack:
        return WeakNormResult(max(head, best), None, SupKind.SUP_LIMIT_INF, diag)
    if best <= 0:
        return WeakNormResult(0.0, None, SupKind.SUP_LIMIT_ZERO, diag)
    return WeakNormResult(best, best_lam, SupKind.SUP_ATTAINED, diag)

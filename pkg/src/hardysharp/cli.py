"""Command-line front-end.

Subcommands: ``constant``, ``verify``, ``limit``, ``oracle``, ``sweep``.
Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import limiting, oracle, sharpness
from .errors import HardySharpError, ValidationError
from .operators import OperatorKind
from .params import validate_adjoint, validate_forward, validate_limiting
from .profile import profile_from_json, profile_to_list

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
KINDS = {"forward": OperatorKind.FORWARD, "forward_p": OperatorKind.FORWARD_P,
         "adjoint": OperatorKind.ADJOINT}
SWEEP_COLUMNS = sharpness.CSV_COLUMNS + ("status",)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict
    schedules: dict = field(default_factory=dict)
    seed: int = 0
    output_format: str = "table"
    output_path: Optional[str] = None


# -- rendering -------------------------------------------------------------------

def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _table(header, rows) -> str:
    cells = [[_fmt(c) for c in header]] + [[_fmt(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(c) for c in r])
    return buf.getvalue()


def _render(cfg: RunConfig, header, rows, payload) -> str:
    if cfg.output_format == "csv":
        return _csv(header, rows)
    if cfg.output_format == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return _table(header, rows)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _raw_params(ns) -> dict:
    """Tuple from flags; with several of q, alpha, gamma absent, gamma then alpha default to 0."""
    d = {k: getattr(ns, k, None) for k in ("n", "p", "q", "alpha", "beta", "gamma")}
    for k in ("gamma", "alpha"):
        if sum(d[u] is None for u in ("q", "alpha", "gamma")) > 1:
            d[k] = 0.0 if d[k] is None else d[k]
    return d


def _floats(text: Optional[str]) -> Optional[list]:
    if text is None:
        return None
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"not a comma-separated list of numbers: {text!r}") from None


# -- commands --------------------------------------------------------------------

def cmd_constant(cfg: RunConfig) -> int:
    rows, payload = [], {}
    errors = []
    for label, validate, const in (("forward", validate_forward, sharpness.c_sharp),
                                   ("adjoint", validate_adjoint, sharpness.c_sharp_adjoint)):
        try:
            P = validate(dict(cfg.params))
            C = const(P)
            rows.append([label, P.n, P.p, P.q, P.alpha, P.beta, P.gamma, C, "ok"])
            payload[label] = {"params": P.as_dict(), "constant": C, "flags": list(P.flags)}
        except ValidationError as exc:
            errors.append(exc)
            rows.append([label, cfg.params.get("n"), cfg.params.get("p"), cfg.params.get("q"),
                         cfg.params.get("alpha"), cfg.params.get("beta"), cfg.params.get("gamma"),
                         None, f"{type(exc).__name__}[{exc.constraint}]: {exc}"])
            payload[label] = {"error": type(exc).__name__, "constraint": exc.constraint,
                              "message": str(exc)}
    header = ["kind", "n", "p", "q", "alpha", "beta", "gamma", "constant", "status"]
    _emit(cfg, _render(cfg, header, rows, payload))
    return EXIT_USAGE if len(errors) == 2 else EXIT_OK


def _verify_reports(P, kind: OperatorKind, schedule, count: int, seed: int, sweep_op: str):
    if kind is OperatorKind.ADJOINT:
        sweep = sharpness.sharpness_sweep(P, kind, schedule)
        bound = sharpness.upper_bound_check(P, kind, count, seed) if count else []
    else:
        op = OperatorKind.FORWARD_P if sweep_op == "holder" else OperatorKind.FORWARD
        sweep = sharpness.sharpness_sweep(P, op, schedule)
        bound = sharpness.upper_bound_check(P, OperatorKind.FORWARD, count, seed) if count else []
    return sweep, bound


def cmd_verify(cfg: RunConfig) -> int:
    kind = KINDS[cfg.schedules["kind"]]
    P = (validate_adjoint if kind is OperatorKind.ADJOINT else validate_forward)(dict(cfg.params))
    sweep, bound = _verify_reports(P, kind, cfg.schedules.get("schedule"),
                                   cfg.schedules.get("random", 0), cfg.seed,
                                   cfg.schedules.get("sweep_operator", "holder"))
    tol = cfg.schedules.get("tolerance", 0.01)
    last = sweep[-1]
    if kind is OperatorKind.ADJOINT and P.p > 1:
        sweep_ok = abs(last.gap) <= 1e-10 * last.formula_constant
    else:
        sweep_ok = (sharpness.gaps_decreasing(sweep, strict=False)
                    and last.gap <= tol * last.formula_constant)
    sweep_ok = sweep_ok and all(r.within_bound for r in sweep)
    violations = [r for r in bound if not r.within_bound]
    ok = sweep_ok and not violations
    rows = [r.csv_row() + [r.test_function] for r in sweep + violations]
    header = list(sharpness.CSV_COLUMNS) + ["test_function"]
    payload = {"passed": ok, "sweep": [r.as_dict() for r in sweep],
               "random_profiles": len(bound),
               "violations": [r.as_dict() for r in violations]}
    text = _render(cfg, header, rows, payload)
    if cfg.output_format == "table":
        text += (f"sweep {'ok' if sweep_ok else 'FAILED'}; random profiles: {len(bound)}, "
                 f"violations: {len(violations)}\n")
        for r in violations:
            text += f"violating profile: {json.dumps(profile_to_list(r.profile))}\n"
    _emit(cfg, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_limit(cfg: RunConfig) -> int:
    spec = cfg.schedules["profile"]
    if spec in limiting.BUILTIN_PROFILES:
        f = limiting.builtin_profile(spec)
    else:
        try:
            f = profile_from_json(spec)
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"malformed profile: {exc}") from None
    P = validate_limiting(cfg.params["n"], cfg.params["p"], cfg.params["beta"])
    lam_min = cfg.schedules.get("lambda_min", 1e-8)
    if not 0 < lam_min < 1:
        raise UsageError("--lambda-min must lie in (0, 1)")
    k = int(round(-math.log10(lam_min)))
    lams = [10.0 ** -j for j in range(0, k + 1)]
    tr = limiting.limiting_weak(f, P, lams)
    tol = cfg.schedules.get("tolerance", 0.02)
    if P.p == 1:
        ok = tr.abs_err <= tol * tr.target if tr.target > 0 else tr.abs_err == 0
    else:
        ok = abs(tr.extrapolated_limit) <= cfg.schedules.get("decay", 1e-3) * max(
            float(max(tr.scores)), 0.0) or float(max(tr.scores)) == 0.0
    summary = tr.summary()
    summary["passed"] = bool(ok)
    if cfg.output_format == "json":
        payload = dict(summary, trace=[{"lambda": float(a), "score": float(b)}
                                       for a, b in zip(tr.lambdas, tr.scores)])
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif cfg.output_format == "csv":
        text = tr.to_csv()
    else:
        text = _table(["lambda", "score"], [[float(a), float(b)] for a, b in zip(tr.lambdas, tr.scores)])
        text += (f"limit {tr.extrapolated_limit!r}  target {tr.target!r}  "
                 f"rel_err {tr.rel_err!r}  {'ok' if ok else 'FAILED'}\n")
    _emit(cfg, text)
    if cfg.output_format == "csv" and not cfg.output_path:
        sys.stderr.write(json.dumps(summary, sort_keys=True) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(cfg: RunConfig) -> int:
    samples = cfg.schedules["samples"]
    if samples < oracle.MIN_SAMPLES:
        raise UsageError(f"--samples {samples} below the minimum {oracle.MIN_SAMPLES}")
    P = validate_forward(dict(cfg.params))
    try:
        F = oracle.builtin_field(cfg.schedules["field"], P.n)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    radii = cfg.schedules.get("radii") or [0.5, 1.0, 2.0, 4.0]
    rep = oracle.lemma21_check(F, P, radii, samples, cfg.seed)
    rows = [[c.radius, c.mc, c.mc_se, c.closed, c.closed_se, c.z, c.attempts,
             "pass" if c.passed else "FAIL"] for c in rep.checks]
    header = ["radius", "mc", "mc_se", "closed", "closed_se", "z", "attempts", "status"]
    text = _render(cfg, header, rows, rep.as_dict())
    if cfg.output_format == "table" and rep.contraction:
        c = rep.contraction
        text += (f"norm contraction: radial {c['radial_norm']!r} <= field {c['field_norm']!r} "
                 f"+ 3*{c['field_se']!r}: {'pass' if c['passed'] else 'FAIL'}\n")
    _emit(cfg, text)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_sweep(cfg: RunConfig) -> int:
    s = cfg.schedules
    kind = KINDS[s["kind"]]
    grid = list(itertools.product(s["n"], s["p"], s["beta"], s["alpha"], s["gamma"]))
    if not grid:
        raise UsageError("empty grid")
    rows, payload = [], []
    for n, p, beta, alpha, gamma in grid:
        raw = {"n": n, "p": p, "q": None, "alpha": alpha, "beta": beta, "gamma": gamma}
        kind_label = kind.value
        try:
            P = (validate_adjoint if kind is OperatorKind.ADJOINT else validate_forward)(raw)
            op = kind
            if kind is OperatorKind.FORWARD and s.get("sweep_operator", "holder") == "holder":
                op = OperatorKind.FORWARD_P
            rep = sharpness.sharpness_sweep(P, op, s.get("schedule"))[-1]
            rows.append(rep.csv_row() + ["ok"])
            payload.append(dict(rep.as_dict(), status="ok"))
        except HardySharpError as exc:
            tag = f"{type(exc).__name__}[{getattr(exc, 'constraint', '')}]"
            rows.append([n, p, "", alpha, beta, gamma, kind_label, "", "", "", "", "", tag])
            payload.append({"params": raw, "kind": kind_label, "status": tag,
                            "message": str(exc)})
    _emit(cfg, _render(cfg, list(SWEEP_COLUMNS), rows, payload))
    return EXIT_OK


COMMANDS = {"constant": cmd_constant, "verify": cmd_verify, "limit": cmd_limit,
            "oracle": cmd_oracle, "sweep": cmd_sweep}


# -- argument parsing ------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--out", default=None, help="write output to PATH instead of stdout")
    p.add_argument("--seed", type=int, default=0)


def _tuple_args(p: argparse.ArgumentParser, required_beta: bool = True) -> None:
    p.epilog = ("One of q, alpha, gamma may be omitted and is solved from the scaling "
                "relation; if more are omitted, gamma and then alpha default to 0.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float, required=required_beta)
    p.add_argument("--gamma", type=float)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hardysharp",
                                 description="Sharp weak-type constants for Hardy type operators.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constant", help="sharp constants for a parameter tuple")
    _tuple_args(p)
    _common(p)

    p = sub.add_parser("verify", help="extremizer sweep plus random-profile upper bound")
    _tuple_args(p)
    p.add_argument("--kind", choices=("forward", "adjoint"), default="forward")
    p.add_argument("--schedule", help="comma-separated deltas (forward) or shell widths (p=1 adjoint)")
    p.add_argument("--random", type=int, default=200, help="number of random profiles")
    p.add_argument("--tolerance", type=float, default=0.01)
    p.add_argument("--sweep-operator", choices=("holder", "hardy"), default="holder",
                   help="forward sweeps: H_{beta,p} of the construction or H_beta itself")
    _common(p)

    p = sub.add_parser("limit", help="lambda -> 0 trace of lam |{H f > lam}|^(1/q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--profile", default="step",
                   help="builtin name (step, twostep, powerbump) or JSON piece list")
    p.add_argument("--lambda-min", type=float, default=1e-8)
    p.add_argument("--tolerance", type=float, default=0.02)
    p.add_argument("--decay", type=float, default=1e-3)
    _common(p)

    p = sub.add_parser("oracle", help="Monte Carlo check that radialization preserves H_beta")
    _tuple_args(p)
    p.add_argument("--field", default="offset-gaussian",
                   help="offset-gaussian, abs-y1 or radial-step")
    p.add_argument("--radii", help="comma-separated radii (default 0.5,1,2,4)")
    p.add_argument("--samples", type=int, default=1_000_000)
    _common(p)

    p = sub.add_parser("sweep", help="one report row per grid point")
    p.add_argument("--kind", choices=("forward", "adjoint"), default="forward")
    p.add_argument("--n", default="1,2,3")
    p.add_argument("--p", default="1,1.5,2")
    p.add_argument("--beta", default="0,0.25")
    p.add_argument("--alpha", default="0")
    p.add_argument("--gamma", default="0")
    p.add_argument("--schedule")
    p.add_argument("--sweep-operator", choices=("holder", "hardy"), default="holder")
    _common(p)
    return ap


def config_from_args(ns) -> RunConfig:
    cmd = ns.command
    sched: dict = {}
    params: dict = {}
    if cmd in ("constant", "verify", "oracle"):
        params = _raw_params(ns)
    if cmd == "verify":
        sched = {"kind": ns.kind, "schedule": _floats(ns.schedule), "random": ns.random,
                 "tolerance": ns.tolerance, "sweep_operator": ns.sweep_operator}
    elif cmd == "limit":
        params = {"n": ns.n, "p": ns.p, "beta": ns.beta}
        sched = {"profile": ns.profile, "lambda_min": ns.lambda_min, "tolerance": ns.tolerance,
                 "decay": ns.decay}
    elif cmd == "oracle":
        sched = {"field": ns.field, "radii": _floats(ns.radii), "samples": ns.samples}
    elif cmd == "sweep":
        ints = _floats(ns.n)
        if any(int(x) != x for x in ints):
            raise UsageError("--n takes integers")
        sched = {"kind": ns.kind, "n": [int(x) for x in ints], "p": _floats(ns.p),
                 "beta": _floats(ns.beta), "alpha": _floats(ns.alpha),
                 "gamma": _floats(ns.gamma), "schedule": _floats(ns.schedule),
                 "sweep_operator": ns.sweep_operator}
    if ns.seed < 0:
        raise UsageError("--seed must be non-negative")
    return RunConfig(cmd, params, sched, ns.seed, ns.format, ns.out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ValidationError) as exc:
        constraint = getattr(exc, "constraint", None)
        extra = f" [{constraint}]" if constraint else ""
        sys.stderr.write(f"error{extra}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

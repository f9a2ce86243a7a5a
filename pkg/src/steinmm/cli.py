"""Command-line front end.

Subcommands: ``estimate``, ``asym``, ``tune``, ``simulate``, ``reproduce``.
Exit codes: 0 ok, 1 usage/parse problem, 2 degenerate estimate,
3 optimum on the search boundary (tune only).  ``STEINMM_THREADS`` caps
simulation workers.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .asymptotics import exp_asym, ig_asym, nb_nu_asym, nb_pi_asym
from .distributions import ExpParams, IGParams, Sample, nb_param_convert
from .errors import DegenerateDenominatorError, DegeneracyError, DomainError, \
    FixtureError, InfeasibleError
from .estimators import ig_estimate, nb_estimate_nu, nb_estimate_pi, stein_exp
from .simulation import Contamination, SimSpec, TABLE_IDS, reproduce, run_sim
from .tuning import TuneSpec, optimize_weight
from .weights import parse_weight

WEIGHT_GRAMMAR = ("identity | pow:a=A | log1p | geom1m:u=U | const | recip | "
                  "geom:alpha=A | shiftpow:a=A")


def _fmt(value, full: bool) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}" if full else f"{value:.6g}"
    return str(value)


def _emit(payload: dict, args) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        width = max(len(k) for k in payload)
        for k, v in payload.items():
            print(f"{k:<{width}}  {_fmt(v, args.full_precision)}")


def _read_data(path: str, dist: str) -> Sample:
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.reader(fh):
            rec = [c.strip() for c in rec if c.strip()]
            if not rec:
                continue
            if rec[0].lower() in ("x", "value"):
                continue  # header
            rows.append(rec)
    if not rows:
        raise DomainError(f"{path}: no data rows")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise DomainError(f"{path}: inconsistent column counts")
    if ncols == 1:
        values = np.array([float(r[0]) for r in rows])
    elif ncols == 2 and dist == "nb":
        vals = [int(float(r[0])) for r in rows]
        cnts = [int(float(r[1])) for r in rows]
        if any(c < 0 for c in cnts):
            raise DomainError(f"{path}: negative frequency count")
        values = np.repeat(vals, cnts).astype(float)
    else:
        raise DomainError(f"{path}: expected one column, or value,count for nb")
    return Sample(values, kind=dist)


def _parse_params(dist: str, text: str):
    pairs = {}
    for item in text.split(","):
        key, _, val = item.partition("=")
        if not val:
            raise DomainError(f"bad --params entry {item!r}")
        pairs[key.strip()] = float(val)
    if dist == "exp":
        if set(pairs) != {"lambda"}:
            raise DomainError("exp needs --params lambda=L")
        return ExpParams(pairs["lambda"])
    if dist == "ig":
        if set(pairs) != {"mu", "lambda"}:
            raise DomainError("ig needs --params mu=M,lambda=L")
        return IGParams(mu=pairs["mu"], lam=pairs["lambda"])
    if set(pairs) == {"nu", "pi"}:
        return nb_param_convert(nu=pairs["nu"], pi=pairs["pi"])
    if set(pairs) == {"mu", "nu"}:
        return nb_param_convert(mu=pairs["mu"], nu=pairs["nu"])
    if set(pairs) == {"mu", "pi"}:
        return nb_param_convert(mu=pairs["mu"], pi=pairs["pi"])
    raise DomainError("nb needs two of mu/nu/pi in --params")


def _nb_target(dist: str, target: str | None) -> str:
    if dist == "exp":
        return "exp_lambda"
    if dist == "ig":
        return "ig_lambda"
    if target in (None, "nu"):
        return "nb_nu"
    if target == "pi":
        return "nb_pi"
    raise DomainError(f"nb target must be nu or pi, got {target!r}")


def _cmd_estimate(args) -> int:
    data = _read_data(args.data, args.dist)
    w = parse_weight(args.weight)
    if args.dist == "exp":
        res = stein_exp(data, w)
        payload = {"target": "lambda", "estimate": res.value}
    elif args.dist == "ig":
        mu_hat, res = ig_estimate(data, w)
        payload = {"target": "lambda", "estimate": res.value, "mu_hat": mu_hat}
    else:
        target = _nb_target("nb", args.target)
        res = nb_estimate_nu(data, w) if target == "nb_nu" \
            else nb_estimate_pi(data, w)
        payload = {"target": target.split("_")[1], "estimate": res.value}
    payload.update({"n": res.n, "weight": w.spec, "denominator": res.denominator})
    if res.warnings:
        payload["warnings"] = "; ".join(res.warnings)
    _emit(payload, args)
    return 0


def _cmd_asym(args) -> int:
    params = _parse_params(args.dist, args.params)
    w = parse_weight(args.weight)
    target = _nb_target(args.dist, args.target)
    fn = {"exp_lambda": lambda: exp_asym(params, w, args.n),
          "ig_lambda": lambda: ig_asym(params, w, args.n),
          "nb_nu": lambda: nb_nu_asym(params, w, args.n),
          "nb_pi": lambda: nb_pi_asym(params, w, args.n)}[target]
    s = fn()
    _emit({"target": target, "weight": w.spec, "n": s.n,
           "variance": s.variance, "sd": s.sd, "bias": s.bias, "mse": s.mse},
          args)
    return 0


def _cmd_tune(args) -> int:
    params = _parse_params(args.dist, args.params)
    target = _nb_target(args.dist, args.target)
    lo, _, hi = args.bracket.partition(",")
    spec = TuneSpec(params=params, family=args.family,
                    criterion=args.criterion, n=args.n,
                    bracket=(float(lo), float(hi)), target=target)
    res = optimize_weight(spec)
    _emit({"family": args.family, "criterion": spec.criterion, "n": args.n,
           "optimum": res.optimum, "value": res.value,
           "evaluations": res.evaluations, "boundary": res.boundary,
           "multimodal": res.multimodal}, args)
    return 3 if res.boundary else 0


def _load_sim_spec(path: str, seed, reps) -> SimSpec:
    with open(path) as fh:
        raw = json.load(fh)
    dist = raw["dist"]
    params = _parse_params(dist, ",".join(f"{k}={v}"
                                          for k, v in raw["params"].items()))
    cont = raw.get("contamination")
    return SimSpec(
        params=params,
        target=_nb_target(dist, raw.get("target")),
        weight=parse_weight(raw["weight"]),
        n=int(raw["n"]),
        reps=int(reps if reps is not None else raw.get("reps", 10000)),
        seed=int(seed if seed is not None else raw.get("seed", 0)),
        contamination=Contamination(cont["fraction"], cont["shift"]) if cont else None,
    )


def _cmd_simulate(args) -> int:
    spec = _load_sim_spec(args.spec, args.seed, args.reps)
    res = run_sim(spec)
    payload = {"target": spec.target, "weight": spec.weight.spec, "n": spec.n,
               "reps": spec.reps, "seed": spec.seed, "mean": res.mean,
               "sd": res.sd, "bias": res.bias, "mse": res.mse,
               "failed_reps": res.failed_reps, "reps_used": res.reps_used}
    if args.out:
        _write_csv(args.out, [payload])
    _emit(payload, args)
    return 0


def _write_csv(path, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)


def _cmd_reproduce(args) -> int:
    kwargs = {}
    if args.reps is not None:
        kwargs["reps"] = args.reps
    if args.seed is not None:
        kwargs["seed"] = args.seed
    rows = reproduce(args.table, **kwargs)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / f"{args.table}.csv"
    _write_csv(csv_path, rows)
    (outdir / f"{args.table}.json").write_text(json.dumps(rows, indent=1))
    dev_cols = [k for k in rows[0] if k.endswith("_dev") or k == "abs_dev"]
    worst = max(max(float(r[c]) for c in dev_cols) for r in rows)
    print(f"wrote {csv_path} ({len(rows)} rows); max abs deviation {worst:.6g}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="steinmm",
                                description="Stein-identity moment estimation")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true",
                        help="emit a JSON object instead of aligned text")
        sp.add_argument("--full-precision", action="store_true",
                        help="print 17 significant digits")

    sp = sub.add_parser("estimate", help="point estimate from a CSV dataset")
    sp.add_argument("--dist", required=True, choices=("exp", "ig", "nb"))
    sp.add_argument("--target", choices=("lambda", "nu", "pi"))
    sp.add_argument("--weight", required=True, help=WEIGHT_GRAMMAR)
    sp.add_argument("--data", required=True)
    common(sp)
    sp.set_defaults(fn=_cmd_estimate)

    sp = sub.add_parser("asym", help="asymptotic variance/bias/mse")
    sp.add_argument("--dist", required=True, choices=("exp", "ig", "nb"))
    sp.add_argument("--target", choices=("lambda", "nu", "pi"))
    sp.add_argument("--params", required=True,
                    help="e.g. lambda=1 | mu=1,lambda=1 | mu=2.5,nu=1")
    sp.add_argument("--weight", required=True, help=WEIGHT_GRAMMAR)
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=_cmd_asym)

    sp = sub.add_parser("tune", help="optimize a weight-family parameter")
    sp.add_argument("--dist", required=True, choices=("exp", "ig", "nb"))
    sp.add_argument("--target", choices=("lambda", "nu", "pi"))
    sp.add_argument("--params", required=True)
    sp.add_argument("--family", required=True,
                    choices=("pow", "geom1m", "geom", "shiftpow"))
    sp.add_argument("--criterion", required=True,
                    choices=("variance", "bias", "mse"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bracket", required=True, help="lo,hi")
    common(sp)
    sp.set_defaults(fn=_cmd_tune)

    sp = sub.add_parser("simulate", help="Monte Carlo run from a JSON spec")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--reps", type=int)
    sp.add_argument("--out", help="also write the result row as CSV")
    common(sp)
    sp.set_defaults(fn=_cmd_simulate)

    sp = sub.add_parser("reproduce", help="recompute a published table")
    sp.add_argument("--table", required=True, choices=TABLE_IDS)
    sp.add_argument("--reps", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out", required=True, help="output directory")
    common(sp)
    sp.set_defaults(fn=_cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.fn(args)
    except (DegenerateDenominatorError, DegeneracyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, FixtureError, InfeasibleError, OSError,
            ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if "weight" in str(exc):
            print(f"weight grammar: {WEIGHT_GRAMMAR}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``randcomplex <subcommand> ...``.

Exit status is 0 on success, 2 when a computation hit a resource budget
(including any budget-exceeded experiment record) and 1 on any other error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import predictions
from .boolean import (
    MonotoneBooleanFunction,
    complex_of_function,
    decision_tree_complexity,
    evasive_census,
    kss_consistency,
)
from .complex import ResourceError, euler_characteristic, labels_of
from .experiments import (
    ExperimentConfig,
    any_budget_exceeded,
    run_experiment,
    write_results,
)
from .generators import AdmissiblePair, sample_pure_random, sample_uniform_layer
from .homology import betti_numbers, count_holes, euler_from_betti
from .shellability import (
    h_vector,
    is_cohen_macaulay,
    is_shellable,
    shelling_obstruction,
)
from .textio import format_complex, parse_pair, read_complex

SCANS = {
    "scan-skeleton": "skeleton",
    "scan-euler": "euler",
    "scan-homology": "homology",
    "scan-shell": "shell",
    "scan-subcomplex": "subcomplex",
    "census": "census",
}


def _emit(payload, out: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _number(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


# -- single-object subcommands --------------------------------------------------------

def cmd_predict(args) -> int:
    params = {}
    for item in args.params:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"parameter {item!r} is not of the form key=value")
        params[key] = _number(value)
    value = predictions.evaluate(args.formula, **params)
    _emit({"formula": args.formula, "params": params, "value": value}, args.out)
    return 0


def cmd_sample(args) -> int:
    if args.seed is None:
        raise ValueError("--seed is required")
    rng = np.random.default_rng(args.seed)
    if args.model == "uniform":
        if args.pair:
            n, t, a, b = parse_pair(Path(args.pair).read_text())
            pair = AdmissiblePair(n, t, tuple(sorted(a)), tuple(sorted(b)))
        else:
            t = args.t if args.t is not None else args.n // 2
            pair = AdmissiblePair(args.n, t)
        cx = sample_uniform_layer(pair, rng)
    else:
        if args.t is None or args.p is None:
            raise ValueError("the pure model needs --t and --p")
        cx = sample_pure_random(args.n, args.t, args.p, rng)
    _emit(format_complex(cx), args.out)
    return 0


def cmd_homology(args) -> int:
    cx = read_complex(args.complex)
    budget = args.mem_budget_mb * 1024 * 1024 // 8
    profile = betti_numbers(cx, args.field, reduced=args.reduced, budget=budget)
    out = {
        "n": cx.n,
        "field": args.field,
        "reduced": args.reduced,
        "betti": list(profile.betti),
        "chi_f": euler_characteristic(cx),
        "chi_betti": euler_from_betti(profile),
    }
    if args.reduced:
        out["betti_minus_one"] = profile.minus_one
    if args.holes_size is not None:
        out["holes"] = count_holes(cx, args.holes_size).as_dict()
    _emit(out, args.out)
    return 0


def cmd_shell(args) -> int:
    cx = read_complex(args.complex)
    out: dict = {"n": cx.n, "facets": cx.facet_count, "pure": cx.is_pure()}
    code = 0
    if cx.is_pure():
        obs = shelling_obstruction(cx)
        out["obstruction"] = None if obs is None else {
            "x": list(labels_of(obs.base)),
            "components": [[list(labels_of(f)) for f in comp] for comp in obs.components],
        }
    if args.exact and not args.obstruction_only:
        result = is_shellable(cx, args.node_budget)
        out["exact"] = result.as_dict()
        if result.verdict == "budget-exceeded":
            code = 2
    if args.h_vector:
        if not cx.is_pure():
            raise ValueError("the h-vector needs a pure complex")
        h = h_vector(cx)
        out["h_vector"] = list(h.h)
        out["h_top_sign"] = (h.h_top > 0) - (h.h_top < 0)
    if args.cm:
        cm = is_cohen_macaulay(cx, args.field)
        out["cohen_macaulay"] = {"verdict": cm.cohen_macaulay,
                                 "face": list(cm.face) if cm.face is not None else None,
                                 "degree": cm.degree}
    _emit(out, args.out)
    return code


def cmd_evasive(args) -> int:
    if args.census:
        _emit(evasive_census(args.n).as_dict(), args.out)
        return 0
    if not args.function:
        raise ValueError("give --census or --function <file>")
    f = MonotoneBooleanFunction.from_hex(args.n, Path(args.function).read_text())
    stats = decision_tree_complexity(f)
    out = {"n": f.n, "table": f.to_hex(), "depth": stats.depth, "evasive": stats.evasive,
           "constant": f.is_constant}
    if not f.is_constant:
        out["kss_consistent"] = kss_consistency(f)
        out["complex"] = format_complex(complex_of_function(f)).splitlines()
    _emit(out, args.out)
    return 0


# -- experiments -------------------------------------------------------------------

def _config_from_args(args, experiment: str) -> ExperimentConfig:
    overrides = {
        "model": args.model, "n": args.n, "t": args.t, "p": args.p, "seed": args.seed,
        "trials": args.trials, "out": args.out, "format": args.format,
        "workers": args.workers, "mem_budget_mb": args.mem_budget_mb,
        "t_prime": args.t_prime, "k": args.k, "p_scale": args.p_scale,
        "regime": args.regime, "field_char": args.field, "pattern": args.pattern,
        "pair": args.pair,
    }
    if args.config:
        config = ExperimentConfig.from_json(args.config, experiment=experiment, **overrides)
    else:
        config = ExperimentConfig(experiment, **{k: v for k, v in overrides.items()
                                                 if v is not None})
    if config.experiment != experiment:
        raise ValueError(f"config is for {config.experiment!r}")
    return config


def cmd_scan(args) -> int:
    config = _config_from_args(args, SCANS[args.command])
    records = run_experiment(config)
    text = write_results(config, records)
    if not config.out:
        sys.stdout.write(text)
    return 2 if any_budget_exceeded(records) else 0


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randcomplex",
        description="Random uniform-layer and pure random simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--mem-budget-mb", type=int, default=512)

    p = sub.add_parser("predict", help="evaluate a closed-form prediction")
    p.add_argument("formula", help=f"one of {sorted([*predictions.FORMULAS, 'skeleton_threshold_linear'])}")
    p.add_argument("params", nargs="*", help="key=value parameters")
    p.add_argument("--out")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("sample", help="draw one complex; prints it in the text format",
                       description="Samples RP(n,t,p) or U(n,t,A,B) for a fixed admissible pair "
                                   "(not the full uniform distribution over U(n)).")
    p.add_argument("--model", choices=["pure", "uniform"], default="pure")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pair", help="admissible pair file with [A]/[B] sections")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("homology", help="Betti numbers and holes of a complex file")
    p.add_argument("complex")
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--holes-size", type=int)
    common(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("shell", help="shellability tools for a complex file")
    p.add_argument("complex")
    p.add_argument("--exact", action="store_true", help="budgeted exhaustive search")
    p.add_argument("--obstruction-only", action="store_true")
    p.add_argument("--h-vector", action="store_true")
    p.add_argument("--cm", action="store_true", help="Reisner test")
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--node-budget", type=int, default=200_000)
    common(p)
    p.set_defaults(func=cmd_shell)

    p = sub.add_parser("evasive", help="decision-tree complexity of monotone functions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--census", action="store_true")
    p.add_argument("--function", help="file holding a hex truth table (x_1 least significant)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_evasive)

    for name in SCANS:
        p = sub.add_parser(name, help=f"run the {SCANS[name]} experiment")
        p.add_argument("--config", help="JSON file with ExperimentConfig fields")
        p.add_argument("--model", choices=["pure", "uniform"])
        p.add_argument("--n", type=int, nargs="+")
        p.add_argument("--t", type=_number)
        p.add_argument("--p", type=float, nargs="+")
        p.add_argument("--p-scale", choices=["absolute", "threshold", "per_n"])
        p.add_argument("--t-prime", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--regime", choices=["constant", "linear"])
        p.add_argument("--field", type=int)
        p.add_argument("--pattern", help="complex file or built-in pattern name")
        p.add_argument("--pair", help="admissible pair file")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--workers", type=int)
        p.add_argument("--out")
        p.add_argument("--mem-budget-mb", type=int)
        p.set_defaults(func=cmd_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # reported, not raised, so scripts see exit code 1
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

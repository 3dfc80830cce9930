"""Batch command-line interface.

Commands: ``price``, ``greeks``, ``surface``, ``simulate``, ``validate``.
Results go to stdout as JSON (default) or CSV; diagnostics go to stderr.
Exit codes: 0 ok, 1 domain error, 2 usage error, 3 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import sys

import numpy as np

from .errors import ConfigError, DomainError
from .greeks import GREEK_NAMES, GreekLadder, ladder
from .model import MarketState, ModelParams, with_value
from .oracles import McConfig, mc_price, simulate_paths
from .pricing import OptionKind, price

log = logging.getLogger("crisisgreeks")

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VALIDATION = 0, 1, 2, 3
AXIS_NAMES = ("S", "K", "sigma", "alpha", "T", "t")
LADDER_COLUMNS = ("price",) + GREEK_NAMES

# params-file key -> argparse dest
_FILE_KEYS = {
    "s0": "s0", "spot": "spot", "rate": "rate", "sigma": "sigma", "alpha": "alpha",
    "maturity": "maturity", "time": "time", "strike": "strike", "kind": "kind",
}


class UsageError(Exception):
    pass


def _axis(text: str) -> tuple[str, list[float]]:
    parts = text.split(":")
    if len(parts) != 4 or parts[0] not in AXIS_NAMES:
        raise argparse.ArgumentTypeError(
            f"axis must be NAME:START:STOP:COUNT with NAME in {{{', '.join(AXIS_NAMES)}}}"
        )
    try:
        start, stop, count = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad axis numbers in {text!r}") from exc
    if count < 2:
        raise argparse.ArgumentTypeError("axis COUNT must be >= 2")
    return parts[0], np.linspace(start, stop, count).tolist()


def build_parser() -> argparse.ArgumentParser:
    model = argparse.ArgumentParser(add_help=False)
    m = model.add_argument_group("model")
    m.add_argument("--params", metavar="FILE", help="JSON file with model inputs; flags override it")
    m.add_argument("--s0", type=float, help="initial asset price S0")
    m.add_argument("--spot", type=float, help="observed price S_t at --time (default: S0)")
    m.add_argument("--strike", type=float)
    m.add_argument("--rate", type=float)
    m.add_argument("--sigma", type=float)
    m.add_argument("--alpha", type=float)
    m.add_argument("--maturity", type=float)
    m.add_argument("--time", type=float, help="evaluation time t (default 0)")
    m.add_argument("--kind", choices=("call", "put"))

    out = argparse.ArgumentParser(add_help=False)
    o = out.add_argument_group("output")
    o.add_argument("--format", choices=("json", "csv"), default="json")
    o.add_argument("--pretty", action="store_true", help="round numbers for reading")
    o.add_argument("--per-day", action="store_true", help="report theta per calendar day (/365)")

    mc = argparse.ArgumentParser(add_help=False)
    g = mc.add_argument_group("monte carlo")
    g.add_argument("--seed", type=int, default=42)
    g.add_argument("--antithetic", action="store_true")

    parser = argparse.ArgumentParser(prog="crisisgreeks", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("price", parents=[model, out, mc], help="option price")
    p.add_argument("--paths", type=int, help="also report a Monte-Carlo estimate (t = 0 only)")
    sub.add_parser("greeks", parents=[model, out], help="price and all sensitivities")
    p = sub.add_parser("surface", parents=[model, out], help="ladders over a grid")
    p.add_argument("--axis", type=_axis, action="append", required=True, metavar="NAME:START:STOP:COUNT")
    p = sub.add_parser("simulate", parents=[model, out, mc], help="exact-solution price paths")
    p.add_argument("--paths", type=int, default=10)
    p.add_argument("--steps", type=int, default=12, help="time steps between 0 and maturity")
    p = sub.add_parser("validate", parents=[mc], help="run every verification suite")
    p.add_argument("--grid", choices=("default", "quick"), default="default")
    p.add_argument("--paths", type=int, default=1_000_000)
    return parser


def _inputs(args) -> dict:
    values: dict = {}
    if getattr(args, "params", None):
        try:
            with open(args.params) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read params file: {exc}") from exc
        unknown = set(data) - set(_FILE_KEYS)
        if unknown:
            raise UsageError(f"unknown keys in params file: {sorted(unknown)}")
        values.update({_FILE_KEYS[k]: v for k, v in data.items()})
    for dest in _FILE_KEYS.values():
        v = getattr(args, dest, None)
        if v is not None:
            values[dest] = v
    values.setdefault("time", 0.0)
    values.setdefault("kind", "call")
    return values


def _point(args, need_strike: bool = True) -> tuple[ModelParams, MarketState, float | None, OptionKind]:
    v = _inputs(args)
    required = ["s0", "rate", "sigma", "alpha", "maturity"] + (["strike"] if need_strike else [])
    missing = [k for k in required if k not in v]
    if missing:
        raise UsageError("missing inputs: " + ", ".join("--" + k for k in missing))
    try:
        kind = OptionKind.parse(v["kind"])
    except ValueError as exc:
        raise UsageError(f"kind must be call or put (got {v['kind']!r})") from exc
    params = ModelParams(float(v["s0"]), float(v["rate"]), float(v["sigma"]), float(v["alpha"]), float(v["maturity"]))
    state = MarketState(float(v["time"]), float(v.get("spot", v["s0"])))
    strike = float(v["strike"]) if "strike" in v else None
    return params, state, strike, kind


def _num(x: float, pretty: bool):
    return float(f"{x:.6g}") if pretty else x


def _ladder_record(lad: GreekLadder, args) -> dict:
    rec = lad.as_dict()
    if args.per_day:
        rec["theta"] = rec["theta"] / 365.0
    return {k: _num(rec[k], args.pretty) for k in LADDER_COLUMNS}


def _emit(records: list[dict], columns: list[str], args, as_object: bool = False) -> str:
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in records:
            w.writerow([repr(r[c]) if isinstance(r[c], float) else r[c] for c in columns])
        return buf.getvalue()
    payload = records[0] if as_object else records
    return json.dumps(payload, indent=2 if args.pretty else None) + "\n"


def cmd_price(args) -> int:
    params, state, k, kind = _point(args)
    rec = {"kind": kind.value, "price": _num(price(params, state, k, kind), args.pretty)}
    cols = ["kind", "price"]
    if args.paths is not None:
        if state.t != 0:
            raise UsageError("Monte-Carlo estimate is only available at --time 0")
        est = mc_price(params, k, kind, McConfig(args.paths, args.seed, args.antithetic))
        rec.update(mc_mean=est.mean, mc_std_error=est.std_error, mc_paths=est.paths, mc_seed=est.seed)
        cols += ["mc_mean", "mc_std_error", "mc_paths", "mc_seed"]
    sys.stdout.write(_emit([rec], cols, args, as_object=True))
    return EXIT_OK


def cmd_greeks(args) -> int:
    params, state, k, kind = _point(args)
    rec = {"kind": kind.value, **_ladder_record(ladder(params, state, k, kind), args)}
    sys.stdout.write(_emit([rec], ["kind", *LADDER_COLUMNS], args, as_object=True))
    return EXIT_OK


def cmd_surface(args) -> int:
    if len(args.axis) > 2:
        raise UsageError("at most two --axis options")
    names = [name for name, _ in args.axis]
    if len(set(names)) != len(names):
        raise UsageError("axes must name distinct variables")
    params, state, k, kind = _point(args, need_strike="K" not in names)
    if k is None:
        k = args.axis[names.index("K")][1][0]
    rows = []
    for coords in itertools.product(*(vals for _, vals in args.axis)):
        pt = (params, state, k)
        for name, value in zip(names, coords):
            pt = with_value(*pt, name, value)
        rows.append({**dict(zip(names, coords)), **_ladder_record(ladder(*pt, kind), args)})
    sys.stdout.write(_emit(rows, [*names, *LADDER_COLUMNS], args))
    return EXIT_OK


def cmd_simulate(args) -> int:
    params, _, _, _ = _point(args, need_strike=False)
    if args.steps < 1 or args.paths < 1:
        raise UsageError("--steps and --paths must be >= 1")
    times = np.linspace(0.0, params.T, args.steps + 1)
    paths = simulate_paths(params, times, args.paths, args.seed)
    cols = ["time"] + [f"path_{i}" for i in range(args.paths)]
    if args.format == "csv":
        rows = [dict(zip(cols, [float(t), *map(float, row)])) for t, row in zip(times, paths)]
        sys.stdout.write(_emit(rows, cols, args))
    else:
        rows = [{"time": float(t), "prices": [_num(float(x), args.pretty) for x in row]} for t, row in zip(times, paths)]
        sys.stdout.write(_emit(rows, [], args))
    return EXIT_OK


def cmd_validate(args) -> int:
    from .validation import run_validation

    log.info("validating grid=%s paths=%d seed=%d", args.grid, args.paths, args.seed)
    report = run_validation(grid=args.grid, paths=args.paths, seed=args.seed)
    for c in report.checks:
        print(c.line(), file=sys.stderr)
        for f in c.failures:
            print(f"  {f}", file=sys.stderr)
    for e in report.ledger.entries:
        print(f"ledger {e.quantity:<14} {e.verdict}", file=sys.stderr)
    sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_VALIDATION


COMMANDS = {
    "price": cmd_price, "greeks": cmd_greeks, "surface": cmd_surface,
    "simulate": cmd_simulate, "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        parser.print_usage(sys.stderr)
        print(f"crisisgreeks: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"crisisgreeks: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

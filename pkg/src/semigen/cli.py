"""Command-line front end.

    semigen radius --beta 1 --target parabolic
    semigen radius --target sg --sweep beta=0:1:0.05
    semigen member --class a_beta --param beta=0.5 --function hyper
    semigen flow --function maminda:A=0,B=-1 --z0 0.5,0.2 --T 10
    semigen convolve --f hyper:beta=0.5 --g bernardi:gamma=1 --check a_beta:beta=0.5
    semigen kappa --beta 0
    semigen table --out tables/

Exit status: 0 on success, 2 for invalid input (one line on stderr), 1 for
numerical failures (an error object as JSON on stdout).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import BadParams, EscapedDisk, NumericalError, ValidationError
from .functions import PARAMS, make_named, parse_function_spec, parse_value
from .membership import (
    GridSpec,
    check_a_beta,
    check_bs_subordination,
    check_janowski_subordination,
    check_u_lambda,
    hadamard_criterion_a_beta,
)
from .radius import PhiTarget, kappa, radius_a_beta
from .semiflow import integrate, min_re_ratio, verify_decay
from .series import PowerSeries, default_order, hadamard, normalized
from .tables import beta_grid, emit_paper_tables, fmt, radius_sweep_csv

COMMANDS = ("member", "radius", "flow", "convolve", "kappa", "table")
MIN_ORDER = 16


@dataclass(frozen=True)
class RunConfig:
    command: str
    grid: GridSpec = field(default_factory=GridSpec)
    order: int = 128
    output: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise BadParams(f"unknown command {self.command!r}")
        if self.order < MIN_ORDER:
            raise BadParams(f"order must be >= {MIN_ORDER}, got {self.order}")
        if self.output not in ("json", "csv"):
            raise BadParams(f"output must be json or csv, got {self.output!r}")


def auto_order(rmax: float) -> int:
    """Truncation order for a grid reaching ``rmax``: SEMIGEN_ORDER if set,
    otherwise large enough that rmax**N is about 1e-15."""
    env = os.environ.get("SEMIGEN_ORDER")
    if env:
        return int(env)
    return max(128, int(math.ceil(math.log(1e-15) / math.log(rmax))))


def parse_grid(text: str) -> GridSpec:
    """``rings=K,angles=M,rmax=R`` (any subset)."""
    opts = {}
    for item in filter(None, text.split(",")):
        key, eq, val = item.partition("=")
        if not eq or key not in ("rings", "angles", "rmax", "margin"):
            raise BadParams(f"bad grid item {item!r}; use rings=K,angles=M,rmax=R")
        opts[key] = float(val)
    if "rings" not in opts and "rmax" not in opts:
        return GridSpec(angular_samples=int(opts.get("angles", 720)), margin=opts.get("margin", 1e-9))
    return GridSpec.from_counts(
        int(opts.get("rings", 11)),
        int(opts.get("angles", 720)),
        opts.get("rmax", 0.999),
        opts.get("margin", 1e-9),
    )


def parse_params(items) -> dict:
    out = {}
    for item in items or ():
        for part in filter(None, item.split(",")):
            key, eq, val = part.partition("=")
            if not eq:
                raise BadParams(f"parameter {part!r} is not key=value")
            out[key.strip()] = parse_value(val)
    return out


def load_series(path: str) -> PowerSeries:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise BadParams(f"cannot read series file {path}: {exc.strerror}") from None
    try:
        return PowerSeries.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise BadParams(f"{path} is not a series file: {exc}") from None


def build_function(spec: str, order: int, fallback: dict | None = None) -> PowerSeries:
    """Named function from ``name:k=v,...``; parameters missing inline are
    taken from ``fallback`` when the function accepts them."""
    fid, params = parse_function_spec(spec)
    for key, val in (fallback or {}).items():
        if key in PARAMS[fid] and key not in params:
            params[key] = val
    return make_named(fid, order, **params)


def _emit_json(obj):
    print(json.dumps(obj, indent=2))


def _param(params, name, cls):
    if name not in params:
        raise BadParams(f"class {cls} needs --param {name}=...")
    return float(params[name])


# ---------------------------------------------------------------- commands

def cmd_member(args, cfg: RunConfig):
    params = parse_params(args.param)
    if args.series:
        f = load_series(args.series)
    elif args.function:
        f = build_function(args.function, cfg.order, params)
    else:
        raise BadParams("member needs --function or --series")
    f = normalized(f)
    cls = args.cls
    if cls in ("a_beta", "g0"):
        beta = 1.0 if cls == "g0" else _param(params, "beta", cls)
        if args.method == "hadamard":
            rep = hadamard_criterion_a_beta(f, beta, grid=cfg.grid)
        else:
            rep = check_a_beta(f, beta, cfg.grid)
    elif cls == "u":
        rep = check_u_lambda(f, _param(params, "lambda", cls), cfg.grid)
    elif cls == "bs":
        rep = check_bs_subordination(f, _param(params, "alpha", cls), cfg.grid)
    else:
        rep = check_janowski_subordination(f, _param(params, "A", cls), _param(params, "B", cls), cfg.grid)
    _emit_json(rep.to_dict())


def parse_sweep(text: str):
    key, eq, rng = text.partition("=")
    parts = rng.split(":")
    if key != "beta" or not eq or len(parts) != 3:
        raise BadParams("sweep is written beta=start:stop:step")
    start, stop, step = (float(x) for x in parts)
    if not 0.0 <= start <= stop <= 1.0 or step <= 0:
        raise BadParams(f"bad sweep {text!r}: need 0 <= start <= stop <= 1 and step > 0")
    return beta_grid(start, stop, step)


def cmd_radius(args, cfg: RunConfig):
    target = PhiTarget.parse(args.target, load_series)
    if args.sweep:
        sys.stdout.write(radius_sweep_csv(target, parse_sweep(args.sweep)))
        return
    if args.beta is None:
        raise BadParams("radius needs --beta or --sweep")
    if not 0.0 <= args.beta <= 1.0:
        raise BadParams(f"beta must lie in [0, 1], got {args.beta}")
    _emit_json(radius_a_beta(args.beta, target).to_dict())


def _complex_arg(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
        return complex(parse_value(text))
    except ValueError:
        raise BadParams(f"cannot read {text!r} as a complex number (use re,im)") from None


def cmd_flow(args, cfg: RunConfig):
    if args.series:
        f, f_id = load_series(args.series), args.series
    elif args.function:
        f, f_id = build_function(args.function, cfg.order, parse_params(args.param)), args.function
    else:
        raise BadParams("flow needs --function or --series")
    z0 = _complex_arg(args.z0)
    if not abs(z0) < 1:
        raise BadParams(f"|z0| must be < 1, got {abs(z0)}")
    rate = args.rate if args.rate is not None else max(0.0, min_re_ratio(f, max(abs(z0), 1e-6)))
    traj = integrate(f, z0, args.T, args.step_tol, args.samples, f_id=f_id)
    cert = verify_decay(traj, rate, tol=1e-9)
    out = sys.stdout
    out.write("t,re,im,abs,bound\n")
    bound = abs(z0) * np.exp(-rate * traj.times)
    for t, u, b in zip(traj.times, traj.points, bound):
        out.write(",".join(fmt(x) for x in (t, u.real, u.imag, abs(u), b)) + "\n")
    if not cert.holds:
        print(f"warning: decay bound at rate {fmt(rate)} violated by {cert.max_violation:.3g}", file=sys.stderr)


def cmd_convolve(args, cfg: RunConfig):
    f = build_function(args.f, cfg.order)
    g = build_function(args.g, cfg.order)
    h = hadamard(f, g)
    if not args.check:
        _emit_json(h.to_dict())
        return
    name, _, rest = args.check.partition(":")
    params = parse_params([rest]) if rest else {}
    if name == "g0":
        beta = 1.0
    elif name == "a_beta":
        beta = _param(params, "beta", name)
    else:
        raise BadParams(f"unknown check {name!r}; use a_beta:beta=... or g0")
    _emit_json(check_a_beta(normalized(h), beta, cfg.grid).to_dict())


def cmd_kappa(args, cfg: RunConfig):
    if not 0.0 <= args.beta <= 1.0:
        raise BadParams(f"beta must lie in [0, 1], got {args.beta}")
    _emit_json({"beta": args.beta, "kappa": kappa(args.beta)})


def cmd_table(args, cfg: RunConfig):
    try:
        paths = emit_paper_tables(args.out, args.step)
    except OSError as exc:
        raise BadParams(f"cannot write tables to {args.out}: {exc.strerror}") from None
    _emit_json({"written": [str(p) for p in paths]})


HANDLERS = {
    "member": cmd_member,
    "radius": cmd_radius,
    "flow": cmd_flow,
    "convolve": cmd_convolve,
    "kappa": cmd_kappa,
    "table": cmd_table,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", default="auto", help="truncation order, or 'auto' (default)")
    common.add_argument("--grid", default="", help="rings=K,angles=M,rmax=R")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="semigen", description="Generators, A_beta classes and radii of starlikeness.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("member", parents=[common], help="grid membership test")
    m.add_argument("--class", dest="cls", required=True, choices=["a_beta", "g0", "u", "bs", "janowski"])
    m.add_argument("--param", action="append", help="class (or function) parameter k=v")
    m.add_argument("--function", help="name[:k=v,...]")
    m.add_argument("--series", help="series JSON file")
    m.add_argument("--method", choices=["direct", "hadamard"], default="direct")

    r = sub.add_parser("radius", parents=[common], help="radius of starlikeness for A_beta")
    r.add_argument("--beta", type=float)
    r.add_argument("--target", required=True)
    r.add_argument("--sweep", help="beta=start:stop:step, CSV output")

    fl = sub.add_parser("flow", parents=[common], help="integrate the semiflow")
    fl.add_argument("--function")
    fl.add_argument("--series", help="series JSON file")
    fl.add_argument("--param", action="append")
    fl.add_argument("--z0", required=True, help="re,im")
    fl.add_argument("--T", type=float, default=10.0)
    fl.add_argument("--samples", type=int, default=101)
    fl.add_argument("--rate", type=float, help="decay rate for the bound column")
    fl.add_argument("--step-tol", type=float, default=1e-9)

    c = sub.add_parser("convolve", parents=[common], help="Hadamard product and optional class check")
    c.add_argument("--f", required=True)
    c.add_argument("--g", required=True)
    c.add_argument("--check")

    k = sub.add_parser("kappa", parents=[common], help="lower bound of Re f/z over A_beta")
    k.add_argument("--beta", type=float, required=True)

    t = sub.add_parser("table", parents=[common], help="write the CSV tables")
    t.add_argument("--out", required=True)
    t.add_argument("--step", type=float, default=0.05)
    return p


def make_config(args) -> RunConfig:
    grid = parse_grid(args.grid) if args.grid else GridSpec()
    if args.order == "auto":
        # grid checks need the boundary-resolving order; trajectories stay inside |z0|
        order = auto_order(grid.rmax) if args.command in ("member", "convolve") else default_order()
    else:
        try:
            order = int(args.order)
        except ValueError:
            raise BadParams(f"--order must be an integer or 'auto', got {args.order!r}") from None
    output = "csv" if args.command in ("flow", "table") or getattr(args, "sweep", None) else "json"
    return RunConfig(args.command, grid, order, output, args.seed)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        HANDLERS[args.command](args, cfg)
    except ValidationError as exc:
        print(f"semigen: error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, EscapedDisk):
            err["diagnosis"] = "not a generator at this truncation"
        _emit_json(err)
        return 1
    return 0


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
    sys.exit(code)


if __name__ == "__main__":
    main()

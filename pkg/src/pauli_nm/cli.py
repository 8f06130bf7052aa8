"""Command-line front end: CSV/JSON series for rates, singularities, Choi spectra, measures and QENM.

Exit codes: 0 success, 2 configuration error, 3 domain error (non-invertible
``s``, parameter out of range during evaluation).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

from . import channels as ch
from .divisibility import choi_scan, td_scan
from .errors import NonInvertibleAt, OutOfRange, PauliNMError
from .generator import rates_grid, singularities
from .measures import SSSConfig, hcla, sss
from .qalg import state_from_bloch
from .qenm import classify, classify_iso, iso_qenm_measure, qenm_volume

SEED_ENV = "PAULI_NM_SEED"


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    family: ch.ChannelFamily | None
    grid: tuple | None
    out: str
    fmt: str
    seed: int | None
    samples: int | None


def fmt(x):
    return "%.12g" % x


def parse_grid(spec):
    try:
        start, stop, step = (float(v) for v in spec.split(":"))
    except ValueError as exc:
        raise ConfigError(f"grid must look like start:stop:step, got {spec!r}") from exc
    if not step > 0 or stop < start:
        raise ConfigError(f"bad grid {spec!r}: need step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9))
    return tuple(round(start + k * step, 12) for k in range(n + 1))


def _floats(text, n, what):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"{what}: expected {n} comma-separated numbers") from exc
    if len(vals) != n:
        raise ConfigError(f"{what}: expected {n} numbers, got {len(vals)}")
    return vals


def build_family(args):
    try:
        if args.channel:
            return ch.family_from_json(args.channel)
        if args.aniso:
            return ch.AnisoDepol(*_floats(args.aniso, 3, "--aniso"))
        if args.iso is not None:
            return ch.IsoDepol(args.iso)
        if args.cos_dephasing is not None:
            return ch.CosDephasing(args.cos_dephasing)
        if args.cos_pauli is not None:
            return ch.CosPauli(args.cos_pauli)
        if args.exp_dephasing:
            return ch.ExpDephasing()
        if args.appendix:
            return ch.AppendixDephasing(*_floats(args.appendix, 2, "--appendix"))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad channel specification: {exc}") from exc
    return None


def require_family(args):
    fam = build_family(args)
    if fam is None:
        raise ConfigError("a channel is required (--channel, --aniso, --iso, ...)")
    return fam


def grid_for(args, family, start=None):
    if args.grid:
        grid = parse_grid(args.grid)
    else:
        lo, hi = family.valid_range
        if math.isinf(hi):
            raise ConfigError(f"{family.family} needs an explicit --grid")
        grid = parse_grid(f"{lo if start is None else start}:{hi}:0.001")
    lo, hi = family.valid_range
    if grid[0] < lo - 1e-12 or grid[-1] > hi + 1e-12:
        raise ConfigError(f"grid [{grid[0]}, {grid[-1]}] leaves the range [{lo}, {hi}]")
    return grid


def resolve_seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV} must be an integer") from exc
    return 0


# ---------------------------------------------------------------------------
# output

def write_csv(out, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else (v if isinstance(v, str) else fmt(v)) for v in row])
    emit(out, buf.getvalue())


def write_json(out, obj):
    emit(out, json.dumps(_plain(obj), indent=2) + "\n")


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return obj.item()
    return obj


def emit(out, text):
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_rates(args):
    fam = require_family(args)
    points = rates_grid(fam, grid_for(args, fam))
    if args.format == "json":
        write_json(args.out, [{"p": pt.p, "gamma": None if pt.singular else list(pt.rates),
                               "singular": pt.singular} for pt in points])
        return
    rows = []
    for pt in points:
        if pt.singular:
            rows.append([pt.p, None, None, None, "1"])
        else:
            rows.append([pt.p, *pt.rates, "0"])
    write_csv(args.out, ["p", "gamma1", "gamma2", "gamma3", "singular"], rows)


def cmd_singularities(args):
    fam = require_family(args)
    try:
        sset = singularities(fam, horizon=args.horizon, include_endpoint=args.include_endpoint)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    write_json(args.out, sset.to_list())


def _resolve_s(args, fam):
    text = args.s
    if text is None:
        raise ConfigError("choi needs --s")
    if text.startswith("pminus"):
        k = int(text.split(":")[1]) if ":" in text else 1
        pos = singularities(fam, horizon=args.horizon).positions
        if not 1 <= k <= len(pos):
            raise ConfigError(f"{fam.family} has {len(pos)} singularities; cannot use {text}")
        return pos[k - 1]
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"bad --s {text!r}") from exc


def cmd_choi(args):
    fam = require_family(args)
    s = _resolve_s(args, fam)
    grid = grid_for(args, fam, start=s)
    grid = tuple(p for p in grid if p > s)
    rows = [[p, *spec.values] for p, spec in choi_scan(fam, s, (s, *grid))]
    if args.format == "json":
        write_json(args.out, [{"p": r[0], "lambda": r[1:]} for r in rows])
        return
    write_csv(args.out, ["p", "lambda1", "lambda2", "lambda3", "lambda4"], rows)


def _sss_config(args):
    ts = None if args.time_scale in ("none", "None") else float(args.time_scale)
    if args.gamma_star is not None:
        return SSSConfig(gamma_star_mode="fixed", gamma_star=args.gamma_star,
                         renorm_mode=args.renorm, time_scale=ts, horizon=args.horizon)
    return SSSConfig(renorm_mode=args.renorm, time_scale=ts, horizon=args.horizon)


def cmd_measure(args):
    try:
        cfg = _sss_config(args)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.sweep:
        rows = []
        for a in parse_grid(args.sweep):
            if not 0 <= a <= 1:
                raise ConfigError(f"sweep value alpha={a} outside [0, 1]")
            fam = ch.IsoDepol(a)
            rows.append([a, hcla(fam).value, sss(fam, cfg).renormalized_value])
        write_csv(args.out, ["alpha", "hcla", "sss_renormalized"], rows)
        return
    fam = require_family(args)
    if args.type == "hcla":
        res = hcla(fam, horizon=args.horizon)
    else:
        res = sss(fam, cfg)
    write_json(args.out, res.to_dict())


def cmd_qenm(args):
    if args.mode == "volume":
        samples = args.samples or 10 ** 6
        seed = resolve_seed(args)
        try:
            est = qenm_volume(samples, seed, diagonal=args.diagonal)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        write_json(args.out, est.to_dict())
    elif args.mode == "iso-measure":
        n = args.grid_points
        write_json(args.out, {"grid_points": n, "measure": iso_qenm_measure(n)})
    else:
        fam = require_family(args)
        if isinstance(fam, ch.IsoDepol):
            v = classify_iso(fam.alpha)
        elif isinstance(fam, ch.AnisoDepol):
            v = classify(*fam.strengths)
        else:
            raise ConfigError("QENM classification is defined for the depolarizing families")
        write_json(args.out, {"is_qenm": v.is_qenm,
                              "satisfied_conditions": list(v.satisfied_conditions),
                              "p_minus_min": v.p_minus_min,
                              "channel": fam.to_dict()})


def cmd_tracedist(args):
    fam = require_family(args)
    try:
        a = state_from_bloch(_floats(args.bloch_a, 3, "--bloch-a"))
        b = state_from_bloch(_floats(args.bloch_b, 3, "--bloch-b"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = td_scan(fam, a, b, grid_for(args, fam))
    if args.format == "json":
        write_json(args.out, [{"p": p, "trace_distance": d} for p, d in rows])
        return
    write_csv(args.out, ["p", "trace_distance"], rows)


COMMANDS = {
    "rates": cmd_rates,
    "singularities": cmd_singularities,
    "choi": cmd_choi,
    "measure": cmd_measure,
    "qenm": cmd_qenm,
    "tracedist": cmd_tracedist,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="pauli-nm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    fam = common.add_argument_group("channel")
    fam.add_argument("--channel", help='JSON, e.g. \'{"family":"aniso_depol","l":0.4,"m":0.5,"n":0.65}\'')
    fam.add_argument("--aniso", metavar="L,M,N")
    fam.add_argument("--iso", type=float, metavar="ALPHA")
    fam.add_argument("--cos-dephasing", type=float, metavar="OMEGA")
    fam.add_argument("--cos-pauli", type=float, metavar="OMEGA")
    fam.add_argument("--exp-dephasing", action="store_true")
    fam.add_argument("--appendix", metavar="ALPHA,C")
    common.add_argument("--grid", metavar="START:STOP:STEP")
    common.add_argument("--horizon", type=float, help="upper end for unbounded (time) families")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)

    sub.add_parser("rates", parents=[common], help="decay rates on a grid")
    p = sub.add_parser("singularities", parents=[common], help="generator singularities (JSON)")
    p.add_argument("--include-endpoint", action="store_true")
    p = sub.add_parser("choi", parents=[common], help="intermediate-map Choi spectra")
    p.add_argument("--s", help="start point of the intermediate map, a number or pminus[:k]")
    p = sub.add_parser("measure", parents=[common], help="HCLA / SSS measures")
    p.add_argument("--type", choices=("hcla", "sss"), default="hcla")
    p.add_argument("--sweep", metavar="START:STOP:STEP", help="isotropic alpha sweep, CSV output")
    p.add_argument("--renorm", choices=("absolute", "signed"), default="absolute")
    p.add_argument("--gamma-star", type=float, help="fixed reference rate (default: minimized)")
    p.add_argument("--time-scale", default="1", help="clock constant c, or 'none' for parameter units")
    p = sub.add_parser("qenm", parents=[common], help="QENM classification and volume")
    p.add_argument("--mode", choices=("classify", "volume", "iso-measure"), default="classify")
    p.add_argument("--grid-points", type=int, default=10 ** 4)
    p.add_argument("--diagonal", action="store_true", help="volume mode: sample l = m = n only")
    p = sub.add_parser("tracedist", parents=[common], help="trace distance of two evolved states")
    p.add_argument("--bloch-a", default="0,0,1")
    p.add_argument("--bloch-b", default="0,0,-1")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        COMMANDS[args.subcommand](args)
    except ConfigError as exc:
        print(f"pauli-nm: configuration error: {exc}", file=sys.stderr)
        return 2
    except (NonInvertibleAt, OutOfRange) as exc:
        print(f"pauli-nm: domain error: {exc}", file=sys.stderr)
        return 3
    except PauliNMError as exc:
        print(f"pauli-nm: error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

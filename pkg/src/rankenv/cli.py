"""Command-line interface.

Four subcommands: ``envelope`` tests user-supplied curves and writes the
band, ``simulate`` writes synthetic curve sets, ``study`` runs the power
study, and ``summarize`` pivots a study CSV. Exit codes are part of the
contract: 0 means success (and, for ``envelope``, that curve 1 is not
extreme), 2 means curve 1 is extreme, and 1 means any error, including
bad flags.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .csvio import read_curves, read_study, write_curves, write_envelope, write_study
from .envelope import build_envelope, central_curve, classify
from .errors import RankEnvError
from .gp import BASE_RESOLUTION, OUTLIER_KINDS, GpConfig, extract, inject_outlier, simulate_gp
from .measures import MEASURE_KINDS, compute_measure, qdir_measure, qdir_params
from .study import (
    DEFAULT_D_LIST,
    DEFAULT_S_LIST,
    DEFAULT_SCALE_LIST,
    DESK_PROFILE,
    ScenarioGrid,
    run_study,
)

_MASK64 = (1 << 64) - 1


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags, which collides with the
    # "curve 1 is extreme" verdict; remap every usage error to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _int_list(text: str) -> tuple:
    return tuple(int(v) for v in text.split(","))


def _float_list(text: str) -> tuple:
    return tuple(float(v) for v in text.split(","))


def _word_list(text: str) -> tuple:
    return tuple(w.strip() for w in text.split(",") if w.strip())


def _build_parser() -> _Parser:
    parser = _Parser(prog="rankenv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("envelope", help="global envelope test for a curve CSV")
    p.add_argument("input", help="curve CSV (header x,...; rows curve_<i>,...)")
    p.add_argument("--measure", choices=MEASURE_KINDS, default="erl")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--output", help="write the envelope CSV here")
    p.set_defaults(func=_cmd_envelope)

    p = sub.add_parser("simulate", help="write a synthetic curve CSV")
    p.add_argument("--s", type=int, required=True, help="number of curves")
    p.add_argument("--d", type=int, required=True,
                   help=f"resolution; must divide {BASE_RESOLUTION}")
    p.add_argument("--scale", type=float, default=0.0, help="correlation scale")
    p.add_argument("--outlier", choices=OUTLIER_KINDS, default="none")
    p.add_argument("--seed", type=int, help="omit for a time-derived seed")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("study", help="run the factorial power study")
    p.add_argument("--seed", type=int, required=True, help="master seed")
    p.add_argument("--output", required=True)
    p.add_argument("--profile", choices=("full", "desk"), default="full")
    p.add_argument("--s-list", type=_int_list)
    p.add_argument("--d-list", type=_int_list)
    p.add_argument("--scale-list", type=_float_list)
    p.add_argument("--outliers", type=_word_list)
    p.add_argument("--measures", type=_word_list)
    p.add_argument("--alpha", type=float)
    p.add_argument("--reps", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--independent-cells", action="store_true",
                   help="draw a fresh pool per (s, d) cell instead of sharing one")
    p.add_argument("--memory-budget-mb", type=int, default=512)
    p.set_defaults(func=_cmd_study)

    p = sub.add_parser("summarize", help="pivot a study CSV into power-by-s blocks")
    p.add_argument("input")
    p.add_argument("--measure", choices=MEASURE_KINDS)
    p.add_argument("--outlier", choices=OUTLIER_KINDS)
    p.add_argument("--d", type=int)
    p.add_argument("--scale", type=float)
    p.add_argument("--s", type=int)
    p.add_argument("--json", action="store_true", dest="as_json")
    p.set_defaults(func=_cmd_summarize)
    return parser


def _cmd_envelope(args) -> int:
    curves = read_curves(args.input)
    params = qdir_params(curves) if args.measure == "qdir" else None
    if params is not None:
        mv = qdir_measure(curves, params)
    else:
        mv = compute_measure(curves, args.measure)
    env = build_envelope(curves, mv, args.alpha, qdir=params)
    extreme = classify(mv, env.crit)
    if args.output:
        central = central_curve(curves, env, args.measure, qdir=params)
        write_envelope(args.output, env, curves.grid, central)
    summary = {
        "measure": args.measure,
        "alpha": args.alpha,
        "crit": env.crit,
        "extreme_indices": [int(i) + 1 for i in np.flatnonzero(extreme)],
        "s": curves.n_curves,
        "d": curves.n_points,
    }
    print(json.dumps(summary))
    return 2 if extreme[0] else 0


def _cmd_simulate(args) -> int:
    seed = args.seed
    if seed is None:
        seed = time.time_ns() & _MASK64
        print(f"seed: {seed}", file=sys.stderr)
    pool = simulate_gp(GpConfig(scale=args.scale, seed=seed), args.s)
    curves = extract(inject_outlier(pool, args.outlier), args.s, args.d)
    write_curves(args.output, curves)
    return 0


def _cmd_study(args) -> int:
    settings = {
        "s_list": DEFAULT_S_LIST,
        "d_list": DEFAULT_D_LIST,
        "scale_list": DEFAULT_SCALE_LIST,
        "outlier_list": OUTLIER_KINDS,
        "measures": MEASURE_KINDS,
        "alpha": 0.05,
        "reps": 1000,
    }
    if args.profile == "desk":
        settings.update(DESK_PROFILE)
    overrides = {
        "s_list": args.s_list,
        "d_list": args.d_list,
        "scale_list": args.scale_list,
        "outlier_list": args.outliers,
        "measures": args.measures,
        "alpha": args.alpha,
        "reps": args.reps,
    }
    settings.update({k: v for k, v in overrides.items() if v is not None})
    grid = ScenarioGrid(
        master_seed=args.seed,
        shared_pool=not args.independent_cells,
        memory_budget=args.memory_budget_mb * 1024 * 1024,
        **settings,
    )
    total_reps = len(grid.outlier_list) * len(grid.scale_list) * grid.reps
    step = max(1, total_reps // 100)

    def progress(done, total, label):
        if done % step == 0 or done == total:
            print(f"progress {done}/{total} ({label})", file=sys.stderr)

    rows = run_study(grid, threads=args.threads, progress=progress)
    write_study(args.output, rows, grid.alpha, grid.master_seed)
    print(f"wrote {len(rows)} rows to {args.output}", file=sys.stderr)
    return 0


def _sort_key(row):
    return (
        OUTLIER_KINDS.index(row["outlier"]) if row["outlier"] in OUTLIER_KINDS else 99,
        row["d"],
        row["scale"],
        MEASURE_KINDS.index(row["measure"]) if row["measure"] in MEASURE_KINDS else 99,
        row["s"],
    )


def _cmd_summarize(args) -> int:
    rows = read_study(args.input)
    for field in ("measure", "outlier", "d", "scale", "s"):
        want = getattr(args, field)
        if want is not None:
            rows = [r for r in rows if r[field] == want]
    rows.sort(key=_sort_key)
    if args.as_json:
        print(json.dumps(rows))
        return 0
    block = None
    for r in rows:
        head = (r["outlier"], r["d"], r["scale"], r["measure"])
        if head != block:
            if block is not None:
                print()
            print(f"outlier={head[0]} d={head[1]} scale={head[2]:g} measure={head[3]}")
            block = head
        print(
            f"  s={r['s']:<6d} power={r['power']:.4f} "
            f"ci=[{r['ci_lo']:.4f},{r['ci_hi']:.4f}] "
            f"detections={r['detections']}/{r['reps']}"
        )
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RankEnvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

    pettylab compute BODY.json --invariants P,M,m,Q [--grid N] [--refine K]
    pettylab verify SUITE [--samples N] [--seed S]
    pettylab search OBJECTIVE [--n N] [--restarts R] [--iters I] [--out run.json]
    pettylab symmetrize BODY.json --direction X,Y,Z --mode steiner|schwartz
    pettylab fixtures --out DIR

Exit codes: 0 success, 2 usage/parse error, 3 invalid body, 4 suite failure.
The environment variable PETTYLAB_SEED supplies the default seed; all
numeric output uses 12 significant digits.  Output is byte-identical for
identical command lines apart from the timestamp header (suppress with
--no-timestamp).
"""

import argparse
import os
import sys

import numpy as np

from . import fixtures as fixture_mod
from .bodies import load_body, save_body
from .errors import BodyFileError, GeometryError
from .functionals import invariants
from .geom import Polytope, unitize
from .report import Row, any_failed, fmt, render_csv, render_json
from .search import OBJECTIVES, min_Q_search, optimize
from .suites import SUITES, run_suite
from .symmetrize import schwartz, steiner, steiner_rounding_run

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BODY = 3
EXIT_SUITE = 4


def _default_seed():
    try:
        return int(os.environ.get("PETTYLAB_SEED", "42"))
    except ValueError:
        return 42


def build_parser():
    top = argparse.ArgumentParser(prog="pettylab",
                                  description="projection-body calculus toolkit")
    top.add_argument("--no-timestamp", action="store_true",
                     help="suppress the timestamp header in reports")
    sub = top.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="invariants of a body file")
    c.add_argument("body")
    c.add_argument("--invariants", default="P,M,m,Q")
    c.add_argument("--grid", type=int, default=2048)
    c.add_argument("--refine", type=int, default=50)
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--out")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help=f"one of: {', '.join(sorted(SUITES))}")
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--format", choices=("csv", "json"), default="csv")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--out")

    s = sub.add_parser("search", help="stochastic extremal search")
    s.add_argument("objective", help=f"one of: {', '.join(OBJECTIVES)}")
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--restarts", type=int, default=2)
    s.add_argument("--iters", type=int, default=1500)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--start", default=None,
                   help="named start for min-Q-symmetric (icosphere, cube)")
    s.add_argument("--out", help="write the SearchRun JSON document here")
    s.add_argument("--log", help="write the accepted-step JSONL trace here")

    y = sub.add_parser("symmetrize", help="Steiner or Schwartz symmetrization")
    y.add_argument("body")
    y.add_argument("--mode", choices=("steiner", "schwartz"), required=True)
    y.add_argument("--direction", default="0,0,1")
    y.add_argument("--steps", type=int, default=1,
                   help="random-direction Steiner iterations when > 1")
    y.add_argument("--seed", type=int, default=None)
    y.add_argument("--samples-per-piece", type=int, default=16)
    y.add_argument("--track-ratio", default=None,
                   help="direction for the before/after ratio pair")
    y.add_argument("--out")

    f = sub.add_parser("fixtures", help="write the bundled fixture bodies")
    f.add_argument("--out", default="fixtures")
    return top


def _parse_direction(text):
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if len(parts) != 3:
        raise BodyFileError(f"direction must have 3 components, got {text!r}")
    try:
        return unitize(np.array([float(p) for p in parts]))
    except ValueError as exc:
        raise BodyFileError(f"bad direction {text!r}: {exc}") from exc


def _emit(rows, args, out=None):
    render = render_json if getattr(args, "format", "csv") == "json" else render_csv
    text = render(rows, timestamp=not args.no_timestamp)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def cmd_compute(args):
    body = load_body(args.body)
    wanted = tuple(p.strip() for p in args.invariants.split(",") if p.strip())
    bad = [w for w in wanted if w not in ("P", "M", "m", "Q")]
    if bad:
        raise BodyFileError(f"unknown invariants {bad}; choose from P,M,m,Q")
    rep = invariants(body, grid=args.grid, refine=args.refine, want=wanted)
    rows = []
    dirs = {"M": rep.M_dir, "m": rep.m_dir, "Q": rep.Q_dir}
    for name in wanted:
        rows.append(Row(name, value=getattr(rep, name), direction=dirs.get(name),
                        status="INFO",
                        detail=f"grid={rep.grid} refine={rep.refine}"))
    if rep.near_cone_equality:
        rows.append(Row("near-lower-equality", value=rep.m, status="INFO",
                        detail="ratio within 1e-6 of the sharp bound 6"))
    _emit(rows, args, args.out)
    return EXIT_OK


def cmd_verify(args):
    if args.suite not in SUITES:
        sys.stderr.write(f"unknown suite {args.suite!r}\n")
        return EXIT_USAGE
    seed = args.seed if args.seed is not None else _default_seed()
    rows = run_suite(args.suite, samples=args.samples, seed=seed)
    _emit(rows, args, args.out)
    return EXIT_SUITE if any_failed(rows) else EXIT_OK


def cmd_search(args):
    if args.objective not in OBJECTIVES:
        sys.stderr.write(f"unknown objective {args.objective!r}\n")
        return EXIT_USAGE
    if args.iters < 1 or args.restarts < 1 or args.n < 1:
        sys.stderr.write("budget parameters must be positive\n")
        return EXIT_USAGE
    seed = args.seed if args.seed is not None else _default_seed()
    if args.objective == "min-Q-symmetric" and args.start:
        run = min_Q_search(n=args.n, restarts=args.restarts, iters=args.iters,
                           seed=seed, start=args.start, threads=args.threads)
    else:
        run = optimize(args.objective, n=args.n, restarts=args.restarts,
                       iters=args.iters, seed=seed, threads=args.threads)
    if args.out:
        run.save(args.out)
    if args.log:
        run.save_log(args.log)
    extras = ""
    if run.diagnostics.get("near_equality"):
        if "parallel_pairs" in run.diagnostics:
            extras = (f", parallelism={run.diagnostics['parallel_pairs']}"
                      f", coplanarity-gap={fmt(run.diagnostics['coplanarity_gap'])}")
        else:
            extras = ", near sharp constant"
    if "gap_to_ball_bound" in run.diagnostics:
        extras += f", gap-to-ball-bound={fmt(run.diagnostics['gap_to_ball_bound'])}"
    print(f"{run.objective}: best {fmt(run.best_value)} "
          f"(seed={run.seed}, restarts={run.restarts}, iters={run.iters}{extras})")
    return EXIT_OK


def cmd_symmetrize(args):
    body = load_body(args.body)
    if not isinstance(body, Polytope):
        raise GeometryError("symmetrization needs a polytope body file")
    direction = _parse_direction(args.direction)
    seed = args.seed if args.seed is not None else _default_seed()
    track = _parse_direction(args.track_ratio) if args.track_ratio else None
    v_before = body.volume
    if track is not None:
        from .symmetrize import schwartz_ratio_monotonicity
        rb, ra = schwartz_ratio_monotonicity(body, track, args.samples_per_piece)
        print(f"ratio before {fmt(rb)} after {fmt(ra)} (direction {args.track_ratio})")
    if args.mode == "schwartz":
        out_body = schwartz(body, direction, samples_per_piece=args.samples_per_piece)
        from .revolution import rev_volume
        v_after = rev_volume(out_body)
    elif args.steps > 1:
        out_body, trace = steiner_rounding_run(body, args.steps, seed)
        v_after = out_body.volume
        print(f"roundness {fmt(trace[0])} -> {fmt(trace[-1])} over {args.steps} steps")
    else:
        out_body = steiner(body, direction)
        v_after = out_body.volume
    print(f"volume before {fmt(v_before)} after {fmt(v_after)}")
    if args.out:
        save_body(out_body, args.out)
    return EXIT_OK


def cmd_fixtures(args):
    os.makedirs(args.out, exist_ok=True)
    for name, maker in fixture_mod.FIXTURES.items():
        save_body(maker(), os.path.join(args.out, f"{name}.json"))
    print(f"wrote {len(fixture_mod.FIXTURES)} fixtures to {args.out}")
    return EXIT_OK


_HANDLERS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "search": cmd_search,
    "symmetrize": cmd_symmetrize,
    "fixtures": cmd_fixtures,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _HANDLERS[args.command](args)
    except BodyFileError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except GeometryError as exc:
        sys.stderr.write(f"invalid body: {exc}\n")
        return EXIT_BODY


if __name__ == "__main__":
    sys.exit(main())

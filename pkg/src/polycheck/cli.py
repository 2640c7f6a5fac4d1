"""Command-line interface.

Subcommands: ``check`` runs a specification file end to end, ``validate``
checks a model file, ``convert obj`` turns a colored triangle mesh into a
model file, ``gen-maze`` writes a benchmark maze.  Exit codes: 0 success,
1 check or validation failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import modelio
from .checker import run
from .errors import PolycheckError
from .formulas import elaborate
from .geometry import build_cell_table, validate_combinatorial, validate_geometric
from .kripke import build_kripke
from .maze import MazeParams, generate_maze
from .parser import load_program
from .taskgraph import build_task_graph

ENV_WORKERS = "POLYCHECK_WORKERS"


def _default_workers() -> int:
    env = os.environ.get(ENV_WORKERS)
    if env:
        try:
            value = int(env)
            if value >= 1:
                return value
        except ValueError:
            pass
        print(f"warning: ignoring bad {ENV_WORKERS}={env!r}", file=sys.stderr)
    return os.cpu_count() or 1


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycheck",
        description="Spatial model checker for polyhedra given as simplicial complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run a specification file")
    check.add_argument("spec", help="specification file")
    check.add_argument("--model", help="model file, overriding the spec's load command")
    check.add_argument("--out", default=".", help="output directory (default: .)")
    check.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"worker count (default: ${ENV_WORKERS} or the CPU count)",
    )
    check.add_argument(
        "--validate",
        choices=["none", "combinatorial", "geometric"],
        default="none",
        help="validate the model before checking (default: none)",
    )
    check.add_argument(
        "--timing", action="store_true", help="print a parse/kripke/check/total timing block"
    )

    validate = sub.add_parser("validate", help="validate a model file")
    validate.add_argument("model", help="model file")
    validate.add_argument(
        "--level",
        choices=["combinatorial", "geometric"],
        default="combinatorial",
        help="geometric adds affine-independence and intersection checks",
    )
    validate.add_argument(
        "--tol", type=float, default=1e-9, help="geometric tolerance (default: 1e-9)"
    )

    convert = sub.add_parser("convert", help="convert a mesh into a model file")
    convert_sub = convert.add_subparsers(dest="format", required=True)
    obj = convert_sub.add_parser("obj", help="Wavefront OBJ with per-vertex colors")
    obj.add_argument("input", help="OBJ file")
    obj.add_argument("output", help="model file to write")
    obj.add_argument(
        "--levels", type=int, default=4, help="color quantization levels (default: 4)"
    )

    maze = sub.add_parser("gen-maze", help="generate a benchmark maze model")
    maze.add_argument("output", help="model file to write")
    maze.add_argument("--grid", required=True, help="room counts, e.g. 3,3,3")
    maze.add_argument("--black-fraction", type=float, default=0.3)
    maze.add_argument("--seed", type=int, default=0)
    maze.add_argument("--corridor-fraction", type=float, default=1.0)
    maze.add_argument("--room-size", type=float, default=1.0)
    maze.add_argument("--corridor-length", type=float, default=0.5)
    return parser


def _cmd_check(args) -> int:
    t_start = time.perf_counter()
    spec_path = Path(args.spec)
    program = load_program(spec_path)
    model_path, saves = elaborate(program)
    if args.model:
        model_path = args.model
    if model_path is None:
        print("error: no load command in the spec and no --model given", file=sys.stderr)
        return 2
    model_bytes = Path(model_path).read_bytes()
    model = modelio.load_model_json(model_bytes)
    t_parse = time.perf_counter()

    if args.validate != "none":
        report = validate_combinatorial(model)
        if report.ok and args.validate == "geometric":
            report = validate_geometric(model)
        if not report.ok:
            print(report.summary(), file=sys.stderr)
            return 1

    cells = build_cell_table(model)
    kripke = build_kripke(cells, model)
    t_kripke = time.perf_counter()

    workers = args.workers if args.workers else _default_workers()
    graph = build_task_graph(saves)
    results = run(kripke, graph, workers=workers)
    t_check = time.perf_counter()

    doc = modelio.ResultsDocument(
        model_hash=modelio.content_digest(model_bytes),
        cell_count=kripke.n,
        results=tuple(
            (label, tuple(bool(b) for b in results.values[label].bits))
            for label, _ in graph.save_roots
            if label in results.values
        ),
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / f"{spec_path.stem}.results.json"
    out_path.write_bytes(modelio.save_results_json(doc))
    t_total = time.perf_counter()

    if args.timing:
        header = f"{'Parse (ms)':>12} {'Kripke (ms)':>12} {'Check (ms)':>12} {'Total (ms)':>12}"
        row = (
            f"{(t_parse - t_start) * 1000:12.1f} {(t_kripke - t_parse) * 1000:12.1f} "
            f"{(t_check - t_kripke) * 1000:12.1f} {(t_total - t_start) * 1000:12.1f}"
        )
        print(header)
        print(row)
    print(f"wrote {out_path} ({len(doc.results)} result(s), {kripke.n} cells)")

    if results.errors:
        for label, message in results.errors.items():
            print(f"error: {label!r}: {message}", file=sys.stderr)
        return 1
    return 0


def _cmd_validate(args) -> int:
    model = modelio.load_model_json(Path(args.model).read_bytes())
    report = validate_combinatorial(model)
    if report.ok and args.level == "geometric":
        report = validate_geometric(model, tol=args.tol)
    print(report.summary())
    return 0 if report.ok else 1


def _cmd_convert_obj(args) -> int:
    model = modelio.import_obj(Path(args.input).read_bytes(), levels=args.levels)
    Path(args.output).write_bytes(modelio.save_model_json(model))
    print(f"wrote {args.output} ({len(model.simplexes)} cells)")
    return 0


def _cmd_gen_maze(args) -> int:
    try:
        grid = tuple(int(g) for g in args.grid.split(","))
    except ValueError:
        print(f"error: bad --grid {args.grid!r}, expected e.g. 3,3,3", file=sys.stderr)
        return 2
    params = MazeParams(
        grid=grid,  # type: ignore[arg-type]
        black_fraction=args.black_fraction,
        seed=args.seed,
        room_size=args.room_size,
        corridor_length=args.corridor_length,
        corridor_fraction=args.corridor_fraction,
    )
    model, _layout = generate_maze(params)
    Path(args.output).write_bytes(modelio.save_model_json(model))
    print(f"wrote {args.output} ({len(model.simplexes)} cells)")
    return 0


def main(argv=None) -> int:
    parser = _build_arg_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "convert":
            return _cmd_convert_obj(args)
        if args.command == "gen-maze":
            return _cmd_gen_maze(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PolycheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - never show a bare stack trace
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())

"""
metric-dim command line.

    python -m src.cli gen    hamcomp:m=7 --format json --out h7.json
    python -m src.cli dim    multi:m=3,4 --exact
    python -m src.cli verify crown:n=4 --landmarks x1,x2,x3
    python -m src.cli gaps   hamcomp:m=5 --landmarks y1,y2,x4,x5
    python -m src.cli table  --family hamcomp --range 5..9 --check-exact 18

Reports go to stdout as JSON (CSV for ``table``); logs go to stderr.
Exit codes: 0 ok, 1 negative answer, 2 usage error, 3 IO error.
"""
import argparse
import json
import logging
import sys
import time
from pathlib import Path

import pandas as pd
from tqdm import tqdm

from src import __version__
from src.config import load_config, setup_logging, solver_budget
from src.errors import (
    BudgetExceededError,
    ConstructionError,
    FamilyError,
    FormulaNeedsFamilySpecError,
    MetricDimError,
    NotAComplementFamilyError,
)
from src.graphs.families import (
    CROWN,
    HAMCOMP,
    MULTI,
    FamilySpec,
    family_distances,
    generate,
)
from src.graphs.graph_core import all_pairs_distances, format_landmarks, parse_landmarks
from src.graphs.graph_io import dump_graph, load_graph
from src.metric.resolving import verify_resolving
from src.metric.solver import greedy_resolving, solve_exact
from src.theory.constructions import construct_basis
from src.theory.formulas import formula_beta
from src.theory.gaps import check_facts, check_multicycle_conditions, gap_decompose

log = logging.getLogger(__name__)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

TABLE_COLUMNS = ["family", "params", "vertices", "case", "formula_beta",
                 "construction_size", "resolving", "exact_beta", "agree"]


class UsageError(MetricDimError):
    """Bad command-line input that argparse cannot catch."""


# --- helpers -------------------------------------------------------------------

def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def _report(command, source, results, timings):
    return {
        "command": command,
        "input": source,
        "results": results,
        "timings_ms": {k: round(max(v, 0.0), 3) for k, v in timings.items()},
        "version": __version__,
    }


class _Timer:
    def __init__(self):
        self.laps = {}

    def lap(self, name, start):
        self.laps[name] = (time.perf_counter() - start) * 1000.0


def _load_instance(args):
    """(spec or None, distance matrix, n per side or None, source label)."""
    if getattr(args, "input", None):
        if args.spec:
            raise UsageError("give either a family spec or --in PATH, not both")
        g = load_graph(args.input)
        half = g.num_vertices // 2 if g.num_vertices % 2 == 0 else None
        return None, all_pairs_distances(g), half, str(args.input)
    if not args.spec:
        raise UsageError("give a family spec or --in PATH")
    spec = FamilySpec.parse(args.spec)
    return spec, family_distances(spec), spec.n, str(spec)


def parse_range(text: str) -> list:
    """'3..6' -> [3, 4, 5, 6]; '5,7' -> [5, 7]; '8' -> [8]."""
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split(".."))
            values = list(range(lo, hi + 1))
        else:
            values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot read range {text!r}")
    if not values:
        raise UsageError(f"empty range {text!r}")
    return values


def partitions(n: int, smallest: int = 2):
    """Partitions of n into parts >= smallest, parts in non-decreasing order."""
    if n == 0:
        yield ()
        return
    for first in range(smallest, n + 1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def table_specs(family: str, values) -> list:
    specs = []
    for v in values:
        if family == CROWN:
            candidates = [(CROWN, (v,))]
        elif family == HAMCOMP:
            candidates = [(HAMCOMP, (v,))]
        else:
            candidates = [(MULTI, p) for p in partitions(v)]
        for kind, params in candidates:
            try:
                specs.append(FamilySpec(kind, params))
            except FamilyError as e:
                log.debug("skipping %s %s: %s", kind, params, e)
    return specs


# --- commands ------------------------------------------------------------------

def cmd_gen(args, cfg) -> int:
    spec = FamilySpec.parse(args.spec)
    instance = generate(spec)
    payload = dump_graph(instance.graph, args.format)
    if not args.out:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
        return EXIT_OK
    out = Path(args.out)
    out.write_bytes(payload)
    sidecar = out.with_name(out.name + ".layout.json")
    layout_doc = {"spec": str(spec), "n": spec.n}
    if spec.is_complement:
        layout_doc["cycles"] = [list(layout.vertices) for layout in instance.layouts]
    else:
        layout_doc["matching"] = [list(pair) for pair in instance.matching]
    sidecar.write_text(json.dumps(layout_doc) + "\n")
    log.info("layout written to %s", sidecar)
    log.info("%s (%d vertices, %d edges) written to %s",
             spec, instance.graph.num_vertices, instance.graph.num_edges, out)
    return EXIT_OK


def cmd_dim(args, cfg) -> int:
    timer = _Timer()
    if args.formula:
        if not args.spec or args.input:
            raise FormulaNeedsFamilySpecError("formula mode needs a family spec, not a graph file")
        start = time.perf_counter()
        spec = FamilySpec.parse(args.spec)
        result = formula_beta(spec)
        timer.lap("formula", start)
        _emit(_report("dim --formula", str(spec), result.to_dict(), timer.laps))
        return EXIT_OK

    start = time.perf_counter()
    spec, dm, half, source = _load_instance(args)
    timer.lap("distances", start)
    dm.require_connected()

    if args.greedy:
        start = time.perf_counter()
        basis = greedy_resolving(dm)
        timer.lap("greedy", start)
        results = {"upper_bound": len(basis), "basis": basis}
        if half:
            results["basis_xy"] = format_landmarks(basis, half)
        _emit(_report("dim --greedy", source, results, timer.laps))
        return EXIT_OK

    limit = int(cfg.get("solver", {}).get("max_exact_vertices", 24))
    if dm.num_vertices > limit and not args.force:
        raise UsageError(f"{dm.num_vertices} vertices exceeds the exact limit {limit}; pass --force")
    start = time.perf_counter()
    try:
        result = solve_exact(dm, solver_budget(cfg))
    except BudgetExceededError as e:
        log.error("%s", e)
        return EXIT_NEGATIVE
    timer.lap("exact", start)
    results = {"beta": result.beta, "basis": list(result.basis), "nodes": result.nodes,
               "bounds": [result.lower_bound, result.upper_bound]}
    if half:
        results["basis_xy"] = format_landmarks(result.basis, half)
    if spec is not None:
        results["formula"] = formula_beta(spec).to_dict()
    _emit(_report("dim --exact", source, results, timer.laps))
    return EXIT_OK


def cmd_verify(args, cfg) -> int:
    timer = _Timer()
    start = time.perf_counter()
    spec, dm, half, source = _load_instance(args)
    landmarks = parse_landmarks(args.landmarks, half)
    report = verify_resolving(dm, landmarks)
    timer.lap("verify", start)
    results = report.to_dict()
    if half:
        results["landmarks_xy"] = format_landmarks(report.landmarks, half)
    _emit(_report("verify", source, results, timer.laps))
    return EXIT_OK if report.resolving else EXIT_NEGATIVE


def cmd_gaps(args, cfg) -> int:
    timer = _Timer()
    start = time.perf_counter()
    spec = FamilySpec.parse(args.spec)
    if not spec.is_complement:
        raise NotAComplementFamilyError(f"{spec} has no removed cycle to take gaps along")
    if args.landmarks:
        landmarks = parse_landmarks(args.landmarks, spec.n)
    else:
        landmarks = construct_basis(spec)
        log.info("no landmarks given, auditing the construction %s",
                 format_landmarks(landmarks, spec.n))
    audits = [check_facts(gap_decompose(layout, landmarks)) for layout in generate(spec).layouts]
    audit = audits[0] if spec.kind == HAMCOMP else check_multicycle_conditions(audits)
    timer.lap("gaps", start)

    results = audit.to_dict()
    results["landmarks"] = sorted(landmarks)
    results["landmarks_xy"] = format_landmarks(landmarks, spec.n)
    _emit(_report("gaps", str(spec), results, timer.laps))
    ok = audit.facts_hold and (audit.conditions is None or audit.conditions_hold)
    return EXIT_OK if ok else EXIT_NEGATIVE


def table_row(spec: FamilySpec, check_exact: int, budget: int) -> dict:
    formula = formula_beta(spec)
    dm = family_distances(spec)
    try:
        basis = construct_basis(spec)
        size = len(basis)
        resolving = verify_resolving(dm, basis).resolving
    except ConstructionError as e:
        log.error("%s: %s", spec, e)
        size, resolving = "-", False

    exact, exhausted = "-", False
    if spec.num_vertices <= check_exact:
        try:
            exact = solve_exact(dm, budget).beta
        except BudgetExceededError as e:
            log.error("%s: %s", spec, e)
            exact, exhausted = "budget", True

    agree = resolving and not exhausted and size == formula.beta and exact in ("-", formula.beta)
    return {
        "family": spec.kind,
        "params": "+".join(str(p) for p in spec.params),
        "vertices": spec.num_vertices,
        "case": formula.case_tag,
        "formula_beta": formula.beta,
        "construction_size": size,
        "resolving": "yes" if resolving else "no",
        "exact_beta": exact,
        "agree": "yes" if agree else "no",
    }


def cmd_table(args, cfg) -> int:
    table_cfg = cfg.get("table", {})
    text = args.range or table_cfg.get("ranges", {}).get(args.family)
    if not text:
        raise UsageError(f"no range given for {args.family}")
    specs = table_specs(args.family, parse_range(str(text)))
    if not specs:
        raise UsageError(f"range {text!r} holds no valid {args.family} instance")
    check_exact = args.check_exact if args.check_exact is not None else int(table_cfg.get("check_exact", 0))
    budget = solver_budget(cfg)

    rows = []
    for spec in tqdm(specs, desc=f"{args.family} table", disable=args.quiet, file=sys.stderr):
        rows.append(table_row(spec, check_exact, budget))
    df = pd.DataFrame(rows, columns=TABLE_COLUMNS)
    df.to_csv(sys.stdout, index=False, lineterminator="\n")

    bad = df[df["agree"] != "yes"]
    for _, row in bad.iterrows():
        log.warning("disagreement: %s %s formula=%s construction=%s exact=%s",
                    row["family"], row["params"], row["formula_beta"],
                    row["construction_size"], row["exact_beta"])
    return EXIT_NEGATIVE if len(bad) else EXIT_OK


# --- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="path to config.yaml")
    common.add_argument("--quiet", action="store_true", help="warnings only, no progress bars")

    parser = argparse.ArgumentParser(prog="metric-dim",
                                     description="Metric dimension of regular bipartite graphs")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a family instance")
    p.add_argument("spec", help='e.g. "crown:n=5", "hamcomp:m=7", "multi:m=2,3,5"')
    p.add_argument("--format", choices=["graph6", "json"], default="graph6")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("dim", parents=[common], help="metric dimension")
    p.add_argument("spec", nargs="?")
    p.add_argument("--in", dest="input", default=None, help=".g6 or .json graph file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="branch-and-bound (default)")
    mode.add_argument("--greedy", action="store_true")
    mode.add_argument("--formula", action="store_true")
    p.add_argument("--force", action="store_true", help="allow exact search above the vertex limit")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("verify", parents=[common], help="check a landmark set")
    p.add_argument("spec", nargs="?")
    p.add_argument("--in", dest="input", default=None)
    p.add_argument("--landmarks", required=True, help='ids or x/y labels, e.g. "0,1" or "x1,y2"')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gaps", parents=[common], help="gap audit along the removed cycles")
    p.add_argument("spec")
    p.add_argument("--landmarks", default=None, help="defaults to the theorem construction")
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("table", parents=[common], help="formula vs construction vs exact")
    p.add_argument("--family", choices=[CROWN, HAMCOMP, MULTI], required=True)
    p.add_argument("--range", default=None, help='"3..6" or "5,7,9"; multi ranges are over n')
    p.add_argument("--check-exact", type=int, default=None,
                   help="run the exact solver on instances up to this many vertices")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except OSError as e:
        print(f"cannot read config: {e}", file=sys.stderr)
        return EXIT_IO
    except (MetricDimError, ValueError) as e:
        print(f"bad config: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(cfg, quiet=args.quiet)

    try:
        return args.func(args, cfg)
    except OSError as e:
        log.error("%s", e)
        return EXIT_IO
    except MetricDimError as e:
        log.error("%s: %s", type(e).__name__, e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""
Racah Verification Application
Runs the verification suites from the command line and writes JSON and DOT reports
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from check_runner import CheckRunner, CheckTask, RelationReport, default_thread_count, summarize
from coalgebra_realisation import AlgebraMode
from param_ring import HBAR, AlgebraError, draw_parameters
from racah import (
    DEFAULT_HAMILTONIAN_SEED,
    casimir_tasks,
    classical_limit_tasks,
    emit_chain_graph,
    generator_set,
    involution_tasks,
    ladder_tasks,
    racah_relation_tasks,
    substructure,
    substructure_suite_tasks,
)

logger = logging.getLogger(__name__)

MODES = ("classical", "quantum", "both")
SUITES = ("racah", "substructures", "casimirs", "involution", "limit", "all")
PARAMS = ("exact", "random")
DEFAULT_SEED = 1

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_ERROR = 3


@dataclass
class RunConfig:
    n: int
    mode: str = "both"
    suite: str = "all"
    params: str = "exact"
    seed: Optional[int] = None
    json_path: Optional[str] = None
    dot_path: Optional[str] = None
    threads: int = 1
    exploratory: bool = False
    timings: bool = False
    verbose: bool = False

    def algebra_modes(self) -> List[AlgebraMode]:
        if self.mode == "both":
            return [AlgebraMode.CLASSICAL, AlgebraMode.QUANTUM]
        return [AlgebraMode(self.mode)]

    def suites(self) -> List[str]:
        return [s for s in SUITES if s != "all"] if self.suite == "all" else [self.suite]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="racah", description="Exact verification of the generalised Racah algebra R(n)")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run verification suites")
    verify.add_argument("--n", type=int, required=True, help="number of sites (at least 3)")
    verify.add_argument("--mode", choices=MODES, default="both")
    verify.add_argument("--suite", choices=SUITES, default="all")
    verify.add_argument("--params", choices=PARAMS, default="exact",
                        help="exact keeps a_i and hb symbolic, random substitutes seeded rationals")
    verify.add_argument("--seed", type=int, default=None, help="unsigned 64-bit seed for random parameters")
    verify.add_argument("--json", dest="json_path", default=None, help="write the JSON report here")
    verify.add_argument("--dot", dest="dot_path", default=None, help="write the chain graph here")
    verify.add_argument("--threads", type=int, default=None, help="worker threads (overrides RACAH_THREADS)")
    verify.add_argument("--exploratory", action="store_true",
                        help="also run the operator forms of relation families 2-5 (not part of the pass criteria)")
    verify.add_argument("--timings", action="store_true", help="record elapsed milliseconds per check")
    verify.add_argument("--verbose", action="store_true")
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse flags into a RunConfig; usage problems exit with status 2"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.n < 3:
        parser.error(f"--n must be at least 3, got {args.n}")
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        parser.error("--seed must be an unsigned 64-bit integer")
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be positive")
    if args.suite == "limit" and args.mode == "classical":
        parser.error("--suite limit compares quantum against classical; use --mode quantum or both")

    try:
        threads = args.threads or default_thread_count()
    except ValueError as e:
        parser.error(str(e))

    seed = args.seed
    if args.params == "random" and seed is None:
        seed = DEFAULT_SEED

    return RunConfig(
        n=args.n,
        mode=args.mode,
        suite=args.suite,
        params=args.params,
        seed=seed,
        json_path=args.json_path,
        dot_path=args.dot_path,
        threads=threads,
        exploratory=args.exploratory,
        timings=args.timings,
        verbose=args.verbose,
    )


def parameter_bindings(config: RunConfig) -> Tuple[dict, dict]:
    """(a_i bindings for the generators, hb binding for the residuals); both empty when exact"""
    if config.params != "random":
        return {}, {}
    drawn = draw_parameters(config.n, config.seed, include_hbar=True)
    hbar_value = {HBAR: drawn.pop(HBAR)}
    return drawn, hbar_value


def build_tasks(config: RunConfig, bindings: dict) -> Tuple[List[CheckTask], List[CheckTask]]:
    """Checks split into (hb may be bound, hb must stay symbolic)"""
    n = config.n
    hamiltonian_seed = config.seed if config.seed is not None else DEFAULT_HAMILTONIAN_SEED
    tasks, symbolic_hbar = [], []
    for suite in config.suites():
        if suite == "limit":
            if AlgebraMode.QUANTUM in config.algebra_modes():
                symbolic_hbar += classical_limit_tasks(n, bindings)
            continue
        for mode in config.algebra_modes():
            gs = generator_set(mode, n, bindings)
            if suite == "racah":
                tasks += racah_relation_tasks(gs, config.exploratory) + ladder_tasks(gs)
            elif suite == "substructures":
                tasks += substructure_suite_tasks(mode, n, bindings)
            elif suite == "casimirs":
                for k in range(2, n):
                    tasks += casimir_tasks(substructure(mode, n, k, generators=gs))
            elif suite == "involution":
                tasks += involution_tasks(mode, n, bindings, hamiltonian_seed)
    return tasks, symbolic_hbar


def exit_code(reports: Sequence[RelationReport]) -> int:
    # a run that checked nothing has not passed
    if not reports:
        return EXIT_ERROR
    if any(report.status == "error" for report in reports):
        return EXIT_ERROR
    if any(report.status == "fail" for report in reports):
        return EXIT_FAIL
    return EXIT_PASS


def build_report(config: RunConfig, reports: Sequence[RelationReport]) -> dict:
    return {
        "n": config.n,
        "mode": config.mode,
        "suite": config.suite,
        "params": config.params,
        "seed": config.seed,
        "checks": [report.to_json() for report in reports],
        "summary": summarize(reports),
    }


def summary_table(reports: Sequence[RelationReport]) -> pd.DataFrame:
    """Pass/fail/error counts per check family"""
    if not reports:
        return pd.DataFrame(columns=["pass", "fail", "error"])
    frame = pd.DataFrame([{"check": r.check_name, "status": r.status} for r in reports])
    table = frame.groupby(["check", "status"]).size().unstack(fill_value=0)
    for column in ("pass", "fail", "error"):
        if column not in table.columns:
            table[column] = 0
    return table[["pass", "fail", "error"]]


def print_summary(config: RunConfig, reports: Sequence[RelationReport]):
    print(f"🧮 Racah algebra R({config.n}) verification")
    print("=" * 60)
    print(f"Mode: {config.mode}   Suite: {config.suite}   Params: {config.params}"
          + (f" (seed {config.seed})" if config.params == "random" else ""))
    print("-" * 60)
    print(summary_table(reports).to_string())
    print("=" * 60)

    for report in reports:
        if report.status != "pass":
            marker = "❌" if report.status == "fail" else "⚠️ "
            print(f"{marker} {report.check_name} {list(report.index_tuple)}: {report.residual_term_count} residual terms")
            for line in report.residual_preview:
                print(f"     {line}")

    totals = summarize(reports)
    if not totals["total"]:
        print("⚠️  No checks were run")
    elif totals["failed"]:
        print(f"❌ {totals['failed']} of {totals['total']} checks did not pass")
    else:
        print(f"✅ All {totals['total']} checks passed")


def run(config: RunConfig) -> Tuple[int, dict]:
    bindings, hbar_binding = parameter_bindings(config)
    tasks, symbolic_hbar = build_tasks(config, bindings)
    logger.info("built %d checks (%d with symbolic hb)", len(tasks) + len(symbolic_hbar), len(symbolic_hbar))

    reports = CheckRunner(config.threads, hbar_binding, config.timings).run(tasks)
    reports += CheckRunner(config.threads, None, config.timings).run(symbolic_hbar)
    reports.sort(key=RelationReport.sort_key)

    report = build_report(config, reports)
    print_summary(config, reports)
    try:
        write_outputs(config, report)
    except OSError as e:
        logger.error("could not write output: %s", e)
        print(f"⚠️  Could not write output: {e}")
        return EXIT_USAGE, report
    return exit_code(reports), report


def write_outputs(config: RunConfig, report: dict):
    if config.json_path:
        with open(config.json_path, "w", encoding="utf-8") as handle:
            json.dump(report, handle, indent=2, ensure_ascii=False)
            handle.write("\n")
    if config.dot_path:
        with open(config.dot_path, "w", encoding="utf-8") as handle:
            handle.write(emit_chain_graph(config.n))


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    logging.basicConfig(level=logging.DEBUG if config.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    try:
        code, _ = run(config)
    except AlgebraError as e:
        print(f"⚠️  Internal algebra error: {e}")
        return EXIT_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())

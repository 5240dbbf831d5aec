"""Handler module for the bench-gen and bench-run subcommands."""

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ...services.benchgen import FAMILIES, BenchProblem, RunStats, generate, summarize, write_summary
from ...services.pipeline import AbduceOptions, run_abduce
from ...utils.config import BENCH_WORKERS, EXIT_OK, EXIT_USAGE, HARD_TIMEOUT, SOFT_TIMEOUT
from ...utils.exceptions import AbductionError
from ..parser import format_problem, parse_ofn, parse_problem, parse_tbox
from .abduce import read_input

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"


def problem_id(problem: BenchProblem, index: int) -> str:
    return f"{problem.family.lower()}_{index:03d}"


def handle_bench_gen(args: argparse.Namespace) -> int:
    """Write generated problems and their manifest into the output directory."""
    families = [f.strip().upper() for f in args.families.split(",") if f.strip()]
    unknown = [f for f in families if f not in FAMILIES]
    if unknown:
        print(f"error: unknown families: {', '.join(unknown)}", file=sys.stderr)
        return EXIT_USAGE
    try:
        text, source = read_input(args.input)
        tbox = parse_ofn(text) if args.input_format == "ofn" else parse_tbox(text, source)
    except (AbductionError, OSError) as e:
        logger.error(f"Cannot read TBox: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    problems = generate(tbox, families, count=args.count, seed=args.seed, source=Path(source).name)
    manifest = []
    counters: Dict[str, int] = {}
    for problem in problems:
        counters[problem.family] = counters.get(problem.family, 0) + 1
        pid = problem_id(problem, counters[problem.family])
        (out / f"{pid}.abd").write_text(format_problem(problem.problem))
        manifest.append({
            'id': pid,
            'family': problem.family,
            'seed': problem.seed,
            'file': f"{pid}.abd",
            'source_meta': dict(problem.source_meta),
        })
    (out / MANIFEST).write_text(json.dumps(manifest, indent=2))
    logger.info(f"Wrote {len(manifest)} problems to {out}")
    return EXIT_OK


def _entries(directory: Path) -> List[Dict[str, str]]:
    manifest = directory / MANIFEST
    if manifest.exists():
        return json.loads(manifest.read_text())
    return [
        {'id': path.stem, 'family': path.stem.split("_")[0].upper(), 'file': path.name}
        for path in sorted(directory.glob("*.abd"))
    ]


def run_one(directory: Path, entry: Dict[str, str], options: AbduceOptions) -> RunStats:
    """Run one benchmark problem; errors are recorded, never raised."""
    stats = RunStats(problem_id=entry['id'], family=entry['family'])
    try:
        path = directory / entry['file']
        problem = parse_problem(path.read_text(), str(path))
        report = run_abduce(problem, options)
    except (AbductionError, OSError) as e:
        logger.warning(f"Problem {entry['id']} failed: {e}")
        stats.error = str(e)
        return stats
    stats.success = report.negative_implicates > 0
    stats.complete = report.complete
    stats.num_hypotheses = len(report.hypotheses)
    stats.hypothesis_sizes = [len(h) for h in report.hypotheses]
    stats.axiom_sizes = [a.size() for h in report.hypotheses for a in h.sorted_axioms()]
    stats.phase_ms = dict(report.phase_ms)
    stats.max_term_depth = report.max_term_depth
    stats.peak_memory_mb = report.memory_mb
    return stats


async def run_all(
    directory: Path, entries: List[Dict[str, str]], options: AbduceOptions, workers: int
) -> List[RunStats]:
    """Run every entry on worker threads; results keep the order of `entries`."""
    semaphore = asyncio.Semaphore(max(1, workers))

    async def run(entry: Dict[str, str]) -> RunStats:
        async with semaphore:
            stats = await asyncio.to_thread(run_one, directory, entry, options)
            logger.info(f"Problem {entry['id']}: {stats.num_hypotheses} hypotheses in {stats.time_s:.2f}s")
            return stats

    return list(await asyncio.gather(*(run(entry) for entry in entries)))


def handle_bench_run(args: argparse.Namespace) -> int:
    """Run a directory of problems and write per-problem records plus the summary table."""
    directory = Path(args.problems)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return EXIT_USAGE
    entries = sorted(_entries(directory), key=lambda e: e['id'])
    options = AbduceOptions(
        soft_timeout=args.soft_timeout if args.soft_timeout is not None else SOFT_TIMEOUT,
        hard_timeout=args.hard_timeout if args.hard_timeout is not None else HARD_TIMEOUT,
        use_modules=not args.no_modules,
        presaturate=not args.no_presaturation,
        depth_bound=args.depth_bound,
    )
    workers = args.workers or BENCH_WORKERS
    logger.info(f"Running {len(entries)} problems on {workers} workers")
    runs = asyncio.run(run_all(directory, entries, options, workers))

    out = Path(args.out_dir or directory)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "results.jsonl", "w") as f:
        for stats in runs:
            f.write(json.dumps(stats.to_dict()) + "\n")
    rows = summarize(runs)
    write_summary(rows, out / "summary.csv", out / "summary.json")
    for row in rows:
        print(
            f"{row['family']}: {row['problems']} problems, success {row['success_rate']}%, "
            f"complete {row['completion_rate']}%, #H median {row['num_h_median']}"
        )
    return EXIT_OK

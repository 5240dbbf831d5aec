"""Handlers package for the command-line front end."""

from .abduce import handle_abduce, load_problem, build_options
from .classify import handle_classify
from .bench import handle_bench_gen, handle_bench_run, run_one

# Subcommand name -> handler; every handler returns the exit code
command_handlers = {
    "abduce": handle_abduce,
    "classify": handle_classify,
    "bench-gen": handle_bench_gen,
    "bench-run": handle_bench_run
}

__all__ = [
    # Main handlers
    'handle_abduce',
    'handle_classify',
    'handle_bench_gen',
    'handle_bench_run',

    # Helpers
    'load_problem',
    'build_options',
    'run_one',

    # Handler mapping
    'command_handlers'
]

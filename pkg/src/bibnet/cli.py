"""Command-line entry point.

Subcommands mirror the pipeline stages; global flags override values
from an optional key=value config file.  Exit codes: 0 success,
2 input/parse error, 3 config error, 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import sys

from . import pipeline
from .canonical import ParseError
from .centrality import ConvergenceError
from .config import (
    BETWEENNESS_NORMS,
    CLOSENESS_MODES,
    ConfigError,
    EIGEN_MODES,
    FORMATS,
    KINDS,
    build_config,
    parse_config_file,
)
from .manifest import LockError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_NUMERIC = 4


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--input", help="input corpus file")
    common.add_argument("--format", choices=FORMATS, help="input format")
    common.add_argument("--out", help="output directory")
    common.add_argument(
        "--kind",
        action="append",
        choices=sorted(KINDS),
        help="entity level (repeatable)",
    )
    common.add_argument("--year-min", type=int, dest="year_min")
    common.add_argument("--year-max", type=int, dest="year_max")
    common.add_argument(
        "--doc-types", dest="doc_types", help='comma list of document types or "all"'
    )
    common.add_argument("--seed", type=int, help="community detection seed")
    common.add_argument("--resolution", type=float, help="modularity resolution")
    common.add_argument("--threads", type=int, help="worker threads for BFS measures")
    common.add_argument("--top-k", type=int, dest="top_k", help="ranking length")
    common.add_argument("--weights", help="comma list of four criterion weights")
    common.add_argument(
        "--betweenness-norm", choices=BETWEENNESS_NORMS, dest="betweenness_norm"
    )
    common.add_argument("--closeness", choices=CLOSENESS_MODES)
    common.add_argument("--eigen", choices=EIGEN_MODES)

    parser = argparse.ArgumentParser(
        prog="bibnet",
        description="Co-occurrence network analysis for bibliographic corpora",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ingest", parents=[common], help="parse and filter the corpus")
    sub.add_parser("build", parents=[common], help="build co-occurrence networks")
    sub.add_parser("analyze", parents=[common], help="centralities and communities")
    sub.add_parser("rank", parents=[common], help="TOPSIS top-k ranking")
    sub.add_parser("report", parents=[common], help="aggregate run report")
    return parser


_STAGES = {
    "ingest": pipeline.cmd_ingest,
    "build": pipeline.cmd_build,
    "analyze": pipeline.cmd_analyze,
    "rank": pipeline.cmd_rank,
    "report": pipeline.cmd_report,
}

_OVERRIDE_KEYS = (
    "input",
    "format",
    "out",
    "year_min",
    "year_max",
    "doc_types",
    "seed",
    "resolution",
    "threads",
    "top_k",
    "weights",
    "betweenness_norm",
    "closeness",
    "eigen",
)


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        file_values = parse_config_file(args.config) if args.config else None
        overrides: dict[str, object] = {
            key: getattr(args, key) for key in _OVERRIDE_KEYS
        }
        if args.kind:
            overrides["kinds"] = ",".join(args.kind)
        config = build_config(file_values, overrides)
    except ConfigError as exc:
        print(f"bibnet: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        _STAGES[args.command](config)
    except (ParseError, pipeline.PipelineInputError, LockError, OSError) as exc:
        print(f"bibnet: {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConvergenceError as exc:
        print(f"bibnet: {args.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

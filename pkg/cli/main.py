"""
ebf-reasoner: command-line entry point.

Usage:
    ebf-reasoner entail  --kb penguin --engine lcd "b & p" "!f"
    ebf-reasoner analyze --kb legs --format json
    ebf-reasoner compare --kb wings "b & p & m" "!f"
    ebf-reasoner oracle  --kb penguin --eps 1/100,1/10000
    ebf-reasoner oracle  --seed 7 --size 50

``--kb`` takes a path to a ``.kb`` file or the stem of a shipped fixture.

Exit codes: 0 success (whatever the verdict), 1 usage/parse/solver errors or a
failed oracle bound, 2 inconsistent knowledge base.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

from default_reasoner.analyser import KnowledgeBaseAnalyser
from default_reasoner.config import Settings, get_settings
from default_reasoner.engines.oracle import SAME_ORDER_NOTE, OracleRun, run_oracle, run_random_suite
from default_reasoner.errors import InconsistentBaseError, ReasonerError
from default_reasoner.knowledge_base import available_fixtures, fixture_path, load_kb
from default_reasoner.log_setup import configure_logging, get_logger
from default_reasoner.reasoner import ENGINES, DefaultReasoner
from default_reasoner.reports import (
    OracleCase,
    OracleReport,
    RungEntry,
    render_analysis,
    render_compare,
    render_oracle,
    render_query,
)

logger = get_logger("default_reasoner.cli")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONSISTENT = 2


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1, not argparse's 2 (reserved for inconsistent bases)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"[ERROR] {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-atoms", type=int, default=None, help="vocabulary capacity")
    common.add_argument("--seed", type=int, default=None, help="seed for random suites")
    common.add_argument("--log-level", default=None)

    with_kb = argparse.ArgumentParser(add_help=False, parents=[common])
    with_kb.add_argument("--kb", required=True, help="path to a .kb file or a fixture name")

    parser = _Parser(prog="ebf-reasoner", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    entail = sub.add_parser("entail", parents=[with_kb], help="decide alpha ~> beta with one engine")
    entail.add_argument("--engine", choices=list(ENGINES), required=True)
    entail.add_argument("alpha")
    entail.add_argument("beta")

    sub.add_parser("analyze", parents=[with_kb], help="strata, LC chain, LCD classes, world table")

    compare = sub.add_parser("compare", parents=[with_kb], help="one query through every engine")
    compare.add_argument("alpha")
    compare.add_argument("beta")

    oracle = sub.add_parser("oracle", parents=[common], help="numeric cross-check of the LCD model")
    oracle.add_argument("--kb", default=None, help="omit to run over a seeded random suite")
    oracle.add_argument("--eps", default=None, help="comma-separated rationals in (0, 1)")
    oracle.add_argument("--size", type=int, default=50, help="random suite size")
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    update = {
        key: value
        for key, value in (
            ("max_atoms", args.max_atoms),
            ("seed", args.seed),
            ("log_level", args.log_level),
            ("oracle_eps", getattr(args, "eps", None)),
        )
        if value is not None
    }
    # model_copy skips validation, so re-validate the merged fields
    return Settings.model_validate({**get_settings().model_dump(), **update})


def _resolve_kb(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    try:
        return fixture_path(name)
    except KeyError:
        raise ReasonerError(
            f"no file or fixture {name!r}; fixtures: {', '.join(available_fixtures())}"
        ) from None


def _load(args: argparse.Namespace, settings: Settings) -> DefaultReasoner:
    path = _resolve_kb(args.kb)
    base = load_kb(path, capacity=settings.max_atoms)
    return DefaultReasoner(base, source=path.stem)


def _emit(model, text: str, fmt: str) -> None:
    print(model.model_dump_json(indent=2) if fmt == "json" else text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_entail(args: argparse.Namespace, settings: Settings) -> int:
    reasoner = _load(args, settings)
    result = reasoner.entail(args.engine, args.alpha, args.beta)
    _emit(result, render_query(result), args.format)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    reasoner = _load(args, settings)
    report = KnowledgeBaseAnalyser(reasoner).analyse()
    _emit(report, render_analysis(report), args.format)
    return EXIT_OK if report.consistent else EXIT_INCONSISTENT


def cmd_compare(args: argparse.Namespace, settings: Settings) -> int:
    reasoner = _load(args, settings)
    report = reasoner.compare(args.alpha, args.beta, parallel=settings.parallel_compare)
    _emit(report, render_compare(report), args.format)
    return EXIT_OK


def _sci(value: Fraction) -> str:
    return f"{float(value):.3e}"


def _oracle_case(case_id: str, run: OracleRun) -> OracleCase:
    return OracleCase(
        case_id=case_id,
        degrees={f"e{d}": x for d, x in sorted(run.degrees.items())},
        rungs=[
            RungEntry(
                eps=str(rung.base_eps),
                ratio_error=_sci(rung.ratio_error),
                ratio_bound=_sci(rung.ratio_bound),
                belief_gap=_sci(rung.belief_gap),
                belief_bound=_sci(rung.belief_bound),
                confirmed=rung.confirmed,
                refuted=[f"{t1} >> {t2}" for t1, t2 in rung.refuted],
                error=rung.error,
                ok=rung.ok,
            )
            for rung in run.rungs
        ],
        same_order=[f"{t1} ~ {t2}: {SAME_ORDER_NOTE}" for t1, t2 in run.same_order],
    )


def cmd_oracle(args: argparse.Namespace, settings: Settings) -> int:
    ladder = settings.eps_ladder
    if args.kb is not None:
        reasoner = _load(args, settings)
        report = OracleReport(
            source=reasoner.source,
            cases=[_oracle_case(reasoner.source, run_oracle(reasoner.lcd_model, ladder))],
        )
    else:
        outcomes = run_random_suite(settings.seed, ladder, size=args.size)
        report = OracleReport(
            source=f"random suite (seed {settings.seed}, {args.size} bases)",
            cases=[
                _oracle_case(o.case_id, o.run) if o.run is not None
                else OracleCase(case_id=o.case_id, error=o.error)
                for o in outcomes
            ],
        )
        if report.skipped:
            logger.warning("%d bases skipped: no LCD model", len(report.skipped))
    _emit(report, render_oracle(report), args.format)
    return EXIT_OK if report.ok else EXIT_ERROR


COMMANDS = {
    "entail": cmd_entail,
    "analyze": cmd_analyze,
    "compare": cmd_compare,
    "oracle": cmd_oracle,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR

    try:
        settings = _settings(args)
    except ValueError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return EXIT_ERROR
    configure_logging(settings.log_level)

    try:
        return COMMANDS[args.command](args, settings)
    except InconsistentBaseError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ReasonerError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

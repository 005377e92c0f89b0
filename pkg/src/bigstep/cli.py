"""Command-line front end.

Commands
--------
run          derive one result configuration and print it
derive       print every result derivable within the depth budget
check-valid  derived results are members of the spec's sets
check-verif  spec-assisted inferred results are members of the spec's sets
crosscheck   engine self-test: derivation and inference agree instance-wise
star-check   check-verif against the most informative (derivation) spec

Exit codes: 0 pass / result, 1 check failed, 2 usage or parse error,
3 stuck configuration, 4 budget exhausted without a verdict.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import random_programs, spec_lib
from .kernel import (BUDGET_EXHAUSTED, CheckReport, FAIL, PASS,
                     PRECONDITION_FAILED, SampleBudget,
                     Specification, check_soundness_crosscheck, check_valid,
                     check_verif, derive_all, star_spec, trivial_spec)
from .lang_extwhile import PLUGIN as _EXTWHILE
from .lang_fun import PLUGIN as _FUN
from .lang_while import PLUGIN as _WHILE
from .syntax import ParseError

SCHEMA_VERSION = "1"

PLUGINS = {"while": _WHILE, "extwhile": _EXTWHILE, "fun": _FUN}

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_STUCK = 3
EXIT_BUDGET = 4


class CliError(Exception):
    """A usage/parse problem; maps to exit code 2."""


def _parse_range(text: str) -> list[int]:
    """'1..6' -> [1,...,6]; '3' -> [3]; '1,2,5' -> [1,2,5]."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        if "," in text:
            return [int(p) for p in text.split(",")]
        return [int(text)]
    except ValueError as exc:
        raise CliError("bad range %r: %s" % (text, exc)) from exc


def _env_int(name: str):
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise CliError("%s must be an integer, got %r" % (name, raw)) from exc


def _budget(args) -> SampleBudget:
    depth = _env_int("BIGSTEP_DEPTH")
    samples = _env_int("BIGSTEP_SAMPLES")
    if args.depth is not None:
        depth = args.depth
    if args.samples is not None:
        samples = args.samples
    try:
        return SampleBudget(max_depth=depth if depth is not None else 64,
                            max_samples=samples if samples is not None else 8,
                            seed=args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _plugin(args):
    if args.lang not in PLUGINS:
        raise CliError("unknown language %r (choose from %s)"
                       % (args.lang, ", ".join(sorted(PLUGINS))))
    return PLUGINS[args.lang]


def _resolve_spec(args, budget) -> Specification:
    name = args.spec
    if name in (None, "none", "trivial"):
        return trivial_spec()
    if name == "star":
        return star_spec(_plugin(args), budget)
    entry = spec_lib.SPECS.get(name)
    if entry is None:
        raise CliError("unknown spec %r (choose from %s, star, none)"
                       % (name, ", ".join(sorted(spec_lib.SPECS))))
    lang, factory = entry
    if lang != args.lang:
        raise CliError("spec %r is for language %r, not %r"
                       % (name, lang, args.lang))
    spec = factory()
    if args.param is not None:
        domain = []
        for p in args.param.split(","):
            p = p.strip()
            domain.append(None if p == "none" else int(p))
        spec = Specification(tuple(domain), spec.at)
    return spec


def _config_text(args) -> str | None:
    parts = []
    if args.program is not None:
        try:
            with open(args.program, "r", encoding="utf-8") as fh:
                parts.append(fh.read().strip())
        except OSError as exc:
            raise CliError("cannot read %s: %s" % (args.program, exc)) from exc
    if getattr(args, "config", None):
        parts.append(args.config)
    if not parts:
        return None
    text = " || ".join(parts)
    if args.state is not None:
        text += " || " + args.state
    return text


def _corpus(args, plugin, budget) -> list:
    text = _config_text(args)
    if text is not None:
        try:
            return [plugin.parse_config(text)]
        except ParseError as exc:
            raise CliError("parse error: %s" % exc) from exc
    name = args.spec
    count = args.count
    if name in ("fac", "fac-bad"):
        return spec_lib.fac_corpus(_parse_range(args.m or "1..6"))
    if name in ("msort", "msort-nosort"):
        return spec_lib.msort_corpus(count or 8, budget.seed)
    if name in ("mglist", "mglist-len"):
        return spec_lib.mglist_corpus(count or 8, budget.seed)
    if name == "star" or name in (None, "none", "trivial"):
        return random_programs.loop_free_corpus(args.lang, count or 50,
                                                budget.seed)
    raise CliError("no default corpus for spec %r; pass --program/--config"
                   % name)


def _emit(args, doc: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _base_doc(args, budget, command: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "budget": {"depth": budget.max_depth, "samples": budget.max_samples,
                   "seed": budget.seed},
    }


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_run(args) -> int:
    plugin = _plugin(args)
    budget = _budget(args)
    text = _config_text(args)
    if text is None:
        raise CliError("run needs --program and/or --config")
    try:
        gamma = plugin.parse_config(text)
    except ParseError as exc:
        raise CliError("parse error: %s" % exc) from exc
    results, exhausted = derive_all(plugin, gamma, budget)
    doc = _base_doc(args, budget, args.command)
    doc["results"] = [plugin.pretty(r) for r in results]
    if args.command == "run":
        if results:
            doc["status"] = "result"
            _emit(args, doc, [plugin.pretty(results[0])])
            return EXIT_PASS
    elif results or not exhausted:
        doc["status"] = "result" if results else "stuck"
        lines = [plugin.pretty(r) for r in results]
        if not results:
            lines = ["stuck at %s" % plugin.pretty(gamma)]
        _emit(args, doc, lines)
        return EXIT_PASS if results else EXIT_STUCK
    if exhausted:
        doc["status"] = "budget_exhausted"
        _emit(args, doc, ["budget exhausted (depth %d)" % budget.max_depth])
        return EXIT_BUDGET
    doc["status"] = "stuck"
    _emit(args, doc, ["stuck at %s" % plugin.pretty(gamma)])
    return EXIT_STUCK


def cmd_check(args) -> int:
    plugin = _plugin(args)
    budget = _budget(args)
    if args.command == "star-check":
        spec = star_spec(plugin, budget)
        if args.spec is None:
            args.spec = "star"
        corpus = _corpus(args, plugin, budget)
        report = check_verif(plugin, spec, corpus, budget)
    else:
        if args.spec is None:
            raise CliError("%s needs --spec" % args.command)
        spec = _resolve_spec(args, budget)
        corpus = _corpus(args, plugin, budget)
        checker = {"check-valid": check_valid,
                   "check-verif": check_verif,
                   "crosscheck": check_soundness_crosscheck}[args.command]
        report = checker(plugin, spec, corpus, budget)
    return _report_exit(args, budget, plugin, report, len(corpus))


def _report_exit(args, budget, plugin, report: CheckReport,
                 corpus_size: int) -> int:
    doc = _base_doc(args, budget, args.command)
    doc.update(report.to_dict(plugin))
    doc["stats"] = dict(report.stats, corpus_size=corpus_size)
    lines = ["status: %s" % report.status,
             "corpus size: %d" % corpus_size]
    for key, val in sorted(report.stats.items()):
        lines.append("%s: %s" % (key, val))
    for cx in report.counterexamples:
        lines.append("counterexample (param=%r):" % (cx.param,))
        lines.append("  config:   %s" % plugin.pretty(cx.config))
        lines.append("  result:   %s" % plugin.pretty(cx.result))
        lines.append("  expected: %s" % cx.expected)
    _emit(args, doc, lines)
    if report.status == PASS:
        return EXIT_PASS
    if report.status in (FAIL, PRECONDITION_FAILED):
        return EXIT_FAIL
    if report.status == BUDGET_EXHAUSTED:
        return EXIT_BUDGET
    return EXIT_FAIL


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bigstep",
        description="Big-step semantics workbench: run programs and check "
                    "specifications over the bundled languages.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_config: bool):
        p.add_argument("--lang", required=True,
                       help="language plugin: while | extwhile | fun")
        p.add_argument("--spec", default=None,
                       help="bundled spec name, 'star', or 'none'")
        p.add_argument("--depth", type=int, default=None,
                       help="max derivation depth (env BIGSTEP_DEPTH)")
        p.add_argument("--samples", type=int, default=None,
                       help="max samples per spec set (env BIGSTEP_SAMPLES)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--param", default=None,
                       help="comma-separated parameter values to check")
        p.add_argument("--program", default=None,
                       help="program file (language concrete syntax)")
        p.add_argument("--config", default=None,
                       help="configuration text (overrides default corpus)")
        p.add_argument("--state", default=None,
                       help="initial state text, appended to the program")
        if not needs_config:
            p.add_argument("--m", default=None,
                           help="parameter range for the fac corpus, "
                                "e.g. 1..6")
            p.add_argument("--count", type=int, default=None,
                           help="size of generated corpora")

    for name in ("run", "derive"):
        p = sub.add_parser(name)
        common(p, needs_config=True)
        p.set_defaults(func=cmd_run)
    for name in ("check-valid", "check-verif", "crosscheck", "star-check"):
        p = sub.add_parser(name)
        common(p, needs_config=False)
        p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

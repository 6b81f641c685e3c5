"""Command-line driver: ``liext run``, ``liext corpus``, ``liext parse``."""
from __future__ import annotations

import argparse
import sys

from .audit import FAILED, VERDICTS
from .corpus import CASES
from .dsl import SpecError, parse_spec
from .parsing import ParseError
from .report import Report, parse_machine
from .runner import run
from .sampling import DEFAULT_SEED

EXIT_OK, EXIT_FAILED, EXIT_SPEC = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return parse_spec(_read(path))
    except (SpecError, ParseError) as err:
        print(f"spec error: {err}", file=sys.stderr)
    except OSError as err:
        print(f"cannot read spec: {err}", file=sys.stderr)
    return None


def cmd_run(args) -> int:
    spec = _load(args.spec)
    if spec is None:
        return EXIT_SPEC
    report = run(spec, args.seed)
    _emit(report.render(args.format), args.report)
    return EXIT_FAILED if report.failed else EXIT_OK


def cmd_parse(args) -> int:
    spec = _load(args.spec)
    if spec is None:
        return EXIT_SPEC
    print(f"{spec.name}: {len(spec.independent)} independent, {len(spec.dependent)} dependent, "
          f"{len(spec.ops)} operators, {len(spec.tasks)} tasks")
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.list:
        for cid, case in CASES.items():
            print(f"{cid}  {case.title}  ({len(case.claims)} claims)")
        return EXIT_OK
    ids = args.case or list(CASES)
    unknown = [c for c in ids if c not in CASES]
    if unknown:
        print(f"unknown corpus case(s): {', '.join(unknown)}", file=sys.stderr)
        return EXIT_SPEC
    chunks = []
    totals = {v: 0 for v in VERDICTS}
    failed = False
    for cid in ids:
        report: Report = run(parse_spec(CASES[cid].spec), args.seed)
        failed |= report.failed
        text = report.render(args.format)
        chunks.append(text)
        for block in parse_machine(text):
            for v in VERDICTS:
                totals[v] += int(block.get(f"summary.{v}", 0))
    summary = ["```machine", "corpus = " + ", ".join(ids)]
    summary += [f"total.{v} = {totals[v]}" for v in VERDICTS]
    summary += [f"status = {FAILED if failed else 'OK'}", "```"]
    _emit("\n".join(chunks) + "\n" + "\n".join(summary) + "\n", args.report)
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liext", description="Extended realisations and relative differential invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run the tasks of a problem spec")
    r.add_argument("--spec", required=True, help="spec file ('-' for stdin)")
    r.add_argument("--report", help="write the report here instead of stdout")
    r.add_argument("--format", choices=("text", "machine"), default="text")
    r.add_argument("--seed", type=int, default=DEFAULT_SEED)
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("corpus", help="run bundled regression cases")
    c.add_argument("--case", action="append", help="case id (repeatable); default all")
    c.add_argument("--list", action="store_true", help="list cases and exit")
    c.add_argument("--report")
    c.add_argument("--format", choices=("text", "machine"), default="text")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.set_defaults(func=cmd_corpus)

    q = sub.add_parser("parse", help="validate a spec without running it")
    q.add_argument("--spec", required=True)
    q.set_defaults(func=cmd_parse)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

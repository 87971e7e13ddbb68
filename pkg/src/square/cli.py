"""Command-line interface: ``square parse|translate|ask|eval``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .babi import TASKS, answer_question, bundled_path, evaluate, read_babi
from .errors import SquareError
from .knowledge import translate_passage
from .parsing import parse
from .reasoner import render_justification
from .rules import RULESET_NAMES, tags_for_task
from .trees import write_bracketed

ALL_TAGS = RULESET_NAMES[1:]


def read_story(path, index: int = 0) -> list[str]:
    """Declaratives of a story file: bAbI format (story ``index``) or one sentence per line."""
    text = Path(path).read_text("utf-8")
    lines = [l for l in text.splitlines() if l.strip()]
    if lines and lines[0].split(" ", 1)[0].isdigit():
        stories = read_babi(path)
        if not 0 <= index < len(stories):
            raise SquareError(f"{path} has {len(stories)} stories; no story {index}")
        return [t for _, t in stories[index].declaratives]
    return [l.strip() for l in lines]


def cmd_parse(args) -> int:
    print(write_bracketed(parse(" ".join(args.sentence))))
    return 0


def cmd_translate(args) -> int:
    program = translate_passage(read_story(args.story_file, args.story))
    tags = _tags(args)
    if args.emit_program:
        print(program.emit_program(tags))
    else:
        print(program.emit_facts())
    return 0


def cmd_ask(args) -> int:
    sentences = read_story(args.story_file, args.story)
    answer, just = answer_question(sentences, args.question, _tags(args))
    print(answer)
    if args.justify and just is not None:
        print(render_justification(just, args.depth))
    return 0


def cmd_eval(args) -> int:
    path = args.data or bundled_path(args.task)
    report = evaluate(path, tags_for_task(args.task), task=args.task, oracle_check=args.oracle_check,
                      parallel=args.parallel, limit=args.limit)
    print(report.table())
    print()
    print(report.machine_lines())
    if args.require is not None and report.accuracy < args.require:
        return 2
    return 0


def _tags(args):
    return tags_for_task(args.task) if getattr(args, "task", None) else ALL_TAGS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="square", description="Answer questions about short stories "
                                 "by frame matching and goal-directed logic.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="print the bracketed parse tree of a sentence")
    p.add_argument("sentence", nargs="+")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("translate", help="print the facts of a story")
    p.add_argument("story_file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--emit-facts", action="store_true", help="facts only (default)")
    g.add_argument("--emit-program", action="store_true", help="facts followed by the rules")
    p.add_argument("--story", type=int, default=0, help="story index in a bAbI file")
    p.add_argument("--task", choices=TASKS, help="include only this task's rule sets")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("ask", help="answer one question about a story")
    p.add_argument("story_file")
    p.add_argument("question")
    p.add_argument("--justify", action="store_true", help="print the proof tree")
    p.add_argument("--depth", type=int, default=None, help="truncate the proof tree below this depth")
    p.add_argument("--story", type=int, default=0, help="story index in a bAbI file")
    p.add_argument("--task", choices=TASKS, help="load only this task's rule sets")
    p.set_defaults(func=cmd_ask)

    p = sub.add_parser("eval", help="score a bAbI task file")
    p.add_argument("--task", required=True, choices=TASKS)
    p.add_argument("--data", type=Path, help="task file (default: bundled 50-story subset)")
    p.add_argument("--oracle-check", action="store_true", help="compare with the world-state oracle")
    p.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes")
    p.add_argument("--limit", type=int, default=None, metavar="K", help="first K stories only")
    p.add_argument("--require", type=float, default=None, metavar="PCT",
                   help="exit with status 2 when accuracy is below PCT")
    p.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SquareError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

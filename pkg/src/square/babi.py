"""bAbI task files: reading, answering, scoring and oracle cross-checks."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import FormatError, SquareError
from .knowledge import translate_passage
from .oracle import oracle_simulate
from .parsing import parse
from .questions import classify_question, extract_answer, generate_query
from .reasoner import JustificationNode, Limits, Solver
from .rules import tags_for_task

TASKS = ("qa1", "qa2", "qa3", "qa4", "qa17")
TASK_TITLES = {
    "qa1": "single supporting fact",
    "qa2": "two supporting facts",
    "qa3": "three supporting facts",
    "qa4": "two argument relations",
    "qa17": "positional reasoning",
}


@dataclass(frozen=True)
class QAItem:
    line_id: int
    question: str
    gold_answer: str
    supporting_ids: tuple = ()


@dataclass
class Story:
    declaratives: list = field(default_factory=list)   # (line_id, text)
    questions: list = field(default_factory=list)      # QAItem

    def prefix(self, item: QAItem) -> list[str]:
        """Declaratives that precede ``item`` in the file."""
        return [text for lid, text in self.declaratives if lid < item.line_id]

    def lines(self) -> list[tuple[int, str]]:
        rows = [(lid, text) for lid, text in self.declaratives]
        rows += [(q.line_id, f"{q.question}\t{q.gold_answer}\t{' '.join(map(str, q.supporting_ids))}")
                 for q in self.questions]
        return sorted(rows)


def parse_babi(lines, source="<input>") -> list[Story]:
    stories: list[Story] = []
    story = None
    last = 0
    for n, raw in enumerate(lines, 1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip():
            continue
        head, sep, rest = line.partition(" ")
        if not sep or not head.isdigit():
            raise FormatError(f"{source}: line must start with a numeric id", n)
        lid = int(head)
        if lid == 1:
            story = Story()
            stories.append(story)
        elif story is None:
            raise FormatError(f"{source}: first line id must be 1, got {lid}", n)
        elif lid <= last:
            raise FormatError(f"{source}: line id {lid} does not increase", n)
        last = lid
        if "\t" in rest:
            parts = rest.split("\t")
            if len(parts) != 3:
                raise FormatError(f"{source}: question line needs question, answer and supporting ids", n)
            q, ans, sup = (p.strip() for p in parts)
            try:
                ids = tuple(int(x) for x in sup.split())
            except ValueError:
                raise FormatError(f"{source}: bad supporting ids {sup!r}", n) from None
            if not q or not ans:
                raise FormatError(f"{source}: empty question or answer", n)
            story.questions.append(QAItem(lid, q, ans, ids))
        else:
            if not rest.strip():
                raise FormatError(f"{source}: empty sentence", n)
            story.declaratives.append((lid, rest.strip()))
    if not stories:
        raise FormatError(f"{source}: no stories", 1)
    return stories


def read_babi(path) -> list[Story]:
    path = Path(path)
    return parse_babi(path.read_text("utf-8").splitlines(), str(path))


def bundled_path(task: str) -> Path:
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}; choose from {', '.join(TASKS)}")
    return Path(str(resources.files("square").joinpath(f"data/babi/{task}.txt")))


def write_babi(stories, path=None) -> str:
    text = "\n".join(f"{lid} {body}" for s in stories for lid, body in s.lines()) + "\n"
    if path is not None:
        Path(path).write_text(text, "utf-8")
    return text


# ---------------------------------------------------------------------------
# Answering

@lru_cache(maxsize=4096)
def _parse_cached(sentence: str):
    return parse(sentence)


def answer_question(story_prefix, question: str, task_tags=(), limits: Limits | None = None,
                    lexicon=None) -> tuple[str, JustificationNode | None]:
    """Full pipeline for one question; returns the answer and its justification."""
    prefix = list(story_prefix)
    if not prefix:
        # nothing has happened yet: where-questions have no answer, yes/no is "no"
        return extract_answer(classify_question(_parse_cached(question)), []), None
    program = translate_passage(prefix, lexicon, trees=[_parse_cached(s) for s in prefix])
    q = classify_question(_parse_cached(question), program.entities)
    query = generate_query(q)
    answers = Solver(program.database(task_tags), limits).solve(query)
    text = extract_answer(q, answers)
    return text, (answers[0].justification if answers else None)


@dataclass
class QuestionResult:
    story_index: int
    question: str
    expected: str
    got: str
    seconds: float
    oracle: str | None = None


@dataclass
class EvalReport:
    task: str
    n_questions: int
    n_correct: int
    accuracy: float
    avg_time_per_question: float
    failures: list = field(default_factory=list)        # (story index, question, expected, got)
    oracle_disagreements: list = field(default_factory=list)
    oracle_checked: bool = False

    def table(self) -> str:
        rows = [("task", self.task),
                ("questions", str(self.n_questions)),
                ("correct", str(self.n_correct)),
                ("accuracy (%)", f"{self.accuracy:.1f}"),
                ("avg time per question (s)", f"{self.avg_time_per_question:.4f}")]
        if self.oracle_checked:
            rows.append(("oracle disagreements", str(len(self.oracle_disagreements))))
        width = max(len(k) for k, _ in rows)
        lines = [f"{k.ljust(width)}  {v}" for k, v in rows]
        for story, q, exp, got in self.failures:
            lines.append(f"FAIL story={story} question={q!r} expected={exp!r} got={got!r}")
        for story, q, main, orc in self.oracle_disagreements:
            lines.append(f"DISAGREE story={story} question={q!r} main={main!r} oracle={orc!r}")
        return "\n".join(lines)

    def machine_lines(self) -> str:
        out = [f"task={self.task}", f"n_questions={self.n_questions}", f"n_correct={self.n_correct}",
               f"accuracy={self.accuracy:.1f}", f"avg_time_per_question={self.avg_time_per_question:.6f}"]
        if self.oracle_checked:
            out.append(f"oracle_disagreements={len(self.oracle_disagreements)}")
        return "\n".join(out)


def _run_story(args) -> list[QuestionResult]:
    index, story, tags, oracle = args
    out = []
    for item in story.questions:
        prefix = story.prefix(item)
        start = time.perf_counter()
        try:
            got, _ = answer_question(prefix, item.question, tags)
        except SquareError as e:
            got = f"<{type(e).__name__}>"
        elapsed = time.perf_counter() - start
        orc = None
        if oracle:
            try:
                orc = oracle_simulate(prefix, item.question)
            except SquareError as e:
                orc = f"<{type(e).__name__}>"
        out.append(QuestionResult(index, item.question, item.gold_answer, got, elapsed, orc))
    return out


def _warm_up(tags):
    # load lexicon, frames and rules once so timing covers question answering only
    answer_question(["Mary moved to the bedroom."], "Where is Mary?", tags)


def evaluate_stories(stories, task="custom", task_tags=None, oracle_check=False,
                     parallel: int = 1) -> EvalReport:
    tags = tuple(task_tags) if task_tags is not None else tags_for_task(task)
    _warm_up(tags)
    jobs = [(i, s, tags, oracle_check) for i, s in enumerate(stories)]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel, initializer=_warm_up, initargs=(tags,)) as ex:
            results = [r for rs in ex.map(_run_story, jobs) for r in rs]
    else:
        results = [r for job in jobs for r in _run_story(job)]
    n = len(results)
    correct = sum(r.got.strip() == r.expected.strip() for r in results)
    report = EvalReport(
        task=task,
        n_questions=n,
        n_correct=correct,
        accuracy=100.0 * correct / n if n else 0.0,
        avg_time_per_question=sum(r.seconds for r in results) / n if n else 0.0,
        failures=[(r.story_index, r.question, r.expected, r.got)
                  for r in results if r.got.strip() != r.expected.strip()],
        oracle_checked=oracle_check,
    )
    if oracle_check:
        report.oracle_disagreements = [(r.story_index, r.question, r.got, r.oracle)
                                       for r in results if r.got != r.oracle]
    return report


def evaluate(task_file, task_tags=None, task: str | None = None, oracle_check=False,
             parallel: int = 1, limit: int | None = None) -> EvalReport:
    """Score every question of a bAbI file against its gold answer."""
    stories = read_babi(task_file)
    if limit is not None:
        stories = stories[:limit]
    name = task or Path(task_file).stem
    return evaluate_stories(stories, name, task_tags, oracle_check, parallel)

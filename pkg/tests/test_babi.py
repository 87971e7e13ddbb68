import pytest

from square.babi import (
    TASKS, answer_question, bundled_path, evaluate, evaluate_stories, parse_babi, read_babi, write_babi,
)
from square.errors import FormatError, NoAnswer, UnsupportedQuestion
from square.oracle import oracle_simulate
from square.rules import tags_for_task

SAMPLE = """1 Mary moved to the bathroom.
2 John went to the hallway.
3 Where is Mary?\tbathroom\t1
4 Daniel went back to the hallway.
5 Where is Daniel?\thallway\t4
1 Sandra got the milk.
2 Where is Sandra?\tkitchen\t
"""


def test_parse_two_stories():
    stories = parse_babi(SAMPLE.splitlines())
    assert len(stories) == 2
    first = stories[0]
    assert [q.gold_answer for q in first.questions] == ["bathroom", "hallway"]
    assert first.questions[0].supporting_ids == (1,)
    assert first.prefix(first.questions[0]) == ["Mary moved to the bathroom.", "John went to the hallway."]
    assert len(first.prefix(first.questions[1])) == 3
    assert stories[1].questions[0].supporting_ids == ()


def test_round_trip(tmp_path):
    stories = parse_babi(SAMPLE.splitlines())
    path = tmp_path / "t.txt"
    write_babi(stories, path)
    again = read_babi(path)
    assert [s.lines() for s in again] == [s.lines() for s in stories]


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("2 Mary went home.\n", 1),
    ("1 Mary moved to the bathroom.\nx Where is Mary?\tbathroom\t1\n", 2),
    ("1 Mary moved to the bathroom.\n1x bad\n", 2),
    ("1 Mary moved to the bathroom.\n3 John left.\n2 Where is Mary?\tbathroom\t1\n", 3),
    ("1 Mary moved to the bathroom.\n2 Where is Mary?\tbathroom\n", 2),
    ("1 Mary moved to the bathroom.\n2 Where is Mary?\tbathroom\tone\n", 2),
])
def test_format_errors(text, line):
    with pytest.raises(FormatError) as info:
        parse_babi(text.splitlines())
    assert info.value.line == line


@pytest.mark.parametrize("story,question,answer,tags", [
    (["Mary moved to the bathroom.", "John went to the hallway."], "Where is Mary?", "bathroom", ()),
    (["Mary got the milk there.", "John moved to the bedroom.", "Sandra went back to the kitchen.",
      "Mary travelled to the hallway."], "Where is the milk?", "hallway", ()),
    (["The office is north of the bedroom.", "The bedroom is north of the bathroom."],
     "What is north of the bedroom?", "office", ("directions",)),
    (["The office is north of the bedroom.", "The bedroom is north of the bathroom."],
     "What is the bedroom north of?", "bathroom", ("directions",)),
    (["The triangle is above the pink rectangle.", "The blue square is to the left of the triangle."],
     "Is the pink rectangle to the right of the blue square?", "yes", ("positional",)),
    (["The triangle is above the pink rectangle.", "The blue square is to the left of the triangle."],
     "Is the pink rectangle above the triangle?", "no", ("positional",)),
])
def test_answer_question(story, question, answer, tags):
    got, just = answer_question(story, question, tags)
    assert got == answer
    assert got == oracle_simulate(story, question)
    if answer != "no":
        assert just is not None


def test_before_question():
    story = ["Mary got the football.", "Mary went to the bedroom.", "Mary went to the garden."]
    q = "Where was the football before the garden?"
    assert answer_question(story, q)[0] == "bedroom"
    assert oracle_simulate(story, q) == "bedroom"


def test_empty_prefix():
    with pytest.raises(NoAnswer):
        answer_question([], "Where is Mary?")
    assert answer_question([], "Is the square above the triangle?")[0] == "no"


def test_unknown_location_has_no_answer():
    with pytest.raises(NoAnswer):
        answer_question(["John went to the hallway."], "Where is Mary?")


def test_unsupported_question_raises():
    with pytest.raises(UnsupportedQuestion):
        answer_question(["John went to the hallway."], "Who is in the hallway?")


def test_prefix_isolation():
    # a later sentence must not leak into an earlier question
    stories = parse_babi(["1 Mary moved to the bathroom.", "2 Where is Mary?\tbathroom\t1",
                          "3 Mary moved to the garden.", "4 Where is Mary?\tgarden\t3"])
    report = evaluate_stories(stories, "custom", ())
    assert report.accuracy == 100.0


def test_failures_are_reported():
    stories = parse_babi(["1 Mary moved to the bathroom.", "2 Where is Mary?\tkitchen\t1",
                          "3 Where is John?\tkitchen\t1"])
    report = evaluate_stories(stories, "custom", ())
    assert report.n_correct == 0
    assert [f[3] for f in report.failures] == ["bathroom", "<NoAnswer>"]
    assert "FAIL story=0" in report.table()
    assert "accuracy=0.0" in report.machine_lines()


@pytest.mark.parametrize("task", TASKS)
def test_bundled_subset(task):
    report = evaluate(bundled_path(task), tags_for_task(task), task=task, oracle_check=True, limit=10)
    assert report.accuracy == 100.0
    assert not report.oracle_disagreements


def test_parallel_matches_serial():
    stories = read_babi(bundled_path("qa2"))[:6]
    serial = evaluate_stories(stories, "qa2")
    par = evaluate_stories(stories, "qa2", parallel=2)
    assert (serial.n_questions, serial.n_correct) == (par.n_questions, par.n_correct)


def test_unknown_bundled_task():
    with pytest.raises(ValueError):
        bundled_path("qa99")

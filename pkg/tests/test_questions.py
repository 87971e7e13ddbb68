import pytest

from square.babi import TASKS, bundled_path, read_babi
from square.errors import NoAnswer, UnsupportedQuestion
from square.questions import (
    KINDS, Question, classify_text, extract_answer, generate_query,
)
from square.reasoner import Answer, JustificationNode
from square.terms import Atom, parse_term


@pytest.mark.parametrize("text,kind,query", [
    ("Where is Mary?", "where_person", "get_location(mary, Location)"),
    ("Where is the milk?", "where_object", "get_object_location(the_milk, Location)"),
    ("Where was the football before the garden?", "where_object_before",
     "get_object_location_before(the_football, the_garden, Location)"),
    ("What is north of the bedroom?", "what_direction", "entailed(north_of, What, the_bedroom)"),
    ("What is the bedroom south of?", "what_direction", "entailed(south_of, the_bedroom, What)"),
    ("Is the triangle above the pink rectangle?", "yesno_positional",
     "entailed(above, the_triangle, the_pink_rectangle)"),
    ("Is the red square to the left of the blue square?", "yesno_positional",
     "entailed(left_of, the_red_square, the_blue_square)"),
])
def test_classify_and_generate(text, kind, query):
    q = classify_text(text)
    assert q.kind == kind
    assert generate_query(q).goal == parse_term(query)


def test_entities_decide_person_questions():
    assert classify_text("Where is the milk?", {Atom("the_milk"): "object"}).kind == "where_object"
    assert classify_text("Where is Bill?", {Atom("bill"): "person"}).kind == "where_person"


@pytest.mark.parametrize("text", ["Who is in the kitchen?", "Where did Mary go?", "Mary went home.",
                                  "What is the milk?"])
def test_unsupported_questions(text):
    with pytest.raises(UnsupportedQuestion):
        classify_text(text)


def test_free_variable_counts():
    for text in ("Where is Mary?", "Where is the milk?", "What is north of the office?",
                 "Where was the milk before the office?"):
        assert len(generate_query(classify_text(text)).variables()) == 1
    assert generate_query(classify_text("Is the square above the triangle?")).variables() == []


def test_every_bundled_question_is_classified():
    seen = set()
    for task in TASKS:
        for story in read_babi(bundled_path(task)):
            for item in story.questions:
                q = classify_text(item.question)
                assert q.kind in KINDS
                seen.add(q.kind)
    assert seen == set(KINDS)


def _answer(**bindings):
    return Answer({k: Atom(v) for k, v in bindings.items()}, JustificationNode(Atom("x"), "fact"))


def test_extract_answer():
    where = Question("where_person", (Atom("mary"),))
    assert extract_answer(where, [_answer(Location="the_hallway")]) == "hallway"
    what = Question("what_direction", (Atom("north_of"), None, Atom("the_bedroom")))
    assert extract_answer(what, [_answer(What="the_office")]) == "office"
    with pytest.raises(NoAnswer):
        extract_answer(where, [])


def test_yes_no_answers():
    yn = Question("yesno_positional", (Atom("above"), Atom("the_a"), Atom("the_b")))
    assert extract_answer(yn, []) == "no"
    assert extract_answer(yn, [_answer()]) == "yes"

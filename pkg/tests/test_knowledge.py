import pytest

from square.errors import EmptyPhrase, EmptyStory, UnsupportedSyntax
from square.knowledge import (
    LOCATION, OBJECT, PERSON, StoryProgram, normalize_np, resolve_anaphora, translate_passage,
)
from square.normalize import THERE
from square.oracle import simulate
from square.reasoner import Solver
from square.terms import Atom, Compound, Time, parse_term


def test_milk_story_program(milk_story):
    program = translate_passage(milk_story)
    assert program.timeline == tuple(Time(i) for i in range(1, 6))
    assert parse_term("exert_force(t4, agent(mary), theme(the_milk))") in program.facts


def test_empty_story():
    with pytest.raises(EmptyStory):
        translate_passage([])


def test_unsupported_sentence_reports_index():
    with pytest.raises(UnsupportedSyntax) as err:
        translate_passage(["Mary moved to the bedroom.", "Mary."])
    assert str(err.value).startswith("sentence 2")


def test_one_move_establishes_location():
    program = translate_passage(["Mary moved to the bedroom."])
    goal = parse_term("property(location, t1, mary, the_bedroom)")
    assert Solver(program.database()).solve(goal)
    # the same fact from direct state simulation
    assert simulate(["Mary moved to the bedroom."]).person_at["mary"] == "bedroom"


def test_there_resolves_to_latest_destination(milk_story):
    program = translate_passage(milk_story)
    assert parse_term("path_rel(t2, start(e0), source(the_bedroom), theme(the_milk))") in program.facts
    assert parse_term("path_rel(t4, end(e1), destination(the_hallway), theme(the_milk))") in program.facts


def test_there_without_prior_motion_is_unknown():
    program = translate_passage(["Mary got the milk there."])
    assert parse_term("path_rel(t1, start(e0), source(unknown), theme(the_milk))") in program.facts


def test_latest_of_two_moves_wins():
    program = translate_passage(["Mary went to the kitchen.", "Mary went to the office.",
                                 "Mary took the apple there."])
    assert parse_term("path_rel(t3, start(e0), source(the_office), theme(the_apple))") in program.facts


def test_resolve_anaphora_directly():
    facts = (parse_term("motion(t1, theme(mary))"),
             parse_term("path_rel(t1, end(e0), destination(the_garden), theme(mary))"),
             Compound("cause", (Time(2), parse_term("agent(mary)"), parse_term("event(e0)"))),
             Compound("path_rel", (Time(2), parse_term("start(e0)"), Compound("source", (THERE,)),
                                   parse_term("theme(the_box)"))))
    out = resolve_anaphora(StoryProgram(facts, (Time(1), Time(2))))
    assert parse_term("path_rel(t2, start(e0), source(the_garden), theme(the_box))") in out.facts
    assert "there_ref" not in " ".join(map(str, out.facts))


def test_normalize_np():
    assert normalize_np(["the", "milk"]) == Atom("the_milk")
    assert normalize_np(["Sandra"]) == Atom("sandra")
    assert normalize_np(["The", "red", "square,"]) == Atom("the_red_square")
    with pytest.raises(EmptyPhrase):
        normalize_np([])


def test_entities(milk_story):
    program = translate_passage(milk_story + ["The office is north of the bedroom."])
    ents = program.entities
    assert ents[Atom("mary")] == PERSON
    assert ents[Atom("the_milk")] == OBJECT
    assert ents[Atom("the_hallway")] == LOCATION
    assert ents[Atom("the_office")] == LOCATION


def test_index_lookup(milk_story):
    program = translate_passage(milk_story)
    assert len(program.lookup("motion", Atom("mary"))) == 3
    assert program.lookup("cause", Atom("mary"))[0].args[0] == Time(2)


def test_copular_sentences_become_relations():
    program = translate_passage(["The office is north of the bedroom.", "The box is blue."])
    assert parse_term("rel(north_of, t1, the_office, the_bedroom)") in program.facts
    assert parse_term("attr(color, t2, the_box, blue)") in program.facts
    assert program.facts_at(Time(2)) == [parse_term("attr(color, t2, the_box, blue)")]


def test_emit_program_lists_facts_then_rules(milk_story):
    text = translate_passage(milk_story).emit_program()
    lines = text.splitlines()
    assert lines[0] == "motion(t1, theme(mary))."
    assert all(l.endswith(".") for l in lines)
    assert any(l.startswith("property(possession, T, Per, Obj) :-") for l in lines)

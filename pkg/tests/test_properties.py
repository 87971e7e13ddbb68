"""Randomized invariants across the whole pipeline."""
from hypothesis import given, settings

from bottom_up import inertia_rules, well_founded
from stories import property_instances, questions, stories
from square.babi import answer_question
from square.errors import SquareError
from square.knowledge import THERE, translate_passage
from square.oracle import oracle_simulate
from square.reasoner import Solver, check_justification
from square.rules import assemble_rulebase


def _answer(fn, *args):
    try:
        out = fn(*args)
    except SquareError as e:
        return f"<{type(e).__name__}>"
    return out[0] if isinstance(out, tuple) else out


@given(stories())
def test_solve_matches_well_founded_model(data):
    sentences, people, objects, rooms = data
    program = translate_passage(sentences)
    rules = assemble_rulebase()
    true, undefined = well_founded(inertia_rules(rules), program.facts, program.timeline)
    assert not {a for a in undefined if a.functor == "property"}
    db = program.database()
    for goal in property_instances(program, people, objects, rooms):
        assert bool(Solver(db).solve(goal)) == (goal in true), goal


@given(stories())
@settings(max_examples=40)
def test_reasoning_path_agrees_with_oracle(data):
    sentences, people, objects, rooms = data
    for q in questions(people, objects, rooms):
        assert _answer(answer_question, sentences, q) == _answer(oracle_simulate, sentences, q), q


@given(stories())
@settings(max_examples=30)
def test_justifications_replay(data):
    sentences, people, objects, rooms = data
    program = translate_passage(sentences)
    db = program.database()
    for q in questions(people, objects, rooms):
        try:
            _, just = answer_question(sentences, q)
        except SquareError:
            continue
        assert check_justification(just, db)


@given(stories())
@settings(max_examples=30)
def test_prefix_stability_and_no_dangling_there(data):
    sentences = data[0]
    full = translate_passage(sentences)
    assert all(THERE not in f.args and str(THERE) not in str(f) for f in full.facts)
    for k in range(1, len(sentences)):
        part = translate_passage(sentences[:k])
        keep = {t for t in part.timeline}
        assert [f for f in full.facts if f.args[0] in keep] == list(part.facts)


@given(stories())
@settings(max_examples=30)
def test_timeline_is_gap_free(data):
    program = translate_passage(data[0])
    assert [t.index for t in program.timeline] == list(range(1, len(data[0]) + 1))
    assert {f.args[0] for f in program.facts} <= set(program.timeline)

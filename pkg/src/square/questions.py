"""Question classification, query generation and answer extraction."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NoAnswer, UnsupportedQuestion, UnsupportedSyntax
from .normalize import bare, normalize_np
from .parsing import gazetteer, lemma_of, parse
from .reasoner import Query
from .rules import copular_relation
from .terms import Atom, Compound, Var
from .trees import ParseTree

KINDS = ("where_person", "where_object", "where_object_before", "what_direction",
         "yesno_positional")
WHERE_KINDS = frozenset({"where_person", "where_object", "where_object_before"})
ANSWER_VAR = "Location"


@dataclass(frozen=True)
class Question:
    kind: str
    slots: tuple            # atoms; None marks the asked-for position

    def __str__(self):
        args = ", ".join("?" if s is None else str(s) for s in self.slots)
        return f"{self.kind}({args})"


def _is_person(np: ParseTree, entities) -> bool:
    atom = normalize_np(np.leaves())
    if entities and entities.get(atom) == "person":
        return True
    if atom.name in gazetteer():
        return True
    return all(p.label == "NNP" for p in np.preterminals())


def classify_question(tree: ParseTree, entities=None) -> Question:
    """Map a question tree to its kind and entity slots."""
    node = tree.children[0] if tree.label == "ROOT" and tree.children else tree
    if node.label == "SBARQ":
        wh, sq = node.children[0], node.children[1]
        wh_word = wh.leaves()[0].lower()
        if sq.label != "SQ" or not sq.children:
            raise UnsupportedQuestion("question lacks a clause")
        verb = lemma_of(sq.children[0].leaves()[0])
        rest = list(sq.children[1:])
        if verb != "be":
            raise UnsupportedQuestion(f"unsupported question verb {verb!r}")
        if wh_word == "where":
            return _where(rest, entities)
        if wh_word == "what":
            return _what(rest)
        raise UnsupportedQuestion(f"unsupported wh-word {wh_word!r}")
    if node.label == "SQ":
        verb = lemma_of(node.children[0].leaves()[0])
        kids = [c for c in node.children[1:] if c.label != "."]
        if verb != "be" or not kids or kids[0].label != "NP":
            raise UnsupportedQuestion("unsupported yes/no question")
        kind = _relation(kids[1:])
        if kind[0] != "rel" or kind[2] is None:
            raise UnsupportedQuestion("yes/no question needs a relation and two entities")
        return Question("yesno_positional",
                        (Atom(kind[1]), normalize_np(kids[0].leaves()), normalize_np(kind[2].leaves())))
    raise UnsupportedQuestion(f"not a question: {node.label}")


def _relation(comps):
    try:
        return copular_relation(comps)
    except UnsupportedSyntax as e:
        raise UnsupportedQuestion(str(e)) from None


def _where(rest, entities) -> Question:
    rest = [c for c in rest if c.label != "."]
    if not rest or rest[0].label != "NP":
        raise UnsupportedQuestion("where-question needs a subject")
    subj = rest[0]
    atom = normalize_np(subj.leaves())
    if len(rest) == 1:
        kind = "where_person" if _is_person(subj, entities) else "where_object"
        return Question(kind, (atom,))
    pp = rest[1]
    if (len(rest) == 2 and pp.label == "PP" and lemma_of(pp.children[0].leaves()[0]) == "before"
            and len(pp.children) > 1):
        return Question("where_object_before", (atom, normalize_np(pp.children[1].leaves())))
    raise UnsupportedQuestion("unsupported where-question")


def _what(rest) -> Question:
    rest = [c for c in rest if c.label != "."]
    if rest and rest[0].label == "NP":
        # What is the bedroom north of?
        kind = _relation(rest[1:])
        if kind[0] == "rel" and kind[2] is None:
            return Question("what_direction", (Atom(kind[1]), normalize_np(rest[0].leaves()), None))
    else:
        # What is north of the bedroom?
        kind = _relation(rest)
        if kind[0] == "rel" and kind[2] is not None:
            return Question("what_direction", (Atom(kind[1]), None, normalize_np(kind[2].leaves())))
    raise UnsupportedQuestion("unsupported what-question")


def classify_text(question: str, entities=None) -> Question:
    try:
        tree = parse(question)
    except UnsupportedSyntax as e:
        raise UnsupportedQuestion(str(e)) from None
    return classify_question(tree, entities)


def generate_query(question: Question) -> Query:
    loc = Var(ANSWER_VAR)
    s = question.slots
    if question.kind == "where_person":
        return Query(Compound("get_location", (s[0], loc)))
    if question.kind == "where_object":
        return Query(Compound("get_object_location", (s[0], loc)))
    if question.kind == "where_object_before":
        return Query(Compound("get_object_location_before", (s[0], s[1], loc)))
    if question.kind == "what_direction":
        args = tuple(Var("What") if a is None else a for a in s)
        return Query(Compound("entailed", args))
    if question.kind == "yesno_positional":
        return Query(Compound("entailed", tuple(s)))
    raise UnsupportedQuestion(f"unknown question kind {question.kind!r}")


def extract_answer(question: Question, answers) -> str:
    """Render the first answer as a bAbI gold string."""
    if question.kind == "yesno_positional":
        return "yes" if answers else "no"
    if not answers:
        raise NoAnswer(f"no derivation for {question}")
    bindings = answers[0].bindings
    value = bindings.get(ANSWER_VAR, bindings.get("What"))
    if value is None:
        raise NoAnswer(f"answer for {question} binds no variable")
    return bare(value)

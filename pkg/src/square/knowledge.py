"""Story programs: timestamped facts for a passage of declarative sentences."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import EmptyStory, NoFrameMatch, UnsupportedSyntax
from .matcher import get_sentence_semantics
from .normalize import THERE, normalize_np  # noqa: F401  (re-exported)
from .parsing import gazetteer, parse
from .reasoner import Database
from .rules import assemble_rulebase, is_copular, translate_copular
from .terms import UNKNOWN, Atom, Compound, PList, Time
from .trees import ParseTree
from .verbnet import FrameLexicon, default_frames

PERSON, OBJECT, LOCATION = "person", "object", "location"
_KIND_RANK = {PERSON: 0, LOCATION: 1, OBJECT: 2}
_LOCATION_ROLES = {"destination", "source", "initial_location", "location"}


@dataclass(frozen=True)
class StoryProgram:
    facts: tuple                    # ground Compound facts in timestamp order
    timeline: tuple                 # Time terms t1..tn
    entities: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))
    sentences: tuple = ()
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        idx: dict = {}
        for f in self.facts:
            idx.setdefault((f.functor, first_role_atom(f)), []).append(f)
        object.__setattr__(self, "_index", idx)

    def lookup(self, predicate: str, atom=None) -> list:
        """Facts of ``predicate`` whose first non-time argument mentions ``atom``."""
        if atom is None:
            return [f for f in self.facts if f.functor == predicate]
        return list(self._index.get((predicate, atom), ()))

    def facts_at(self, t: Time) -> list:
        return [f for f in self.facts if fact_time(f) == t]

    def database(self, task_tags=()) -> Database:
        return Database(self.facts, assemble_rulebase(task_tags), self.timeline)

    def emit_facts(self) -> str:
        return "\n".join(f"{f}." for f in self.facts)

    def emit_program(self, task_tags=()) -> str:
        lines = [f"{f}." for f in self.facts]
        lines.extend(str(r) for r in assemble_rulebase(task_tags))
        return "\n".join(lines)


def fact_time(fact: Compound) -> Time | None:
    """Timestamp of a fact: its first time argument (``rel``/``attr`` carry it second)."""
    for a in fact.args:
        if isinstance(a, Time):
            return a
    return None


def first_role_atom(fact: Compound):
    for a in fact.args:
        if isinstance(a, Time):
            continue
        while isinstance(a, Compound) and len(a.args) == 1:
            a = a.args[0]
        return a
    return None


def _sentence_facts(tree: ParseTree, t: Time, lexicon: FrameLexicon) -> list[Compound]:
    if is_copular(tree):
        return sorted(translate_copular(tree, t), key=str)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NoFrameMatch)
        return get_sentence_semantics(tree, lexicon, t)


def translate_passage(sentences, lexicon: FrameLexicon | None = None,
                      trees=None) -> StoryProgram:
    """Translate declaratives into one program; sentence i is stamped t_i.

    ``trees`` optionally supplies pre-built parse trees, one per sentence.
    """
    lex = lexicon or default_frames()
    sentences = list(sentences)
    facts: list[Compound] = []
    timeline: list[Time] = []
    translated = 0
    for i, text in enumerate(sentences, 1):
        t = Time(i)
        timeline.append(t)
        try:
            tree = trees[i - 1] if trees is not None else parse(text)
        except UnsupportedSyntax as e:
            raise UnsupportedSyntax(f"sentence {i}: {e}", e.token) from e
        new = _sentence_facts(tree, t, lex)
        if new:
            translated += 1
        for f in new:
            if f not in facts:
                facts.append(f)
    if not translated:
        raise EmptyStory("story has no translatable sentences")
    program = StoryProgram(tuple(facts), tuple(timeline), sentences=tuple(sentences))
    program = resolve_anaphora(program)
    return StoryProgram(program.facts, program.timeline,
                        MappingProxyType(classify_entities(program.facts)), program.sentences)


# ---------------------------------------------------------------------------
# Anaphora

def _agent_at(facts) -> Atom | None:
    for f in facts:
        for a in f.args:
            if isinstance(a, Compound) and a.functor == "agent" and a.args[0] != UNKNOWN:
                return a.args[0]
    return None


def _destination(facts, who) -> Atom | None:
    moved = any(f.functor == "motion" and Compound("theme", (who,)) in f.args for f in facts)
    if not moved:
        return None
    for f in facts:
        if (f.functor == "path_rel" and f.args[-1] == Compound("theme", (who,))
                and isinstance(f.args[2], Compound) and f.args[2].functor == "destination"):
            dest = f.args[2].args[0]
            if dest not in (UNKNOWN, THERE):
                return dest
    return None


def _replace(term, old, new):
    if term == old:
        return new
    if isinstance(term, Compound):
        return Compound(term.functor, tuple(_replace(a, old, new) for a in term.args))
    if isinstance(term, PList):
        return PList(tuple(_replace(a, old, new) for a in term.items))
    return term


def resolve_anaphora(program: StoryProgram) -> StoryProgram:
    """Replace ``there_ref`` with the agent's latest motion destination, else ``unknown``."""
    by_time: dict = {}
    for f in program.facts:
        by_time.setdefault(fact_time(f), []).append(f)
    where: dict = {}                # person -> latest destination
    out: list[Compound] = []
    for t in program.timeline:
        now = by_time.get(t, [])
        # motion in this very sentence counts (t_j <= t_i)
        for who in {a.args[0] for f in now for a in f.args
                    if isinstance(a, Compound) and a.functor == "theme"}:
            dest = _destination(now, who)
            if dest is not None:
                where[who] = dest
        agent = _agent_at(now)
        target = where.get(agent, UNKNOWN) if agent is not None else UNKNOWN
        for f in now:
            g = _replace(f, THERE, target)
            if g not in out:
                out.append(g)
    return StoryProgram(tuple(out), program.timeline, program.entities, program.sentences)


# ---------------------------------------------------------------------------
# Entities

def classify_entities(facts) -> dict:
    """Map atoms to person/object/location; persons win over other kinds."""
    names = gazetteer()
    kinds: dict = {}

    def note(atom, kind):
        if not isinstance(atom, Atom) or atom == UNKNOWN:
            return
        if atom.name in names:
            kind = PERSON
        old = kinds.get(atom)
        if old is None or _KIND_RANK[kind] < _KIND_RANK[old]:
            kinds[atom] = kind

    for f in facts:
        if f.functor == "rel":
            direction = f.args[0].name
            kind = LOCATION if direction.split("_")[0] in ("north", "south", "east", "west") else OBJECT
            note(f.args[2], kind)
            note(f.args[3], kind)
            continue
        if f.functor == "attr":
            note(f.args[2], OBJECT)
            continue
        for a in f.args:
            if not isinstance(a, Compound) or len(a.args) != 1:
                continue
            role, val = a.functor, a.args[0]
            if role in _LOCATION_ROLES:
                note(val, LOCATION)
            elif role in ("agent", "recipient"):
                note(val, PERSON)
            elif role == "theme":
                note(val, OBJECT)
    # motion themes that also act as agents are people, not objects
    agents = {a.args[0] for f in facts for a in f.args
              if isinstance(a, Compound) and a.functor == "agent"}
    for atom in list(kinds):
        if atom in agents:
            kinds[atom] = PERSON
    return kinds


"""Brute-force world-state simulation used to cross-check the reasoning path.

Sentences are matched with regular expressions and applied to explicit state
(who is where, who holds what, where each object is).  Spatial questions are
answered from a constraint graph.  Nothing here touches the parser, the frame
lexicon, or the reasoner.
"""
from __future__ import annotations

import re
from collections import defaultdict

from .errors import NoAnswer, UnsupportedQuestion, UnsupportedSyntax

_MOVE = re.compile(r"^(\w+) (?:moved|went|journeyed|travelled|traveled|ran|walked)(?: back)? to the (\w+)$")
_GET = re.compile(r"^(\w+) (?:got|grabbed|took|picked up) the (\w+)(?: there)?$")
_DROP = re.compile(r"^(\w+) (?:dropped|discarded|put down|left|tossed|threw) the (\w+)(?: there)?$")
_GIVE = re.compile(r"^(\w+) (?:gave|handed|passed) the (\w+) to (\w+)$")
_COMPASS = re.compile(r"^the (\w+) is (north|south|east|west) of the (\w+)$")
_PLACE = re.compile(r"^the ([\w ]+?) is (above|below|to the left of|to the right of) the ([\w ]+)$")
_COLOR = re.compile(r"^the ([\w ]+?) is (\w+)$")

_Q_WHERE = re.compile(r"^where (?:is|was) (?:the )?(\w+)$")
_Q_BEFORE = re.compile(r"^where was the (\w+) before the (\w+)$")
_Q_WHAT_OF = re.compile(r"^what is (north|south|east|west) of the (\w+)$")
_Q_WHAT_IS = re.compile(r"^what is the (\w+) (north|south|east|west) of$")
_Q_IS = re.compile(r"^is the ([\w ]+?) (above|below|to the left of|to the right of) the ([\w ]+)$")

_OPPOSITE = {"north": "south", "south": "north", "east": "west", "west": "east"}
_PLACE_NAMES = {"above": "above", "below": "below", "to the left of": "left", "to the right of": "right"}


def _clean(text: str) -> str:
    return re.sub(r"\s+", " ", text.strip().rstrip(".?!").strip()).lower()


class World:
    """World state after a sequence of declaratives, with per-step history."""

    def __init__(self):
        self.person_at: dict = {}
        self.holder: dict = {}
        self.object_at: dict = {}
        self.object_history: list[dict] = []     # object_at snapshot after each step
        self.compass: set = set()                # (a, dir, b): a is dir of b
        self.placed: list = []                   # (a, rel, b)

    def step(self, sentence: str):
        s = _clean(sentence)
        if m := _MOVE.match(s):
            person, room = m.groups()
            self.person_at[person] = room
            for obj, who in self.holder.items():
                if who == person:
                    self.object_at[obj] = room
        elif m := _GET.match(s):
            person, obj = m.groups()
            self.holder[obj] = person
            if person in self.person_at:
                self.object_at[obj] = self.person_at[person]
        elif m := _DROP.match(s):
            person, obj = m.groups()
            if self.holder.get(obj) == person:
                del self.holder[obj]
        elif m := _GIVE.match(s):
            giver, obj, taker = m.groups()
            self.holder[obj] = taker
            if taker in self.person_at:
                self.object_at[obj] = self.person_at[taker]
        elif m := _COMPASS.match(s):
            a, d, b = m.groups()
            self.compass.add((a, d, b))
        elif m := _PLACE.match(s):
            a, rel, b = m.groups()
            self.placed.append((a, _PLACE_NAMES[rel], b))
        elif _COLOR.match(s):
            pass
        else:
            raise UnsupportedSyntax(f"oracle cannot read sentence {sentence!r}")
        self.object_history.append(dict(self.object_at))


def simulate(sentences) -> World:
    w = World()
    for s in sentences:
        w.step(s)
    return w


def oracle_simulate(story_prefix, question: str) -> str:
    """Answer ``question`` from direct simulation of ``story_prefix``."""
    world = simulate(story_prefix)
    q = _clean(question)
    if m := _Q_BEFORE.match(q):
        obj, ref = m.groups()
        hist = world.object_history
        for i in range(1, len(hist)):
            prev, now = hist[i - 1].get(obj), hist[i].get(obj)
            if now == ref and prev is not None and prev != ref:
                return prev
        raise NoAnswer(f"{obj} never arrived at {ref} from elsewhere")
    if m := _Q_WHERE.match(q):
        name = m.group(1)
        loc = world.person_at.get(name) if name in world.person_at else world.object_at.get(name)
        if loc is None:
            raise NoAnswer(f"location of {name} unknown")
        return loc
    if m := _Q_WHAT_OF.match(q):
        d, b = m.groups()
        found = _compass_partners(world, d, b)
        if not found:
            raise NoAnswer(f"nothing is {d} of {b}")
        return found[0]
    if m := _Q_WHAT_IS.match(q):
        a, d = m.groups()
        found = _compass_partners(world, _OPPOSITE[d], a)
        if not found:
            raise NoAnswer(f"{a} is {d} of nothing known")
        return found[0]
    if m := _Q_IS.match(q):
        a, rel, b = m.groups()
        return "yes" if _placed_holds(world.placed, a, _PLACE_NAMES[rel], b) else "no"
    raise UnsupportedQuestion(f"oracle cannot read question {question!r}")


def _compass_partners(world: World, d: str, b: str) -> list[str]:
    """Every x with x `d` of b, from stated facts and their inverses."""
    out = []
    for x, dd, y in sorted(world.compass):
        if dd == d and y == b and x not in out:
            out.append(x)
        if dd == _OPPOSITE[d] and x == b and y not in out:
            out.append(y)
    return out


# Positional questions: shapes sit on a grid.  "a above b" puts a strictly
# higher in the same column; "a left b" strictly further left in the same row.

def _placed_holds(facts, a, rel, b) -> bool:
    axis = "y" if rel in ("above", "below") else "x"
    same = {"x": _classes(facts, ("above", "below")), "y": _classes(facts, ("left", "right"))}[axis]
    less = defaultdict(set)             # class of p -> classes strictly greater on axis
    for p, r, q in facts:
        if axis == "y" and r in ("above", "below"):
            hi, lo = (p, q) if r == "above" else (q, p)
            less[same(lo)].add(same(hi))
        if axis == "x" and r in ("left", "right"):
            lo, hi = (p, q) if r == "left" else (q, p)
            less[same(lo)].add(same(hi))
    if rel in ("above", "right"):
        lo, hi = same(b), same(a)
    else:
        lo, hi = same(a), same(b)
    seen, todo = set(), [lo]
    while todo:
        n = todo.pop()
        for nxt in less[n]:
            if nxt == hi:
                return True
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return False


def _classes(facts, cross):
    """Union-find over shapes that share a coordinate (related along the other axis)."""
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, r, q in facts:
        find(p), find(q)
        if r in cross:
            parent[find(p)] = find(q)
    return find

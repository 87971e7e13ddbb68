"""Hypothesis strategies for small, well-formed move/get/drop stories."""
from __future__ import annotations

from hypothesis import strategies as st

from square.terms import Atom, Compound

PEOPLE = ("Mary", "John", "Sandra")
OBJECTS = ("milk", "football", "apple")
ROOMS = ("bathroom", "bedroom", "hallway", "garden")
MOVES = ("moved", "went", "journeyed", "travelled", "went back")
GETS = ("got", "grabbed", "picked up", "took")
DROPS = ("dropped", "discarded", "put down", "left")


def render(actions, people, objects, rooms) -> list[str]:
    """Turn raw action tuples into sentences, skipping actions that make no sense."""
    at, holder, obj_at = {}, {}, {}
    out = []
    for kind, i, j, k, there, v in actions:
        person = people[i % len(people)]
        obj = objects[j % len(objects)]
        tail = " there." if there else "."
        if kind == 1 and obj not in holder and obj_at.get(obj) in (None, at.get(person)):
            holder[obj] = person
            obj_at[obj] = at.get(person)
            out.append(f"{person} {GETS[v % len(GETS)]} the {obj}{tail}")
            continue
        mine = [o for o in objects if holder.get(o) == person]
        if kind == 2 and mine:
            obj = mine[j % len(mine)]
            del holder[obj]
            out.append(f"{person} {DROPS[v % len(DROPS)]} the {obj}{tail}")
            continue
        room = rooms[k % len(rooms)]
        at[person] = room
        for o, who in holder.items():
            if who == person:
                obj_at[o] = room
        out.append(f"{person} {MOVES[v % len(MOVES)]} to the {room}.")
    return out


@st.composite
def stories(draw, max_sentences=8):
    people = draw(st.lists(st.sampled_from(PEOPLE), min_size=1, max_size=3, unique=True))
    objects = draw(st.lists(st.sampled_from(OBJECTS), min_size=1, max_size=3, unique=True))
    rooms = draw(st.lists(st.sampled_from(ROOMS), min_size=2, max_size=4, unique=True))
    actions = draw(st.lists(
        st.tuples(st.integers(0, 2), st.integers(0, 9), st.integers(0, 9), st.integers(0, 9),
                  st.booleans(), st.integers(0, 9)),
        min_size=1, max_size=max_sentences))
    return render(actions, people, objects, rooms), people, objects, rooms


def questions(people, objects, rooms) -> list[str]:
    qs = [f"Where is {p}?" for p in people]
    qs += [f"Where is the {o}?" for o in objects]
    qs += [f"Where was the {o} before the {r}?" for o in objects for r in rooms]
    return qs


def property_instances(program, people, objects, rooms):
    persons = [Atom(p.lower()) for p in people]
    things = [Atom(f"the_{o}") for o in objects]
    places = [Atom(f"the_{r}") for r in rooms]
    for t in program.timeline:
        for p in persons:
            for o in things:
                yield Compound("property", (Atom("possession"), t, p, o))
        for x in persons + things:
            for loc in places:
                yield Compound("property", (Atom("location"), t, x, loc))

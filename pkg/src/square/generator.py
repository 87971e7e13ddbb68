"""Deterministic generator of bAbI-format stories for the five supported tasks.

Gold answers come from the generator's own world model (room assignments,
grid coordinates), not from the reasoner or the oracle.
"""
from __future__ import annotations

import random

from .babi import QAItem, Story

PEOPLE = ("Mary", "John", "Sandra", "Daniel")
ROOMS = ("bathroom", "bedroom", "hallway", "office", "garden", "kitchen")
OBJECTS = ("milk", "football", "apple")
MOVE_VERBS = ("moved", "went", "journeyed", "travelled")
GET_VERBS = ("got", "grabbed", "picked up", "took")
DROP_VERBS = ("dropped", "discarded", "put down", "left")
SHAPES = ("triangle", "red square", "blue square", "pink rectangle", "red sphere", "yellow square")
COMPASS = {"north": (0, 1), "south": (0, -1), "east": (1, 0), "west": (-1, 0)}
PLACES = {"above": (0, 1), "below": (0, -1), "to the right of": (1, 0), "to the left of": (-1, 0)}


class _Builder:
    def __init__(self):
        self.story = Story()
        self.next_id = 1

    def say(self, text: str) -> int:
        lid = self.next_id
        self.story.declaratives.append((lid, text))
        self.next_id += 1
        return lid

    def ask(self, question: str, answer: str, support=()):
        self.story.questions.append(QAItem(self.next_id, question, answer, tuple(sorted(support))))
        self.next_id += 1


class _Rooms:
    """People, objects and rooms with line ids of the facts that set them."""

    def __init__(self, rng, people, objects, rooms):
        self.rng = rng
        self.people, self.objects, self.rooms = people, objects, rooms
        self.at: dict = {}             # person -> (room, line id)
        self.holder: dict = {}         # object -> (person, line id)
        self.obj_at: dict = {}         # object -> room (None while unknown)
        self.history: dict = {o: [] for o in objects}   # object -> rooms over time

    def snapshot(self):
        for o in self.objects:
            self.history[o].append(self.obj_at.get(o))

    def move(self, b: _Builder, person=None) -> int:
        person = person or self.rng.choice(self.people)
        old = self.at.get(person, (None,))[0]
        room = self.rng.choice([r for r in self.rooms if r != old])
        verb = self.rng.choice(MOVE_VERBS)
        back = " back" if verb == "went" and self.rng.random() < 0.3 else ""
        lid = b.say(f"{person} {verb}{back} to the {room}.")
        self.at[person] = (room, lid)
        for o, (who, _) in self.holder.items():
            if who == person:
                self.obj_at[o] = room
        self.snapshot()
        return lid

    def can_get(self, person, obj) -> bool:
        if obj in self.holder or person not in self.at:
            return False
        return self.obj_at.get(obj) in (None, self.at[person][0])

    def get(self, b: _Builder, person, obj) -> int:
        there = " there" if self.rng.random() < 0.5 else ""
        lid = b.say(f"{person} {self.rng.choice(GET_VERBS)} the {obj}{there}.")
        self.holder[obj] = (person, lid)
        self.obj_at[obj] = self.at[person][0]
        self.snapshot()
        return lid

    def drop(self, b: _Builder, obj) -> int:
        person, _ = self.holder.pop(obj)
        there = " there" if self.rng.random() < 0.5 else ""
        lid = b.say(f"{person} {self.rng.choice(DROP_VERBS)} the {obj}{there}.")
        self.snapshot()
        return lid

    def random_action(self, b: _Builder, p_object=0.5):
        rng = self.rng
        if rng.random() < p_object:
            held = list(self.holder)
            if held and rng.random() < 0.4:
                return self.drop(b, rng.choice(held))
            options = [(p, o) for p in self.people for o in self.objects if self.can_get(p, o)]
            if options:
                return self.get(b, *rng.choice(options))
        return self.move(b)


# ---------------------------------------------------------------------------
# Tasks 1-3

def gen_qa1(rng: random.Random) -> Story:
    b = _Builder()
    people = rng.sample(PEOPLE, 2 + rng.randrange(3))
    w = _Rooms(rng, people, (), ROOMS)
    for _ in range(5):
        for _ in range(2):
            w.move(b)
        person = rng.choice(list(w.at))
        room, lid = w.at[person]
        b.ask(f"Where is {person}?", room, [lid])
    return b.story


def gen_qa2(rng: random.Random) -> Story:
    b = _Builder()
    people = rng.sample(PEOPLE, 3)
    objects = rng.sample(OBJECTS, 2 + rng.randrange(2))
    w = _Rooms(rng, people, objects, ROOMS)
    for p in people[:2]:
        w.move(b, p)
    asked = 0
    while asked < 5:
        for _ in range(rng.randrange(2, 5)):
            w.random_action(b, 0.55)
        seen = [o for o in objects if w.obj_at.get(o) is not None]
        if not seen:
            continue
        obj = rng.choice(seen)
        b.ask(f"Where is the {obj}?", w.obj_at[obj], _support_object(w, obj, b))
        asked += 1
    return b.story


def _support_object(w: _Rooms, obj, b: _Builder) -> list[int]:
    """Line of the object's latest pickup plus its holder's last move while holding it."""
    lines = b.story.declaratives
    got = [(lid, t) for lid, t in lines
           if f" the {obj}" in t and any(f" {v} the {obj}" in t for v in GET_VERBS)]
    if not got:
        return []
    lid, text = got[-1]
    person = text.split()[0]
    dropped = [l for l, t in lines if l > lid and f" the {obj}" in t]
    end = dropped[0] if dropped else lines[-1][0] + 1
    moves = [l for l, t in lines if l < end and t.startswith(person + " ") and " to the " in t]
    return [lid] + moves[-1:]


def gen_qa3(rng: random.Random) -> Story:
    b = _Builder()
    people = rng.sample(PEOPLE, 2)
    objects = rng.sample(OBJECTS, 2)
    w = _Rooms(rng, people, objects, ROOMS[:4])
    for p in people:
        w.move(b, p)
    asked = 0
    tries = 0
    while asked < 5 and tries < 200:
        tries += 1
        for _ in range(rng.randrange(2, 6)):
            w.random_action(b, 0.6)
        options = []
        for o in objects:
            hist = w.history[o]
            arrivals = {}
            for i in range(1, len(hist)):
                if hist[i] is not None and hist[i - 1] is not None and hist[i] != hist[i - 1]:
                    arrivals.setdefault(hist[i], []).append((hist[i - 1], b.story.declaratives[i][0]))
            # ask only about a room the object reached exactly once, and never started in
            first = next((h for h in hist if h is not None), None)
            for room, prevs in arrivals.items():
                if len(prevs) == 1 and room != first:
                    options.append((o, room) + prevs[0])
        if options:
            obj, room, prev, arrival = rng.choice(sorted(options))
            b.ask(f"Where was the {obj} before the {room}?", prev, [arrival])
            asked += 1
    return b.story


# ---------------------------------------------------------------------------
# Tasks 4 and 17

def gen_qa4(rng: random.Random) -> Story:
    b = _Builder()
    while True:
        rooms = rng.sample(ROOMS, 3)
        pos = {rooms[0]: (0, 0)}
        d1 = rng.choice(list(COMPASS))
        pos[rooms[1]] = _add(pos[rooms[0]], COMPASS[d1])
        anchor = rng.choice(rooms[:2])
        d2 = rng.choice(list(COMPASS))
        pos[rooms[2]] = _add(pos[anchor], COMPASS[d2])
        if len(set(pos.values())) == 3:
            break
    facts = [(rooms[1], d1, rooms[0]), (rooms[2], d2, anchor)]
    l1 = b.say(f"The {rooms[1]} is {d1} of the {rooms[0]}.")
    l2 = b.say(f"The {rooms[2]} is {d2} of the {anchor}.")
    lids = {facts[0]: l1, facts[1]: l2}
    # pick a question whose answer is unique among stated relations
    candidates = []
    for (a, d, c) in facts:
        if _compass_count(facts, d, c, "left") == 1:
            candidates.append((f"What is {d} of the {c}?", a, lids[(a, d, c)]))
        if _compass_count(facts, d, a, "right") == 1:
            candidates.append((f"What is the {a} {d} of?", c, lids[(a, d, c)]))
    q, ans, lid = rng.choice(candidates)
    b.ask(q, ans, [lid])
    return b.story


_OPP = {"north": "south", "south": "north", "east": "west", "west": "east"}


def _compass_count(facts, d, x, side) -> int:
    """How many rooms stand in relation d with x (x on the given side)."""
    found = set()
    for a, dd, c in facts:
        for p, q, r in ((a, dd, c), (c, _OPP[dd], a)):
            if q != d:
                continue
            if side == "left" and r == x:
                found.add(p)
            if side == "right" and p == x:
                found.add(r)
    return len(found)


def _add(p, d):
    return (p[0] + d[0], p[1] + d[1])


def gen_qa17(rng: random.Random) -> Story:
    b = _Builder()
    while True:
        shapes = rng.sample(SHAPES, 3)
        pos = {shapes[0]: (0, 0)}
        r1 = rng.choice(list(PLACES))
        pos[shapes[1]] = _add(pos[shapes[0]], PLACES[r1])
        anchor = rng.choice(shapes[:2])
        r2 = rng.choice(list(PLACES))
        pos[shapes[2]] = _add(pos[anchor], PLACES[r2])
        if len(set(pos.values())) == 3:
            break
    b.say(f"The {shapes[1]} is {r1} the {shapes[0]}.")
    b.say(f"The {shapes[2]} is {r2} the {anchor}.")
    yes, no = [], []
    for a in shapes:
        for c in shapes:
            if a == c:
                continue
            for rel, (dx, dy) in PLACES.items():
                ax, ay = pos[a]
                cx, cy = pos[c]
                holds = (ay - cy) * dy > 0 if dx == 0 else (ax - cx) * dx > 0
                (yes if holds else no).append((a, rel, c))
    picks = rng.sample(yes, min(4, len(yes)))
    picks += rng.sample(no, 8 - len(picks))
    rng.shuffle(picks)
    for a, rel, c in picks:
        b.ask(f"Is the {a} {rel} the {c}?", "yes" if (a, rel, c) in yes else "no", [1, 2])
    return b.story


GENERATORS = {"qa1": gen_qa1, "qa2": gen_qa2, "qa3": gen_qa3, "qa4": gen_qa4, "qa17": gen_qa17}
TASK_SEEDS = {"qa1": 101, "qa2": 202, "qa3": 303, "qa4": 404, "qa17": 1717}


def generate_task(task: str, n_stories: int = 50, seed: int | None = None) -> list[Story]:
    rng = random.Random(TASK_SEEDS[task] if seed is None else seed)
    return [GENERATORS[task](rng) for _ in range(n_stories)]


# ---------------------------------------------------------------------------
# Small random stories for oracle cross-checks

def random_story(rng: random.Random, max_sentences=8, max_people=3, max_objects=3,
                 max_rooms=4) -> Story:
    """Up to ``max_sentences`` move/get/drop lines, then questions about everyone."""
    people = rng.sample(PEOPLE, rng.randint(1, max_people))
    objects = rng.sample(OBJECTS, rng.randint(1, max_objects))
    rooms = rng.sample(ROOMS, rng.randint(2, max_rooms))
    b = _Builder()
    w = _Rooms(rng, people, objects, rooms)
    for _ in range(rng.randint(1, max_sentences)):
        w.random_action(b, 0.5)
    for p in people:
        b.ask(f"Where is {p}?", w.at.get(p, ("",))[0] or "unknown")
    for o in objects:
        b.ask(f"Where is the {o}?", w.obj_at.get(o) or "unknown")
        for r in rooms:
            b.ask(f"Where was the {o} before the {r}?", "unknown")
    return b.story


def random_stories(n: int, seed: int = 0, **kw) -> list[Story]:
    rng = random.Random(seed)
    return [random_story(rng, **kw) for _ in range(n)]


def main(argv=None):
    import argparse
    from pathlib import Path

    from .babi import TASKS, write_babi

    ap = argparse.ArgumentParser(description="write generated bAbI-format task files")
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--stories", type=int, default=50)
    ap.add_argument("--tasks", nargs="+", default=list(TASKS), choices=TASKS)
    args = ap.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for task in args.tasks:
        path = args.outdir / f"{task}.txt"
        write_babi(generate_task(task, args.stories), path)
        print(path)


if __name__ == "__main__":
    main()

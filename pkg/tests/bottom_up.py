"""Bottom-up well-founded model of a ground-able program (alternating fixpoint).

Used as an independent check of the goal-directed solver: it shares only the
term representation and unification with the package, and evaluates the
builtins it needs (after/2, neq/2, eq/2) on its own.
"""
from __future__ import annotations

from square.terms import Compound, Time, is_ground, pred_key, rename, resolve, unify, walk

SUPPORTED_BUILTINS = {("after", 2), ("neq", 2), ("eq", 2)}


def _after(args, subst, timeline):
    t2, t1 = walk(args[0], subst), walk(args[1], subst)
    if not isinstance(t2, Time):
        # bottom-up evaluation may reach after/2 first: range over the timeline
        for t in timeline:
            s = unify(t2, t, subst)
            if s is not None:
                yield from _after(args, s, timeline)
        return
    if isinstance(t1, Time):
        if t2.index > t1.index:
            yield subst
        return
    prev = [t for t in timeline if t.index < t2.index]
    if prev:
        s = unify(t1, prev[-1], subst)
        if s is not None:
            yield s


def _matches(body, i, subst, facts, negative, timeline):
    if i == len(body):
        yield subst
        return
    lit = body[i]
    term = lit.term
    key = pred_key(term)
    if lit.negated:
        g = resolve(term, subst)
        if not is_ground(g):
            raise ValueError(f"non-ground negative literal {g}")
        if g not in negative:
            yield from _matches(body, i + 1, subst, facts, negative, timeline)
        return
    if key == ("after", 2):
        for s in _after(term.args, subst, timeline):
            yield from _matches(body, i + 1, s, facts, negative, timeline)
        return
    if key == ("neq", 2):
        a, b = resolve(term.args[0], subst), resolve(term.args[1], subst)
        if a != b:
            yield from _matches(body, i + 1, subst, facts, negative, timeline)
        return
    if key == ("eq", 2):
        s = unify(term.args[0], term.args[1], subst)
        if s is not None:
            yield from _matches(body, i + 1, s, facts, negative, timeline)
        return
    for f in list(facts.get(key, ())):
        s = unify(term, f, subst)
        if s is not None:
            yield from _matches(body, i + 1, s, facts, negative, timeline)


def least_model(rules, edb, timeline, negative) -> set:
    """Least model with ``not a`` read as ``a not in negative``."""
    facts: dict = {}
    model = set()

    def add(atom):
        if atom not in model:
            model.add(atom)
            facts.setdefault(pred_key(atom), []).append(atom)
            return True
        return False

    for f in edb:
        add(f)
    renamed = [(rename(r.head, "#b"), [type(l)(rename(l.term, "#b"), l.negated) for l in r.body])
               for r in rules]
    changed = True
    while changed:
        changed = False
        for head, body in renamed:
            for s in list(_matches(body, 0, {}, facts, negative, timeline)):
                atom = resolve(head, s)
                if not is_ground(atom):
                    raise ValueError(f"rule derived non-ground {atom}")
                changed |= add(atom)
    return model


def well_founded(rules, edb, timeline) -> tuple[set, set]:
    """(true atoms, undefined atoms) of the well-founded model."""
    true: set = set()
    while True:
        upper = least_model(rules, edb, timeline, true)
        nxt = least_model(rules, edb, timeline, upper)
        if nxt == true:
            return true, upper - true
        true = nxt


def inertia_rules(rules):
    """Rules defining property/neg_property and what they depend on."""
    keep = {"property", "neg_property", "location_event", "unknown_value"}
    out = []
    for r in rules:
        if not isinstance(r.head, Compound) or r.head.functor not in keep:
            continue
        for lit in r.body:
            k = pred_key(lit.term)
            if k[0] in ("get_all_times", "member", "filter_times"):
                break
        else:
            out.append(r)
    return out

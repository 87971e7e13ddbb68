"""Goal-directed resolution with negation as failure and justification trees.

Depth-first, leftmost-literal SLD resolution over ground facts and rules, in
clause order.  ``not G`` succeeds iff ``G`` finitely fails.  A positive goal
that is a variant of one of its own ancestors fails (loop check), so positive
cycles such as symmetric relation rules terminate.

The engine targets programs whose recursion through negation descends through
time, as the bundled commonsense rules do; it does not compute stable models.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterator

from .errors import ClauseSyntaxError, DepthExceeded, Floundering
from .terms import (
    Atom, Compound, Literal, PList, Rule, Time, Var, is_ground, pred_key, rename,
    resolve, term_vars, unify, variant_key, walk,
)

DEFAULT_MAX_DEPTH = 10_000


@dataclass(frozen=True)
class Query:
    goal: Compound

    def variables(self) -> list[Var]:
        seen = []
        for v in term_vars(self.goal):
            if v not in seen and not v.name.startswith("_"):
                seen.append(v)
        return seen

    def __str__(self):
        return f"?- {self.goal}."


@dataclass(frozen=True)
class JustificationNode:
    goal: object
    kind: str                   # "fact" | "rule" | "builtin" | "naf"
    children: tuple = ()
    rule_id: str | None = None


@dataclass(frozen=True)
class Answer:
    bindings: dict
    justification: JustificationNode


@dataclass
class Limits:
    max_depth: int = DEFAULT_MAX_DEPTH
    max_answers: int | None = None


# ---------------------------------------------------------------------------
# Program database

class Database:
    """Immutable fact store plus rules, indexed by predicate and first argument."""

    def __init__(self, facts=(), rules=(), timeline=()):
        self.timeline = tuple(timeline)
        self._facts: dict = {}
        self._by_first: dict = {}
        self._rules: dict = {}
        self.rules: list[Rule] = []
        for f in facts:
            self._add_fact(f)
        for r in rules:
            if not r.body and is_ground(r.head):
                self._add_fact(r.head)
            else:
                check_range_restricted(r)
                self._rules.setdefault(pred_key(r.head), []).append(r)
                self.rules.append(r)

    def _add_fact(self, fact):
        key = pred_key(fact)
        bucket = self._facts.setdefault(key, [])
        if fact in bucket:
            return
        bucket.append(fact)
        if isinstance(fact, Compound) and fact.args:
            self._by_first.setdefault((key, fact.args[0]), []).append(fact)

    def facts_for(self, goal) -> list:
        key = pred_key(goal)
        if isinstance(goal, Compound) and goal.args:
            first = goal.args[0]
            if not isinstance(first, Var) and is_ground(first):
                return self._by_first.get((key, first), [])
        return self._facts.get(key, [])

    def rules_for(self, goal) -> list[Rule]:
        return self._rules.get(pred_key(goal), [])

    def has_fact(self, fact) -> bool:
        return fact in self.facts_for(fact)

    def all_facts(self) -> list:
        return [f for bucket in self._facts.values() for f in bucket]

    def defines(self, key) -> bool:
        return key in self._facts or key in self._rules or key in BUILTINS

    def rule_by_id(self, rule_id) -> Rule | None:
        for r in self.rules:
            if r.rule_id == rule_id:
                return r
        return None


def check_range_restricted(rule: Rule):
    """Negated literals may only use variables bound by the head or earlier literals."""
    bound = set(term_vars(rule.head))
    for lit in rule.body:
        vs = set(term_vars(lit.term))
        if lit.negated:
            free = vs - bound
            if free:
                names = ", ".join(sorted(v.name for v in free))
                raise ClauseSyntaxError(f"rule {rule.rule_id}: variables {names} in {lit} are not "
                                        "range-restricted", getattr(rule, "line", None))
        bound |= vs


# ---------------------------------------------------------------------------
# Builtins

def _time_list(term) -> list[Time]:
    if not isinstance(term, PList) or not all(isinstance(t, Time) for t in term.items):
        raise Floundering(term)
    return list(term.items)


def _bi_after(solver, args, subst, depth):
    t2, t1 = (walk(a, subst) for a in args)
    if not isinstance(t2, Time):
        raise Floundering(Compound("after", (t2, t1)))
    if isinstance(t1, Time):
        if t2.index > t1.index:
            yield subst
        return
    # generate mode binds the immediately preceding time point
    earlier = [t for t in solver.db.timeline if t.index < t2.index]
    if earlier:
        s = unify(t1, earlier[-1], subst)
        if s is not None:
            yield s


def _bi_get_all_times(solver, args, subst, depth):
    s = unify(args[0], PList(solver.db.timeline), subst)
    if s is not None:
        yield s


def _bi_filter_times(solver, args, subst, depth):
    per, ts = resolve(args[0], subst), resolve(args[1], subst)
    if not is_ground(per):
        raise Floundering(Compound("filter_times", (per, ts, args[2])))
    kept = [t for t in _time_list(ts)
            if solver.succeeds(Compound("location_event", (t, per)), depth)]
    s = unify(args[2], PList(tuple(kept)), subst)
    if s is not None:
        yield s


def _bi_filtered_possession_times(solver, args, subst, depth):
    obj, ts = resolve(args[0], subst), resolve(args[1], subst)
    if not is_ground(obj):
        raise Floundering(Compound("filtered_possession_times", (obj, ts, args[2])))
    kept = []
    for t in _time_list(ts):
        goal = Compound("property", (Atom("possession"), t, Var("_Holder"), obj))
        if solver.succeeds(goal, depth):
            kept.append(t)
    s = unify(args[2], PList(tuple(kept)), subst)
    if s is not None:
        yield s


def _bi_get_max_time(solver, args, subst, depth):
    ts = _time_list(resolve(args[0], subst))
    if not ts:
        return
    s = unify(args[1], ts[-1], subst)
    if s is not None:
        yield s


def _bi_get_sublist_times(solver, args, subst, depth):
    mx = walk(args[0], subst)
    if not isinstance(mx, Time):
        raise Floundering(Compound("get_sublist_times", (mx, args[1])))
    prefix = tuple(t for t in solver.db.timeline if t.index <= mx.index)
    s = unify(args[1], PList(prefix), subst)
    if s is not None:
        yield s


def _bi_member(solver, args, subst, depth):
    lst = walk(args[1], subst)
    if not isinstance(lst, PList):
        raise Floundering(Compound("member", (args[0], lst)))
    for item in lst.items:
        s = unify(args[0], item, subst)
        if s is not None:
            yield s


def _bi_eq(solver, args, subst, depth):
    s = unify(args[0], args[1], subst)
    if s is not None:
        yield s


def _bi_neq(solver, args, subst, depth):
    a, b = resolve(args[0], subst), resolve(args[1], subst)
    if not (is_ground(a) and is_ground(b)):
        raise Floundering(Compound("neq", (a, b)))
    if a != b:
        yield subst


BUILTINS = {
    ("after", 2): _bi_after,
    ("get_all_times", 1): _bi_get_all_times,
    ("filter_times", 3): _bi_filter_times,
    ("filtered_possession_times", 3): _bi_filtered_possession_times,
    ("get_max_time", 2): _bi_get_max_time,
    ("get_sublist_times", 2): _bi_get_sublist_times,
    ("member", 2): _bi_member,
    ("eq", 2): _bi_eq,
    ("neq", 2): _bi_neq,
}


def is_builtin(term) -> bool:
    return isinstance(term, Compound) and term.key in BUILTINS


# ---------------------------------------------------------------------------
# Solver

class _Node:
    """Mutable proof node; goals are resolved once the whole proof is known."""
    __slots__ = ("goal", "kind", "children", "rule_id")

    def __init__(self, goal, kind, children=(), rule_id=None):
        self.goal = goal
        self.kind = kind
        self.children = children
        self.rule_id = rule_id

    def freeze(self, subst) -> JustificationNode:
        return JustificationNode(resolve(self.goal, subst), self.kind,
                                 tuple(c.freeze(subst) for c in self.children), self.rule_id)


@dataclass
class _Frozen:
    node: JustificationNode

    def freeze(self, subst):
        return self.node


class Solver:
    """One search over one database; not thread-safe, create one per thread."""

    def __init__(self, db: Database, limits: Limits | None = None):
        self.db = db
        self.limits = limits or Limits()
        self._ancestors: dict = {}
        self._fresh = 0
        self._prune_log: list = []     # variant keys cut by the loop check
        self._partial: dict = {}       # answers found so far for tables under construction
        self._memo: dict = {}
        self._table: dict = {}

    # public API ----------------------------------------------------------
    def solve(self, query: Query | Compound) -> list[Answer]:
        if not isinstance(query, Query):
            query = Query(query)
        qvars = query.variables()
        answers, seen = [], set()
        with _deep_recursion():
            for subst, node in self._goal(query.goal, {}, 0):
                bindings = {v.name: resolve(v, subst) for v in qvars}
                key = tuple(sorted((k, str(v)) for k, v in bindings.items()))
                if key in seen:
                    continue
                seen.add(key)
                answers.append(Answer(bindings, node.freeze(subst)))
                if self.limits.max_answers is not None and len(answers) >= self.limits.max_answers:
                    break
        return answers

    def succeeds(self, goal, depth=0) -> bool:
        for _ in self._goal(goal, {}, depth + 1):
            return True
        return False

    # search --------------------------------------------------------------
    def _goal(self, goal, subst, depth) -> Iterator[tuple[dict, object]]:
        if depth > self.limits.max_depth:
            raise DepthExceeded(f"depth limit {self.limits.max_depth} exceeded at {resolve(goal, subst)}")
        goal = resolve(goal, subst)
        if is_builtin(goal):
            for s in BUILTINS[goal.key](self, goal.args, subst, depth):
                yield s, _Node(goal, "builtin")
            return
        if is_ground(goal):
            yield from self._ground_goal(goal, subst, depth)
        else:
            yield from self._tabled_goal(goal, subst, depth)

    def _ground_goal(self, goal, subst, depth):
        # a ground goal has at most one distinct answer: take its first proof
        hit = self._memo.get(goal)
        if hit is not None:
            if hit is not False:
                yield subst, _Frozen(hit)
            return
        start = len(self._prune_log)
        for s, node in self._search(goal, subst, depth):
            frozen = node.freeze(s)
            self._memo[goal] = frozen
            yield subst, _Frozen(frozen)
            return
        if self._settled(start, variant_key(goal)):
            self._memo[goal] = False

    def _tabled_goal(self, goal, subst, depth):
        # answers are collected to a fixpoint, so a recursive call on a variant
        # of this goal sees every answer the outer call eventually finds
        key = variant_key(goal)
        hit = self._table.get(key)
        if hit is None and key in self._partial:
            yield from self._search(goal, subst, depth)
            return
        if hit is None:
            start = len(self._prune_log)
            hit, seen = [], set()
            self._partial[key] = hit
            try:
                while True:
                    mark, found = len(self._prune_log), len(hit)
                    for s, node in self._search(goal, subst, depth):
                        inst = resolve(goal, s)
                        if inst not in seen:
                            seen.add(inst)
                            hit.append((inst, node.freeze(s)))
                    if len(hit) == found or key not in self._prune_log[mark:]:
                        break
            finally:
                del self._partial[key]
            if self._settled(start, key):
                self._table[key] = hit
        for inst, frozen in list(hit):
            s = unify(goal, inst, subst)
            if s is not None:
                yield s, _Frozen(frozen)

    def _settled(self, start, own) -> bool:
        """True when no loop-check cut since ``start`` hit a goal still being solved above us."""
        if any(k != own and self._ancestors.get(k) for k in self._prune_log[start:]):
            return False
        del self._prune_log[start:]
        return True

    def _search(self, goal, subst, depth):
        key = variant_key(goal)
        if self._ancestors.get(key):
            self._prune_log.append(key)
            for inst, frozen in list(self._partial.get(key, ())):
                s = unify(goal, inst, subst)
                if s is not None:
                    yield s, _Frozen(frozen)
            return
        for fact in self.db.facts_for(goal):
            s = unify(goal, fact, subst)
            if s is not None:
                yield s, _Node(goal, "fact")
        rules = self.db.rules_for(goal)
        if not rules:
            return
        self._ancestors[key] = self._ancestors.get(key, 0) + 1
        active = True
        try:
            for rule in rules:
                self._fresh += 1
                suffix = f"#{self._fresh}"
                head = rename(rule.head, suffix)
                s0 = unify(goal, head, subst)
                if s0 is None:
                    continue
                body = [Literal(rename(l.term, suffix), l.negated) for l in rule.body]
                for s, kids in self._body(body, 0, s0, depth):
                    self._ancestors[key] -= 1
                    active = False
                    yield s, _Node(goal, "rule", kids, rule.rule_id)
                    self._ancestors[key] += 1
                    active = True
        finally:
            if active:
                self._ancestors[key] -= 1

    def _body(self, body, i, subst, depth):
        if i == len(body):
            yield subst, []
            return
        lit = body[i]
        if lit.negated:
            g = resolve(lit.term, subst)
            if not is_ground(g):
                raise Floundering(g)
            if self.succeeds(g, depth):
                return
            for s, rest in self._body(body, i + 1, subst, depth):
                yield s, [_Node(g, "naf")] + rest
            return
        for s1, node in self._goal(lit.term, subst, depth + 1):
            for s2, rest in self._body(body, i + 1, s1, depth):
                yield s2, [node] + rest


class _deep_recursion:
    def __enter__(self):
        self.old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(self.old, 200_000))

    def __exit__(self, *exc):
        sys.setrecursionlimit(self.old)


def solve(query, db: Database, limits: Limits | None = None) -> list[Answer]:
    return Solver(db, limits).solve(query)


def eval_builtin(goal: Compound, db: Database) -> list[dict]:
    """Evaluate one builtin goal; returns the binding of each solution."""
    if not is_builtin(goal):
        raise KeyError(f"not a builtin: {goal}")
    solver = Solver(db)
    qvars = [v for v in dict.fromkeys(term_vars(goal))]
    return [{v.name: resolve(v, s) for v in qvars}
            for s in BUILTINS[goal.key](solver, goal.args, {}, 0)]


# ---------------------------------------------------------------------------
# Justifications

def render_justification(node: JustificationNode, max_depth: int | None = None) -> str:
    """Indented proof tree between BEGIN/END markers; two spaces per call depth.

    The root is at depth 0; ``max_depth`` hides everything deeper.
    """
    lines = ["BEGIN JUSTIFICATION"]

    def walk_node(n, d):
        text = f"not {n.goal}" if n.kind == "naf" else str(n.goal)
        lines.append("  " * (d + 1) + text)
        if max_depth is None or d < max_depth:
            for c in n.children:
                walk_node(c, d + 1)

    walk_node(node, 0)
    lines.append("END JUSTIFICATION")
    return "\n".join(lines)


def check_justification(node: JustificationNode, db: Database) -> bool:
    """Replay a proof tree against ``db``; True iff every step is valid."""
    if node.kind == "fact":
        return db.has_fact(node.goal)
    if node.kind == "naf":
        return is_ground(node.goal) and not Solver(db).succeeds(node.goal)
    if node.kind == "builtin":
        sols = eval_builtin(node.goal, db) if is_ground(node.goal) else []
        return bool(sols)
    if node.kind == "rule":
        rule = db.rule_by_id(node.rule_id)
        if rule is None or len(rule.body) != len(node.children):
            return False
        s = unify(rename(rule.head, "#chk"), node.goal, {})
        if s is None:
            return False
        for lit, child in zip(rule.body, node.children):
            if lit.negated != (child.kind == "naf"):
                return False
            s = unify(rename(lit.term, "#chk"), child.goal, s)
            if s is None:
                return False
        return all(check_justification(c, db) for c in node.children)
    return False

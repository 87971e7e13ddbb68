"""Bundled commonsense rule sets and the copular-sentence fallback.

Rule files live in ``square/data`` in clause syntax.  ``core`` is always
loaded first; ``directions`` and ``positional`` add spatial reasoning.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import ClauseSyntaxError, UnknownRuleSet, UnsupportedSyntax
from .normalize import normalize_np
from .parsing import lemma_of
from .reasoner import BUILTINS
from .terms import Atom, Compound, Directive, Rule, Time, parse_clauses, pred_key
from .trees import ParseTree

RULESET_NAMES = ("core", "directions", "positional")

COMPASS = ("north", "south", "east", "west")
COLORS = frozenset({"red", "blue", "pink", "yellow", "green", "white", "gray", "grey", "black"})


@dataclass(frozen=True)
class RuleSet:
    name: str
    rules: tuple
    dynamic: frozenset
    required_builtins: tuple

    def __len__(self):
        return len(self.rules)


def parse_ruleset(name: str, text: str) -> RuleSet:
    rules, dynamic = [], set()
    for c in parse_clauses(text, name):
        if isinstance(c, Directive):
            if c.name != "dynamic":
                raise ClauseSyntaxError(f"unknown directive {c.name!r}")
            dynamic.update(c.preds)
        else:
            rules.append(c)
    used = {pred_key(l.term) for r in rules for l in r.body}
    builtins = tuple(sorted(f"{n}/{a}" for n, a in used if (n, a) in BUILTINS))
    return RuleSet(name, tuple(rules), frozenset(dynamic), builtins)


@lru_cache(maxsize=None)
def load_ruleset(name: str) -> RuleSet:
    if name not in RULESET_NAMES:
        raise UnknownRuleSet(f"unknown rule set {name!r}; choose from {', '.join(RULESET_NAMES)}")
    text = resources.files("square").joinpath(f"data/{name}.rules").read_text("utf-8")
    return parse_ruleset(name, text)


def ruleset_text(name: str) -> str:
    load_ruleset(name)
    return resources.files("square").joinpath(f"data/{name}.rules").read_text("utf-8")


def assemble_rulebase(task_tags=()) -> list[Rule]:
    """Core rules followed by each requested set, in load order, without duplicates."""
    tags = list(task_tags)
    for t in tags:
        if t not in RULESET_NAMES:
            raise UnknownRuleSet(f"unknown rule set {t!r}; choose from {', '.join(RULESET_NAMES)}")
    order = ["core"] + [n for n in RULESET_NAMES[1:] if n in tags]
    sets = [load_ruleset(n) for n in order]
    out, seen = [], set()
    for rs in sets:
        for r in rs.rules:
            text = str(r)
            if text not in seen:
                seen.add(text)
                out.append(r)
    check_defined(out, frozenset().union(*(rs.dynamic for rs in sets)))
    return out


def check_defined(rules, dynamic=frozenset()):
    """Every body predicate must be defined by a rule, a builtin, or declared dynamic."""
    defined = {pred_key(r.head) for r in rules} | set(BUILTINS) | set(dynamic)
    for r in rules:
        for lit in r.body:
            key = pred_key(lit.term)
            if key not in defined:
                raise ClauseSyntaxError(f"rule {r.rule_id}: undefined predicate {key[0]}/{key[1]}", r.line)


def tags_for_task(task: str) -> tuple:
    return {"qa4": ("directions",), "qa17": ("positional",)}.get(task, ())


# ---------------------------------------------------------------------------
# Copular sentences

def _words(node: ParseTree) -> list[str]:
    return [w.lower() for w in node.leaves()]


def copular_relation(complements) -> tuple[str, ParseTree | None] | tuple[str, str]:
    """Classify the complement constituents of ``is``.

    Returns ``("rel", direction, np_or_None)`` or ``("attr", color)``; the NP
    is None when the preposition is stranded (``What is the office north of?``).
    """
    comps = list(complements)
    if len(comps) == 1 and comps[0].label == "ADJP":
        color = _words(comps[0])[0]
        return ("attr", color)
    if len(comps) == 1 and comps[0].label == "ADVP":
        node = comps[0]
        head = _words(node.children[0])[0]
        if head in COMPASS:
            pp = node.children[1] if len(node.children) > 1 else None
            if pp is not None and pp.label == "PP" and _words(pp.children[0]) == ["of"]:
                obj = pp.children[1] if len(pp.children) > 1 else None
                return ("rel", f"{head}_of", obj)
    if len(comps) == 1 and comps[0].label == "PP":
        pp = comps[0]
        head = lemma_of(pp.children[0].leaves()[0])
        obj = pp.children[1] if len(pp.children) > 1 else None
        if head in ("above", "below"):
            return ("rel", head, obj)
        if head == "to" and obj is not None:
            side = _side(obj)
            if side is not None:
                return ("rel", f"{side[0]}_of", side[1])
    raise UnsupportedSyntax("unrecognised copular complement: "
                            + " ".join(w for c in comps for w in c.leaves()))


def _side(np: ParseTree):
    """``the left of X`` -> ("left", X); stranded ``the left of`` -> ("left", None)."""
    if np.children and np.children[0].label == "NP" and len(np.children) == 2:
        inner, pp = np.children
        words = _words(inner)
        if words[-1] in ("left", "right") and _words(pp.children[0]) == ["of"]:
            obj = pp.children[1] if len(pp.children) > 1 else None
            return words[-1], obj
    words = _words(np)
    if words and words[-1] in ("left", "right"):
        return words[-1], None
    return None


def _copular_parts(tree: ParseTree):
    s = tree.children[0] if tree.label == "ROOT" and tree.children else tree
    if s.label != "S" or len(s.children) < 2:
        raise UnsupportedSyntax("copular sentence must be a declarative clause")
    subj, vp = s.children[0], s.children[1]
    if subj.label != "NP" or vp.label != "VP" or not vp.children:
        raise UnsupportedSyntax("copular sentence needs a subject and a verb phrase")
    verb = vp.children[0]
    if not verb.is_preterminal or lemma_of(verb.leaves()[0]) != "be":
        raise UnsupportedSyntax("verb phrase is not headed by 'is'")
    return subj, list(vp.children[1:])


def is_copular(tree: ParseTree) -> bool:
    try:
        _copular_parts(tree)
    except UnsupportedSyntax:
        return False
    return True


def translate_copular(tree: ParseTree, timestamp) -> set[Compound]:
    """Facts for ``A is DIR of B`` (rel/4) and ``A is COLOR`` (attr/4)."""
    t = timestamp if isinstance(timestamp, Time) else Time(int(timestamp))
    subj, comps = _copular_parts(tree)
    a = normalize_np(subj.leaves())
    kind = copular_relation(comps)
    if kind[0] == "attr":
        return {Compound("attr", (Atom("color"), t, a, Atom(kind[1])))}
    _, direction, obj = kind
    if obj is None:
        raise UnsupportedSyntax("copular relation lacks its second argument")
    return {Compound("rel", (Atom(direction), t, a, normalize_np(obj.leaves())))}

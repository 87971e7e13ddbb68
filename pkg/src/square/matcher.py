"""Partial tree matching of verb frames and grounding of frame semantics.

For every verb in a sentence tree, each frame of each of the verb's classes is
aligned against the tree, starting at the verb's parent constituent and
ascending one level at a time until a level matches or the root is passed.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import InstantiationError, NoFrameMatch, NoVerb
from .normalize import THERE, normalize_np
from .parsing import lemma_of
from .terms import UNKNOWN, Atom, Compound, Time
from .trees import ParseTree
from .verbnet import FrameLexicon, SemanticTemplate, VerbFrame

#: Constituents treated as atomic units when scanning a level.
UNIT_TAGS = frozenset({"NP", "PP", "ADVP", "ADJP", "WHNP", "WHADVP"})
#: Roles that may be left unbound or filled by a locative adverb.
LOCATIVE_ROLES = frozenset({"Destination", "Location", "Source", "Initial_Location"})
#: Predicates that keep their event-phase argument once grounded.
PHASED = frozenset({"path_rel", "contact", "has_possession", "has_location"})
LOCATIVE_ADVERBS = frozenset({"there"})


@dataclass(frozen=True)
class RoleBinding:
    role: str
    value: Atom


@dataclass(frozen=True)
class MatchResult:
    verb_lemma: str
    class_id: str
    frame_index: int
    bindings: frozenset            # of RoleBinding
    matched_span: tuple            # tree paths of consumed constituents

    def as_dict(self) -> dict:
        return {b.role: b.value for b in self.bindings}


def _node(tree: ParseTree, path: tuple) -> ParseTree:
    for i in path:
        tree = tree.children[i]
    return tree


def _units(node: ParseTree, path: tuple) -> list[tuple[ParseTree, tuple]]:
    """Constituent sequence of one level, by depth-first flattening of clause nodes."""
    out = []
    for i, child in enumerate(node.children):
        p = path + (i,)
        if child.is_leaf:
            continue
        if child.label in UNIT_TAGS or child.is_preterminal:
            out.append((child, p))
        else:
            out.extend(_units(child, p))
    return out


def _head_np(node: ParseTree) -> ParseTree:
    while node.children and not node.children[0].is_preterminal and node.children[0].label == "NP":
        node = node.children[0]
    return node


def _pp_object(pp: ParseTree) -> ParseTree | None:
    for c in pp.children[1:]:
        if c.label == "NP":
            return c
    return None


def _pp_head(pp: ParseTree) -> str | None:
    first = pp.children[0]
    if first.is_preterminal:
        return lemma_of(first.leaves()[0])
    return None


def _is_verb(node: ParseTree) -> bool:
    return node.is_preterminal and node.label.startswith("VB")


def _match_level(units, pattern, verb_path) -> tuple[dict, tuple] | None:
    """Best alignment of ``pattern`` against ``units``: (bindings, consumed paths)."""
    best = None

    def consider(result):
        nonlocal best
        if result is not None and (best is None or len(result[1]) > len(best[1])):
            best = result

    def rest_optional(pi):
        rest = pattern[pi:]
        if not rest:
            return True
        if rest[0].kind == "prep":
            rest = rest[1:]
        return len(rest) == 1 and rest[0].kind == "role" and rest[0].role in LOCATIVE_ROLES

    def go(pi, ui, binds, span):
        if pi == len(pattern):
            return binds, span
        if ui == len(units):
            return (binds, span) if rest_optional(pi) else None
        elem = pattern[pi]
        node, path = units[ui]
        found = None

        def take(result):
            nonlocal found
            if result is not None and (found is None or len(result[1]) > len(found[1])):
                found = result

        if elem.kind == "verb":
            if _is_verb(node) and (verb_path is None or path == verb_path):
                take(go(pi + 1, ui + 1, binds, span + (path,)))
        elif elem.kind == "prep":
            nxt = pattern[pi + 1] if pi + 1 < len(pattern) else None
            if node.label == "PP" and _pp_head(node) in elem.prep_set:
                if nxt is not None and nxt.kind == "role" and nxt.phrase_tag == "NP":
                    obj = _pp_object(node)
                    if obj is not None:
                        b = dict(binds)
                        b[nxt.role] = normalize_np(_head_np(obj).leaves())
                        take(go(pi + 2, ui + 1, b, span + (path,)))
                else:
                    take(go(pi + 1, ui + 1, binds, span + (path,)))
            if (nxt is not None and nxt.kind == "role" and nxt.role in LOCATIVE_ROLES
                    and _is_locative_adverb(node)):
                b = dict(binds)
                b[nxt.role] = THERE
                take(go(pi + 2, ui + 1, b, span + (path,)))
        elif elem.kind == "role":
            if elem.phrase_tag == "NP" and node.label == "NP":
                b = dict(binds)
                b[elem.role] = normalize_np(_head_np(node).leaves())
                take(go(pi + 1, ui + 1, b, span + (path,)))
            elif elem.phrase_tag == "PP" and node.label == "PP" and _pp_object(node) is not None:
                b = dict(binds)
                b[elem.role] = normalize_np(_head_np(_pp_object(node)).leaves())
                take(go(pi + 1, ui + 1, b, span + (path,)))
            elif elem.phrase_tag in ("ADVP", "ADJP") and node.label == elem.phrase_tag:
                b = dict(binds)
                b[elem.role] = normalize_np(node.leaves())
                take(go(pi + 1, ui + 1, b, span + (path,)))
            if elem.role in LOCATIVE_ROLES and _is_locative_adverb(node):
                b = dict(binds)
                b[elem.role] = THERE
                take(go(pi + 1, ui + 1, b, span + (path,)))
        # interposed constituents may be skipped once the match is anchored
        if pi > 0:
            take(go(pi, ui + 1, binds, span))
        return found

    consider(go(0, 0, {}, ()))
    return best


def _is_locative_adverb(node: ParseTree) -> bool:
    return (node.label == "ADVP" and len(node.children) == 1
            and node.leaves()[0].lower() in LOCATIVE_ADVERBS)


def get_matching(root: ParseTree, pattern, verb_path: tuple | None = None,
                 root_path: tuple = ()) -> dict:
    """Match ``pattern`` against the constituents of ``root``; ``{}`` on failure."""
    found = _match_level(_units(root, root_path), list(pattern), verb_path)
    return found[0] if found else {}


def _thematic_roles(tree, pattern, verb_path):
    level = verb_path[:-1]
    while True:
        found = _match_level(_units(_node(tree, level), level), list(pattern), verb_path)
        if found is not None:
            return found
        if not level:
            return None
        level = level[:-1]


def get_thematic_roles(tree: ParseTree, pattern, verb) -> dict:
    """Ascend from the verb's parent until ``pattern`` matches; ``{}`` if it never does.

    ``verb`` is either the tree path of the verb's preterminal or its surface word
    (first occurrence).
    """
    verb_path = verb if isinstance(verb, tuple) else _find_verb(tree, verb)
    if verb_path is None:
        return {}
    found = _thematic_roles(tree, pattern, verb_path)
    return found[0] if found else {}


def _verb_paths(tree: ParseTree, path=()) -> list[tuple]:
    out = []
    for i, child in enumerate(tree.children):
        p = path + (i,)
        if _is_verb(child):
            out.append(p)
        elif not child.is_leaf:
            out.extend(_verb_paths(child, p))
    return out


def _find_verb(tree, word) -> tuple | None:
    text = getattr(word, "text", word)
    for p in _verb_paths(tree):
        if _node(tree, p).leaves()[0] == text:
            return p
    return None


def _wrap(role: str, value) -> Compound:
    return Compound(role.lower(), (value,))


def instantiate_semantics(bindings: dict, templates, timestamp, event_offset: int = 0,
                          roles=None) -> list[Compound]:
    """Ground frame semantics: time first, roles wrapped in role functors.

    Unbound roles ground to ``unknown``.  ``roles``, when given, is the set of
    role names the frame may mention; any other role is an error.
    """
    t = timestamp if isinstance(timestamp, Time) else Time(int(timestamp))
    out = []
    for tmpl in templates:
        out.append(_ground(tmpl, bindings, t, event_offset, roles))
    return out


def _event(symbol: str, offset: int) -> Atom:
    return Atom(f"e{int(symbol[1:]) + offset}")


def _ground(tmpl: SemanticTemplate, bindings, t, offset, roles) -> Compound:
    def value(role):
        if role in bindings:
            return bindings[role]
        if roles is not None and role not in roles:
            raise InstantiationError(f"role {role} of {tmpl.predicate} cannot be grounded")
        return UNKNOWN

    name = ("neg_" if tmpl.negated else "") + tmpl.predicate
    args: list = [t]
    if tmpl.phase is not None and tmpl.predicate in PHASED:
        args.append(Compound(tmpl.phase[0], (_event(tmpl.phase[1], offset),)))
    role_args = tmpl.roles()
    if tmpl.predicate == "path_rel" and len(role_args) >= 2:
        theme, place = role_args[0], role_args[1]
        direction = "source" if tmpl.phase and tmpl.phase[0] == "start" else "destination"
        args.append(Compound(direction, (value(place),)))
        args.append(_wrap(theme, value(theme)))
    else:
        for a in tmpl.args:
            if a[0].isupper() and a[1:].isdigit() and a[0] == "E":
                args.append(Compound("event", (_event(a, offset),)))
            elif a[0].isupper():
                args.append(_wrap(a, value(a)))
            # lowercase constants are template markers and are not emitted
    return Compound(name, tuple(args))


def match_verb(tree: ParseTree, verb_path: tuple, lexicon: FrameLexicon) -> MatchResult | None:
    """Best (class, frame) match for one verb occurrence."""
    lemma = lemma_of(_node(tree, verb_path).leaves()[0])
    best = None
    for ci, cls in enumerate(lexicon.get_vn_classes(lemma)):
        for fi, frame in enumerate(lexicon.get_vn_frames(cls)):
            found = _thematic_roles(tree, frame.pattern, verb_path)
            if found is None:
                continue
            binds, span = found
            # most constituents consumed wins; earlier class/frame breaks ties
            if best is None or len(span) > len(best.matched_span):
                best = MatchResult(lemma, cls.class_id, fi,
                                   frozenset(RoleBinding(r, v) for r, v in binds.items()), span)
    return best


def get_sentence_semantics(tree: ParseTree, lexicon: FrameLexicon, timestamp) -> list[Compound]:
    """Grounded frame semantics of every verb in ``tree`` at ``timestamp``."""
    verbs = _verb_paths(tree)
    if not verbs:
        raise NoVerb(f"no verb in {tree}")
    facts: list[Compound] = []
    offset = 0
    for vp in verbs:
        word = _node(tree, vp).leaves()[0]
        lemma = lemma_of(word)
        m = match_verb(tree, vp, lexicon)
        if m is None:
            warnings.warn(NoFrameMatch(f"no frame matches verb {word!r} ({lemma})"), stacklevel=2)
            continue
        cls = lexicon.get_class(m.class_id)
        frame: VerbFrame = cls.frames[m.frame_index]
        allowed = set(frame.pattern_roles()) | set(cls.roles)
        for fact in instantiate_semantics(m.as_dict(), frame.semantics, timestamp, offset, allowed):
            if fact not in facts:
                facts.append(fact)
        offset += 1 + max((int(s[1:]) for s in _events(frame)), default=-1)
    return facts


def _events(frame: VerbFrame):
    for tmpl in frame.semantics:
        if tmpl.phase:
            yield tmpl.phase[1]
        for a in tmpl.args:
            if a[0] == "E" and a[1:].isdigit():
                yield a

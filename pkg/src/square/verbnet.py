"""Verb-frame lexicon: classes, frames, syntax patterns and semantic templates."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import ClauseSyntaxError, FrameFileError, UnknownPrimitive
from .terms import Atom, Compound, Var, parse_term

PHRASE_SLOTS = frozenset({"NP", "PP", "ADVP", "ADJP"})
PHASES = frozenset({"start", "during", "end"})
_EVENT = re.compile(r"E\d+")


@dataclass(frozen=True)
class SyntaxElement:
    kind: str                       # "role" | "verb" | "prep"
    role: str | None = None
    phrase_tag: str | None = None
    prep_set: frozenset = frozenset()

    def __str__(self):
        if self.kind == "verb":
            return "V"
        if self.kind == "prep":
            return "PREP{" + ",".join(sorted(self.prep_set)) + "}"
        return f"{self.phrase_tag}:{self.role}"


@dataclass(frozen=True)
class SemanticTemplate:
    predicate: str
    negated: bool
    phase: tuple | None             # (phase_name, event_symbol) or None
    args: tuple                     # role names, event symbols, or lowercase constants

    def roles(self):
        return [a for a in self.args if a[0].isupper() and not _EVENT.fullmatch(a)]


@dataclass(frozen=True)
class VerbFrame:
    pattern: tuple
    semantics: tuple
    description: str = ""

    def pattern_roles(self) -> list[str]:
        return [e.role for e in self.pattern if e.kind == "role"]


@dataclass(frozen=True)
class VerbClass:
    class_id: str
    members: frozenset
    frames: tuple
    roles: frozenset = frozenset()


@dataclass(frozen=True)
class FrameLexicon:
    primitives: frozenset = frozenset()
    classes: tuple = ()
    _by_member: dict = field(default_factory=dict, compare=False, repr=False)

    def get_vn_classes(self, verb_lemma: str) -> list[VerbClass]:
        return list(self._by_member.get(verb_lemma, ()))

    def get_vn_frames(self, verb_class: VerbClass) -> list[VerbFrame]:
        return list(verb_class.frames)

    def get_class(self, class_id: str) -> VerbClass:
        for c in self.classes:
            if c.class_id == class_id:
                return c
        raise KeyError(class_id)


def get_vn_classes(lexicon: FrameLexicon, verb_lemma: str) -> list[VerbClass]:
    return lexicon.get_vn_classes(verb_lemma)


def get_vn_frames(lexicon: FrameLexicon, verb_class: VerbClass) -> list[VerbFrame]:
    return lexicon.get_vn_frames(verb_class)


# ---------------------------------------------------------------------------
# Loading

def _parse_pattern(text: str, lineno: int) -> tuple:
    out = []
    for tok in text.split():
        if tok == "V":
            out.append(SyntaxElement("verb"))
            continue
        m = re.fullmatch(r"PREP\{([a-z_,]+)\}", tok)
        if m:
            preps = frozenset(p for p in m.group(1).split(",") if p)
            if not preps:
                raise FrameFileError("empty preposition set", lineno)
            out.append(SyntaxElement("prep", prep_set=preps))
            continue
        m = re.fullmatch(r"([A-Z]+):([A-Z][A-Za-z_]*)", tok)
        if not m or m.group(1) not in PHRASE_SLOTS:
            raise FrameFileError(f"bad pattern element {tok!r}", lineno)
        out.append(SyntaxElement("role", role=m.group(2), phrase_tag=m.group(1)))
    if sum(e.kind == "verb" for e in out) != 1:
        raise FrameFileError("pattern needs exactly one verb marker V", lineno)
    roles = [e.role for e in out if e.kind == "role"]
    if len(set(roles)) != len(roles):
        raise FrameFileError("role repeated in pattern", lineno)
    return tuple(out)


def _arg_name(term, lineno) -> str:
    if isinstance(term, (Var, Atom)):
        return term.name
    raise FrameFileError(f"unsupported template argument {term}", lineno)


def _parse_sem(text: str, lineno: int, primitives: frozenset) -> SemanticTemplate:
    negated = text.startswith("-")
    if negated:
        text = text[1:].strip()
    try:
        term = parse_term(text)
    except ClauseSyntaxError as e:
        raise FrameFileError(f"bad semantic template: {e}", lineno) from None
    if not isinstance(term, Compound):
        raise FrameFileError(f"semantic template must be a predicate: {text}", lineno)
    if term.functor not in primitives:
        raise UnknownPrimitive(f"unknown primitive {term.functor!r}", lineno)
    args = list(term.args)
    phase = None
    if args and isinstance(args[0], Compound) and args[0].functor in PHASES:
        ph = args.pop(0)
        if len(ph.args) != 1 or not isinstance(ph.args[0], Var) or not _EVENT.fullmatch(ph.args[0].name):
            raise FrameFileError(f"phase needs one event symbol: {ph}", lineno)
        phase = (ph.functor, ph.args[0].name)
    return SemanticTemplate(term.functor, negated, phase, tuple(_arg_name(a, lineno) for a in args))


def read_frames(lines) -> FrameLexicon:
    primitives: frozenset = frozenset()
    classes: list[dict] = []
    cls = frame = None

    def close_frame():
        nonlocal frame
        if frame is not None:
            if frame["pattern"] is None:
                raise FrameFileError("frame without pattern", frame["line"])
            cls["frames"].append(frame)
            frame = None

    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if line.startswith("primitives:"):
            primitives = frozenset(line[len("primitives:"):].split())
        elif key == "class":
            close_frame()
            if not rest or len(rest.split()) != 1:
                raise FrameFileError("class needs one identifier", lineno)
            if any(c["id"] == rest for c in classes):
                raise FrameFileError(f"duplicate class id {rest!r}", lineno)
            cls = {"id": rest, "members": [], "roles": [], "frames": [], "line": lineno}
            classes.append(cls)
        elif line.startswith("members:"):
            if cls is None:
                raise FrameFileError("members outside a class", lineno)
            cls["members"] = line[len("members:"):].split()
        elif line.startswith("roles:"):
            if cls is None:
                raise FrameFileError("roles outside a class", lineno)
            cls["roles"] = line[len("roles:"):].split()
        elif key == "frame":
            if cls is None:
                raise FrameFileError("frame outside a class", lineno)
            close_frame()
            frame = {"desc": rest, "pattern": None, "sem": [], "line": lineno}
        elif line.startswith("pattern:"):
            if frame is None:
                raise FrameFileError("pattern outside a frame", lineno)
            frame["pattern"] = _parse_pattern(line[len("pattern:"):], lineno)
        elif line.startswith("sem:"):
            if frame is None:
                raise FrameFileError("sem outside a frame", lineno)
            tmpl = _parse_sem(line[len("sem:"):].strip(), lineno, primitives)
            frame["sem"].append((tmpl, lineno))
        else:
            raise FrameFileError(f"unrecognised line {line!r}", lineno)
    close_frame()

    built = []
    by_member: dict[str, list] = {}
    for c in classes:
        if not c["members"]:
            raise FrameFileError(f"class {c['id']} has no members", c["line"])
        if not c["frames"]:
            raise FrameFileError(f"class {c['id']} has no frames", c["line"])
        frames = []
        for f in c["frames"]:
            known = {e.role for e in f["pattern"] if e.kind == "role"} | set(c["roles"])
            for tmpl, lineno in f["sem"]:
                for role in tmpl.roles():
                    if role not in known:
                        raise FrameFileError(f"role {role!r} not in pattern or class roles", lineno)
            frames.append(VerbFrame(f["pattern"], tuple(t for t, _ in f["sem"]), f["desc"]))
        vc = VerbClass(c["id"], frozenset(c["members"]), tuple(frames), frozenset(c["roles"]))
        built.append(vc)
        for m in c["members"]:
            by_member.setdefault(m, []).append(vc)
    return FrameLexicon(primitives, tuple(built), by_member)


def load_lexicon(path=None) -> FrameLexicon:
    """Load a frame file; ``None`` loads the bundled lexicon."""
    if path is None:
        return default_frames()
    return read_frames(Path(path).read_text("utf-8").splitlines())


@lru_cache(maxsize=None)
def default_frames() -> FrameLexicon:
    text = resources.files("square").joinpath("data/frames.vn").read_text("utf-8")
    return read_frames(text.splitlines())

"""Logic terms, clauses, and the textual clause syntax.

Terms are immutable and hashable.  Time points are a distinct term kind so that
``t10`` orders after ``t9``; in text they are written ``t<index>``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import count
from typing import Iterator, Union

from .errors import ClauseSyntaxError


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self):
        # anonymous variables print as written
        return "_" if self.name.startswith("_G") else self.name


@dataclass(frozen=True, slots=True)
class Time:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("time indices start at 1")

    def __str__(self):
        return f"t{self.index}"


@dataclass(frozen=True, slots=True)
class PList:
    items: tuple

    def __str__(self):
        return "[" + ", ".join(map(str, self.items)) + "]"


@dataclass(frozen=True, slots=True)
class Compound:
    functor: str
    args: tuple

    def __str__(self):
        return f"{self.functor}({', '.join(map(str, self.args))})"

    @property
    def key(self):
        return (self.functor, len(self.args))


Term = Union[Atom, Var, Time, PList, Compound]

UNKNOWN = Atom("unknown")


def atom_or_time(name: str) -> Atom | Time:
    m = re.fullmatch(r"t(\d+)", name)
    if m and int(m.group(1)) > 0:
        return Time(int(m.group(1)))
    return Atom(name)


def compound(functor: str, *args) -> Compound:
    """Build a compound, coercing bare strings to atoms/time points."""
    return Compound(functor, tuple(atom_or_time(a) if isinstance(a, str) else a for a in args))


def pred_key(term) -> tuple[str, int]:
    if isinstance(term, Compound):
        return term.key
    if isinstance(term, Atom):
        return (term.name, 0)
    raise TypeError(f"not a callable term: {term}")


def term_vars(term) -> Iterator[Var]:
    if isinstance(term, Var):
        yield term
    elif isinstance(term, Compound):
        for a in term.args:
            yield from term_vars(a)
    elif isinstance(term, PList):
        for a in term.items:
            yield from term_vars(a)


def is_ground(term) -> bool:
    if isinstance(term, Var):
        return False
    if isinstance(term, Compound):
        return all(is_ground(a) for a in term.args)
    if isinstance(term, PList):
        return all(is_ground(a) for a in term.items)
    return True


# ---------------------------------------------------------------------------
# Substitutions

def walk(term, subst: dict):
    while isinstance(term, Var) and term in subst:
        term = subst[term]
    return term


def resolve(term, subst: dict):
    """Apply ``subst`` fully to ``term``."""
    term = walk(term, subst)
    if isinstance(term, Compound):
        return Compound(term.functor, tuple(resolve(a, subst) for a in term.args))
    if isinstance(term, PList):
        return PList(tuple(resolve(a, subst) for a in term.items))
    return term


def unify(a, b, subst: dict) -> dict | None:
    """Unify without occurs check; returns an extended copy or None."""
    stack = [(a, b)]
    out = subst
    copied = False
    while stack:
        x, y = stack.pop()
        x = walk(x, out)
        y = walk(y, out)
        if x is y or x == y:
            continue
        if isinstance(x, Var) or isinstance(y, Var):
            if not copied:
                out = dict(out)
                copied = True
            if isinstance(x, Var):
                out[x] = y
            else:
                out[y] = x
            continue
        if isinstance(x, Compound) and isinstance(y, Compound):
            if x.functor != y.functor or len(x.args) != len(y.args):
                return None
            stack.extend(zip(x.args, y.args))
            continue
        if isinstance(x, PList) and isinstance(y, PList):
            if len(x.items) != len(y.items):
                return None
            stack.extend(zip(x.items, y.items))
            continue
        return None
    return out


def rename(term, suffix: str):
    if isinstance(term, Var):
        return Var(term.name + suffix)
    if isinstance(term, Compound):
        return Compound(term.functor, tuple(rename(a, suffix) for a in term.args))
    if isinstance(term, PList):
        return PList(tuple(rename(a, suffix) for a in term.items))
    return term


def variant_key(term):
    """Hashable key equal for terms identical up to consistent variable renaming."""
    names: dict = {}

    def go(t):
        if isinstance(t, Var):
            return ("$V", names.setdefault(t, len(names)))
        if isinstance(t, Compound):
            return (t.functor,) + tuple(go(a) for a in t.args)
        if isinstance(t, PList):
            return ("$L",) + tuple(go(a) for a in t.items)
        return t

    return go(term)


# ---------------------------------------------------------------------------
# Clauses

@dataclass(frozen=True)
class Literal:
    term: Term
    negated: bool = False

    def __str__(self):
        return f"not {self.term}" if self.negated else str(self.term)


@dataclass(frozen=True)
class Rule:
    head: Term
    body: tuple = ()
    rule_id: str = ""
    line: int = field(default=0, compare=False)

    def __str__(self):
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."


@dataclass(frozen=True)
class Directive:
    name: str
    preds: tuple  # of (name, arity)


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<neck>:-)
  | (?P<punct>[()\[\],.|])
  | (?P<int>-?\d+)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<name>[a-z][A-Za-z0-9_]*)
  | (?P<slash>/)
    """,
    re.VERBOSE,
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ClauseSyntaxError(f"unexpected character {text[pos]!r}", self.line_of(pos))
            kind = m.lastgroup
            if kind != "ws":
                self.toks.append((kind, m.group(), pos))
            pos = m.end()
        self.i = 0
        self.anon = count()
        self.clause_start = 0

    def line_of(self, pos):
        return self.text.count("\n", 0, pos) + 1

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self, value=None, kind=None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value or kind
            raise ClauseSyntaxError(f"expected {want!r}, found {tok[1] or 'end of input'!r}",
                                    self.line_of(tok[2]))
        self.i += 1
        return tok

    def term(self):
        kind, val, pos = self.peek()
        if kind == "var":
            self.i += 1
            if val == "_":
                return Var(f"_G{next(self.anon)}")
            return Var(val)
        if kind == "int":
            self.i += 1
            return Atom(val)
        if val == "[":
            self.i += 1
            items = []
            if self.peek()[1] != "]":
                items.append(self.term())
                while self.peek()[1] == ",":
                    self.i += 1
                    items.append(self.term())
            self.take("]")
            return PList(tuple(items))
        if kind == "name":
            self.i += 1
            if self.peek()[1] == "(":
                self.i += 1
                args = [self.term()]
                while self.peek()[1] == ",":
                    self.i += 1
                    args.append(self.term())
                self.take(")")
                return Compound(val, tuple(args))
            return atom_or_time(val)
        raise ClauseSyntaxError(f"unexpected token {val or 'end of input'!r}", self.line_of(pos))

    def literal(self):
        kind, val, _ = self.peek()
        nxt = self.toks[self.i + 1][1] if self.i + 1 < len(self.toks) else ""
        if kind == "name" and val == "not" and nxt != "(":
            self.i += 1
            return Literal(self.term(), negated=True)
        return Literal(self.term())

    def clause(self):
        self.clause_start = self.peek()[2]
        if self.peek()[0] == "neck":
            self.i += 1
            name = self.take(kind="name")[1]
            preds = [self.pred_indicator()]
            while self.peek()[1] == ",":
                self.i += 1
                preds.append(self.pred_indicator())
            self.take(".")
            return Directive(name, tuple(preds))
        head = self.term()
        if isinstance(head, (Var, PList, Time)):
            raise ClauseSyntaxError(f"invalid clause head {head}", self.line_of(self.clause_start))
        body = []
        if self.peek()[0] == "neck":
            self.i += 1
            body.append(self.literal())
            while self.peek()[1] == ",":
                self.i += 1
                body.append(self.literal())
        self.take(".")
        return Rule(head, tuple(body))

    def pred_indicator(self):
        name = self.take(kind="name")[1]
        self.take(kind="slash")
        arity = int(self.take(kind="int")[1])
        return (name, arity)


def parse_clauses(text: str, source: str = "") -> list:
    """Parse clause text into Rule and Directive objects (rule ids ``source:n``)."""
    p = _Parser(text)
    out = []
    n = 0
    while p.peek()[0] != "eof":
        start = p.peek()[2]
        c = p.clause()
        if isinstance(c, Rule):
            n += 1
            c = Rule(c.head, c.body, f"{source}:{n}" if source else str(n), p.line_of(start))
        out.append(c)
    return out


def parse_term(text: str):
    p = _Parser(text)
    t = p.term()
    if p.peek()[1] == ".":
        p.i += 1
    if p.peek()[0] != "eof":
        raise ClauseSyntaxError(f"trailing input after term: {p.peek()[1]!r}")
    return t

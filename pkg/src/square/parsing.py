"""Tokenizer and deterministic recursive-descent parser for bAbI-style English.

The grammar covers declaratives (``NP VP``), copular sentences, and the
wh-/yes-no questions of the supported tasks.  Trees follow Penn-Treebank
conventions so that externally produced bracketed trees can be fed to the
same downstream code.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import EmptySentence, UnsupportedSyntax
from .trees import ParseTree

#: Closed word-level tag set produced by :func:`tokenize`.
TAGSET = frozenset({
    "DT", "NN", "NNP", "JJ", "IN", "TO", "RB", "VBD", "VBZ", "WRB", "WP", ".",
})

_WORD = re.compile(r"[A-Za-z][A-Za-z'\-]*|[.?!,]")


@dataclass(frozen=True)
class Token:
    text: str
    lemma: str
    pos: str

    def __str__(self):
        return f"{self.text}/{self.pos}"


@dataclass(frozen=True)
class Lexicon:
    words: dict       # lowercase word -> (lemma, pos)
    phrases: dict     # (w1, w2) lowercase -> (lemma, pos)


def read_lexicon(lines) -> Lexicon:
    words, phrases = {}, {}
    for n, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"lexicon line {n}: expected word<TAB>lemma<TAB>POS")
        word, lemma, pos = (p.strip() for p in parts)
        if pos not in TAGSET:
            raise ValueError(f"lexicon line {n}: tag {pos!r} outside the tag set")
        key = tuple(word.lower().split())
        if len(key) == 1:
            words[key[0]] = (lemma.lower(), pos)
        elif len(key) == 2:
            phrases[key] = (lemma.lower(), pos)
        else:
            raise ValueError(f"lexicon line {n}: at most two words per entry")
    return Lexicon(words, phrases)


@lru_cache(maxsize=None)
def default_lexicon() -> Lexicon:
    text = resources.files("square").joinpath("data/lexicon.tsv").read_text("utf-8")
    return read_lexicon(text.splitlines())


@lru_cache(maxsize=None)
def gazetteer() -> frozenset:
    text = resources.files("square").joinpath("data/names.txt").read_text("utf-8")
    return frozenset(
        line.strip().lower() for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )


def tokenize(sentence: str, lexicon: Lexicon | None = None) -> list[Token]:
    """Split a sentence into tagged tokens, merging phrasal verbs."""
    lex = lexicon or default_lexicon()
    words = _WORD.findall(sentence)
    if not words:
        raise EmptySentence("empty sentence")
    tokens: list[Token] = []
    i = 0
    while i < len(words):
        w = words[i]
        if w in ".?!,":
            tokens.append(Token(w, w, "."))
            i += 1
            continue
        low = w.lower()
        if i + 1 < len(words) and (low, words[i + 1].lower()) in lex.phrases:
            lemma, pos = lex.phrases[(low, words[i + 1].lower())]
            tokens.append(Token(f"{w}_{words[i + 1]}", lemma, pos))
            i += 2
            continue
        if low in ("left", "right") and tokens and tokens[-1].pos == "DT":
            tokens.append(Token(w, low, "NN"))
        elif low in lex.words:
            lemma, pos = lex.words[low]
            tokens.append(Token(w, lemma, pos))
        elif w[0].isupper():
            tokens.append(Token(w, low, "NNP"))
        else:
            tokens.append(Token(w, low, "NN"))
        i += 1
    return tokens


# ---------------------------------------------------------------------------
# Grammar

_NOUN = {"NN", "NNP"}
_VERB = {"VBD", "VBZ"}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    def peek(self, k=0) -> Token | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def fail(self, what: str):
        tok = self.peek()
        name = tok.text if tok else "<end>"
        raise UnsupportedSyntax(f"{what}; unexpected token {name!r}", tok)

    def leaf(self) -> ParseTree:
        tok = self.toks[self.i]
        self.i += 1
        return ParseTree.word(tok.pos, tok.text)

    def at_end(self) -> bool:
        tok = self.peek()
        return tok is None or (tok.pos == "." and self.i == len(self.toks) - 1)

    def starts_np(self) -> bool:
        tok = self.peek()
        if tok is None:
            return False
        if tok.pos in ("DT", "NN", "NNP"):
            return True
        if tok.pos == "JJ":
            j = 1
            while (nxt := self.peek(j)) is not None and nxt.pos == "JJ":
                j += 1
            return nxt is not None and nxt.pos in _NOUN
        return False

    def np(self) -> ParseTree:
        kids = []
        tok = self.peek()
        if tok is not None and tok.pos == "NNP":
            while (tok := self.peek()) is not None and tok.pos == "NNP":
                kids.append(self.leaf())
        else:
            if tok is not None and tok.pos == "DT":
                kids.append(self.leaf())
            while (tok := self.peek()) is not None and tok.pos == "JJ":
                kids.append(self.leaf())
            if (tok := self.peek()) is None or tok.pos != "NN":
                self.fail("expected a noun")
            while (tok := self.peek()) is not None and tok.pos == "NN":
                kids.append(self.leaf())
        base = ParseTree("NP", tuple(kids))
        tok = self.peek()
        if tok is not None and tok.lemma == "of" and self._np_follows(1):
            return ParseTree("NP", (base, self.pp()))
        return base

    def _np_follows(self, k) -> bool:
        save = self.i
        self.i += k
        try:
            return self.starts_np()
        finally:
            self.i = save

    def pp(self) -> ParseTree:
        head = self.leaf()
        if self.starts_np():
            return ParseTree("PP", (head, self.np()))
        return ParseTree("PP", (head,))

    def advp(self) -> ParseTree:
        head = self.leaf()
        tok = self.peek()
        if tok is not None and tok.pos in ("IN", "TO") and tok.lemma == "of":
            return ParseTree("ADVP", (head, self.pp()))
        return ParseTree("ADVP", (head,))

    def complements(self) -> list[ParseTree]:
        out = []
        while not self.at_end():
            tok = self.peek()
            if tok.pos in ("IN", "TO"):
                out.append(self.pp())
            elif tok.pos == "RB":
                out.append(self.advp())
            elif self.starts_np():
                out.append(self.np())
            elif tok.pos == "JJ":
                out.append(ParseTree("ADJP", (self.leaf(),)))
            else:
                self.fail("unsupported constituent")
        return out

    def verb(self) -> ParseTree:
        tok = self.peek()
        if tok is None or tok.pos not in _VERB:
            self.fail("expected a verb")
        return self.leaf()

    def punct(self) -> list[ParseTree]:
        tok = self.peek()
        if tok is None:
            return []
        if tok.pos != "." or self.i != len(self.toks) - 1:
            self.fail("trailing material")
        return [self.leaf()]

    def sentence(self) -> ParseTree:
        first = self.peek()
        if first is None:
            raise EmptySentence("no tokens")
        if first.pos in ("WRB", "WP"):
            wh = ParseTree("WHADVP" if first.pos == "WRB" else "WHNP", (self.leaf(),))
            v = self.verb()
            sq = ParseTree("SQ", (v, *self.complements()))
            return ParseTree("ROOT", (ParseTree("SBARQ", (wh, sq, *self.punct())),))
        if first.pos in _VERB:
            v = self.leaf()
            if not self.starts_np():
                self.fail("expected a subject")
            subj = self.np()
            rest = self.complements()
            return ParseTree("ROOT", (ParseTree("SQ", (v, subj, *rest, *self.punct())),))
        if not self.starts_np():
            self.fail("expected a subject noun phrase")
        subj = self.np()
        v = self.verb()
        vp = ParseTree("VP", (v, *self.complements()))
        return ParseTree("ROOT", (ParseTree("S", (subj, vp, *self.punct())),))


def parse_sentence(tokens: list[Token]) -> ParseTree:
    """Build a Penn-Treebank style constituency tree for ``tokens``."""
    if not tokens:
        raise EmptySentence("no tokens")
    return _Parser(list(tokens)).sentence()


def parse(sentence: str) -> ParseTree:
    return parse_sentence(tokenize(sentence))


def lemma_of(word: str, lexicon: Lexicon | None = None) -> str:
    """Lemma for a surface word as it appears in a tree leaf."""
    lex = lexicon or default_lexicon()
    low = word.lower()
    parts = tuple(low.split("_"))
    if len(parts) == 2 and parts in lex.phrases:
        return lex.phrases[parts][0]
    if low in lex.words:
        return lex.words[low][0]
    return low

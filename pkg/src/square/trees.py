"""Constituency trees and Penn-Treebank bracketed text."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import MalformedTree

PHRASE_TAGS = frozenset({
    "ROOT", "S", "SQ", "SBARQ", "NP", "VP", "PP", "ADVP", "ADJP", "WHADVP", "WHNP", "PRT",
})


@dataclass(frozen=True)
class ParseTree:
    label: str
    children: tuple = ()
    leaf_word: str | None = None

    @classmethod
    def leaf(cls, word: str) -> "ParseTree":
        return cls(word, (), word)

    @classmethod
    def word(cls, tag: str, word: str) -> "ParseTree":
        """A preterminal: word-level tag over one leaf."""
        return cls(tag, (cls.leaf(word),))

    @property
    def is_leaf(self) -> bool:
        return self.leaf_word is not None

    @property
    def is_preterminal(self) -> bool:
        return len(self.children) == 1 and self.children[0].is_leaf

    def leaves(self) -> list[str]:
        if self.is_leaf:
            return [self.leaf_word]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def preterminals(self) -> Iterator["ParseTree"]:
        if self.is_preterminal:
            yield self
            return
        for c in self.children:
            yield from c.preterminals()

    def subtrees(self) -> Iterator["ParseTree"]:
        yield self
        for c in self.children:
            yield from c.subtrees()

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def __str__(self):
        return write_bracketed(self)


def write_bracketed(tree: ParseTree) -> str:
    if tree.is_leaf:
        return tree.leaf_word
    return "(" + tree.label + "".join(" " + write_bracketed(c) for c in tree.children) + ")"


def read_bracketed(text: str) -> ParseTree:
    """Parse one bracketed s-expression; whitespace between tokens is free."""
    data = text.encode("utf-8")
    n = len(data)
    pos = 0

    def skip_ws(p):
        while p < n and data[p] in b" \t\r\n":
            p += 1
        return p

    def atom(p):
        start = p
        while p < n and data[p] not in b" \t\r\n()":
            p += 1
        return data[start:p].decode("utf-8"), p

    def node(p):
        # data[p] == "("
        open_at = p
        p = skip_ws(p + 1)
        if p >= n:
            raise MalformedTree("unexpected end of input", n)
        if data[p] == ord(")"):
            raise MalformedTree("empty node", open_at)
        if data[p] == ord("("):
            # unlabelled wrapper as in some treebank dumps
            label = ""
        else:
            label, p = atom(p)
        children = []
        while True:
            p = skip_ws(p)
            if p >= n:
                raise MalformedTree("unbalanced parentheses: unexpected end of input", n)
            ch = data[p]
            if ch == ord(")"):
                p += 1
                break
            if ch == ord("("):
                child, p = node(p)
                children.append(child)
            else:
                word, p = atom(p)
                children.append(ParseTree.leaf(word))
        if not children:
            raise MalformedTree(f"node {label!r} has no children", open_at)
        if not label:
            if len(children) != 1:
                raise MalformedTree("unlabelled node with several children", open_at)
            return ParseTree("ROOT", tuple(children)), p
        return ParseTree(label, tuple(children)), p

    pos = skip_ws(pos)
    if pos >= n:
        raise MalformedTree("empty input", pos)
    if data[pos] != ord("("):
        raise MalformedTree("expected '('", pos)
    tree, pos = node(pos)
    pos = skip_ws(pos)
    if pos != n:
        raise MalformedTree("trailing input after tree", pos)
    return tree


def read_bracketed_file(path) -> list[ParseTree]:
    with open(path, encoding="utf-8") as f:
        return [read_bracketed(line) for line in f if line.strip()]

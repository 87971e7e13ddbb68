import re

from .errors import EmptyPhrase
from .terms import Atom

THERE = Atom("there_ref")


def normalize_np(words) -> Atom:
    """Map noun-phrase words to a logic atom: ``["the", "milk"] -> the_milk``."""
    parts = []
    for w in words:
        text = getattr(w, "text", w)
        text = re.sub(r"[^\w]", "", text.lower())
        if text:
            parts.append(text)
    if not parts:
        raise EmptyPhrase("noun phrase has no words")
    return Atom("_".join(parts))


def bare(atom) -> str:
    """Answer rendering: drop a leading determiner."""
    name = str(atom)
    for det in ("the_", "a_", "an_"):
        if name.startswith(det):
            return name[len(det):]
    return name

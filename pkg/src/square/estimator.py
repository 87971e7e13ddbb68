"""Scikit-learn style wrapper around the question-answering pipeline.

Nothing is learned: ``fit`` loads and validates the frame lexicon and rule
sets, ``predict`` answers ``(story_sentences, question)`` pairs.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .babi import answer_question
from .errors import SquareError
from .reasoner import DEFAULT_MAX_DEPTH, Limits
from .rules import RULESET_NAMES, assemble_rulebase
from .verbnet import load_lexicon


def check_qa_pairs(X) -> list[tuple[list[str], str]]:
    """Validate a sequence of ``(story_sentences, question)`` pairs."""
    if isinstance(X, (str, bytes)):
        raise ValueError("expected a sequence of (story_sentences, question) pairs, got a string")
    try:
        items = list(X)
    except TypeError:
        raise ValueError("expected a sequence of (story_sentences, question) pairs") from None
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, (tuple, list)) or len(item) != 2:
            raise ValueError(f"sample {i}: expected a (story_sentences, question) pair")
        story, question = item
        if isinstance(story, str) or not all(isinstance(s, str) for s in story):
            raise ValueError(f"sample {i}: story must be a sequence of sentence strings")
        if not isinstance(question, str) or not question.strip():
            raise ValueError(f"sample {i}: question must be a non-empty string")
        out.append((list(story), question))
    return out


class SquareQA(BaseEstimator):
    """Answer bAbI-style questions about short stories.

    Parameters
    ----------
    task_tags : tuple of str
        Rule sets loaded after ``core``; any of ``directions``, ``positional``.
    max_depth : int
        Resolution depth limit.
    frames_path : str or None
        Frame lexicon file; None uses the bundled one.
    error_answer : str or None
        Returned for questions the pipeline cannot answer; None re-raises.
    """

    def __init__(self, task_tags=("directions", "positional"), max_depth=DEFAULT_MAX_DEPTH,
                 frames_path=None, error_answer=""):
        self.task_tags = task_tags
        self.max_depth = max_depth
        self.frames_path = frames_path
        self.error_answer = error_answer

    def fit(self, X=None, y=None):
        if X is not None:
            pairs = check_qa_pairs(X)
            if y is not None and len(y) != len(pairs):
                raise ValueError(f"X has {len(pairs)} samples but y has {len(y)}")
        tags = tuple(self.task_tags or ())
        self.lexicon_ = load_lexicon(self.frames_path)
        self.rules_ = assemble_rulebase(tags)
        self.tags_ = tags
        self.n_rules_ = len(self.rules_)
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "rules_")
        limits = Limits(max_depth=self.max_depth)
        out = []
        for story, question in check_qa_pairs(X):
            try:
                answer, _ = answer_question(story, question, self.tags_, limits, self.lexicon_)
            except SquareError:
                if self.error_answer is None:
                    raise
                answer = self.error_answer
            out.append(answer)
        return np.array(out, dtype=object)

    def score(self, X, y) -> float:
        """Fraction of exact (whitespace-trimmed) matches with the gold answers."""
        pred = self.predict(X)
        gold = [str(a).strip() for a in y]
        if len(gold) != len(pred):
            raise ValueError(f"X has {len(pred)} samples but y has {len(gold)}")
        if not gold:
            return 0.0
        return float(np.mean([p.strip() == g for p, g in zip(pred, gold)]))

    @staticmethod
    def known_rule_sets():
        return RULESET_NAMES

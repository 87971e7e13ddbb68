"""Symbolic question answering over short stories.

Sentences are parsed into constituency trees, matched against verb frames to
produce timestamped event facts, and questions are answered by goal-directed
resolution over those facts and a small set of commonsense rules.
"""
from .babi import EvalReport, QAItem, Story, answer_question, evaluate, read_babi
from .errors import SquareError
from .estimator import SquareQA
from .knowledge import StoryProgram, resolve_anaphora, translate_passage
from .matcher import get_sentence_semantics, get_thematic_roles
from .oracle import oracle_simulate
from .parsing import parse, tokenize
from .questions import classify_question, extract_answer, generate_query
from .reasoner import JustificationNode, Query, render_justification, solve
from .rules import assemble_rulebase, translate_copular
from .trees import ParseTree, read_bracketed, write_bracketed
from .verbnet import load_lexicon

__version__ = "0.1.0"

__all__ = [
    "EvalReport", "JustificationNode", "ParseTree", "QAItem", "Query", "SquareError", "SquareQA",
    "Story", "StoryProgram", "answer_question", "assemble_rulebase", "classify_question",
    "evaluate", "extract_answer", "generate_query", "get_sentence_semantics",
    "get_thematic_roles", "load_lexicon", "oracle_simulate", "parse", "read_babi",
    "read_bracketed", "render_justification", "resolve_anaphora", "solve", "tokenize",
    "translate_copular", "translate_passage", "write_bracketed",
]

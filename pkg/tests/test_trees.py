import pytest
from hypothesis import given, strategies as st

from square.errors import MalformedTree
from square.parsing import parse
from square.trees import ParseTree, read_bracketed, read_bracketed_file, write_bracketed

MILK_TREE = ("(ROOT (S (NP (NNP Mary)) (VP (VBD discarded) (NP (DT the) (NN milk)) "
             "(ADVP (RB there))) (. .)))")


def test_parse_of_discard_sentence():
    assert write_bracketed(parse("Mary discarded the milk there.")) == MILK_TREE


def test_read_write_identity():
    assert write_bracketed(read_bracketed(MILK_TREE)) == MILK_TREE


def test_reader_tolerates_layout():
    spaced = MILK_TREE.replace(" (", "\n   (")
    assert write_bracketed(read_bracketed(spaced)) == MILK_TREE


def test_unlabelled_wrapper_becomes_root():
    t = read_bracketed("( (S (NP (NNP Mary)) (VP (VBD went))) )")
    assert t.label == "ROOT"
    assert t.children[0].label == "S"


def test_tree_queries():
    t = read_bracketed(MILK_TREE)
    assert t.leaves() == ["Mary", "discarded", "the", "milk", "there", "."]
    assert [p.label for p in t.preterminals()] == ["NNP", "VBD", "DT", "NN", "RB", "."]
    assert t.depth() == 6       # ROOT S VP NP DT the


@pytest.mark.parametrize("text", ["", "(S (NP", "(S (NP x)))", "(S ())", "(S (NP x)) junk"])
def test_malformed(text):
    with pytest.raises(MalformedTree):
        read_bracketed(text)


def test_malformed_reports_offset():
    with pytest.raises(MalformedTree) as err:
        read_bracketed("(S (NP x)))")
    assert err.value.offset == 10


def test_read_file_of_trees(tmp_path):
    p = tmp_path / "trees.txt"
    p.write_text(MILK_TREE + "\n\n" + MILK_TREE + "\n")
    assert len(read_bracketed_file(p)) == 2


labels = st.sampled_from(["S", "NP", "VP", "PP", "ADVP"])
tags = st.sampled_from(["NN", "NNP", "DT", "VBD", "IN"])
words = st.from_regex(r"[A-Za-z][a-z]{0,6}", fullmatch=True)
preterminals = st.tuples(tags, words).map(lambda p: ParseTree.word(*p))
trees = st.recursive(
    preterminals,
    lambda kids: st.tuples(labels, st.lists(kids, min_size=1, max_size=3))
    .map(lambda p: ParseTree(p[0], tuple(p[1]))),
    max_leaves=10,
)


@given(trees)
def test_round_trip_property(tree):
    text = write_bracketed(tree)
    assert read_bracketed(text) == tree
    assert write_bracketed(read_bracketed(text)) == text

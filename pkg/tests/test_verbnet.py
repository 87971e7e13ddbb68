import pytest

from square.errors import FrameFileError, UnknownPrimitive
from square.verbnet import default_frames, get_vn_classes, get_vn_frames, read_frames

SMALL = """
primitives: motion path_rel cause
class run-51.3.2
  members: run walk
  frame NP V PP.Destination
    pattern: NP:Theme V PREP{to} NP:Destination
    sem: motion(during(E0), Theme)
    sem: path_rel(end(E0), Theme, Destination, ch_of_loc, prep)
"""


def test_bundled_lexicon_covers_benchmark_verbs():
    lex = default_frames()
    for lemma in ["move", "go", "journey", "travel", "get", "grab", "take", "pick_up",
                  "drop", "discard", "put_down", "leave", "give"]:
        assert get_vn_classes(lex, lemma), lemma
    assert get_vn_classes(lex, "be") == []


def test_discard_frame_roles_and_semantics():
    lex = default_frames()
    (cls,) = get_vn_classes(lex, "toss")
    assert cls.class_id == "discard-10.1"
    (frame,) = get_vn_frames(lex, cls)
    assert [str(e) for e in frame.pattern] == ["NP:Agent", "V", "NP:Theme", "PREP{in,into,on,to}", "NP:Destination"]
    assert len(frame.semantics) == 9
    assert sum(t.negated for t in frame.semantics) == 1


def test_read_small_file():
    lex = read_frames(SMALL.splitlines())
    (cls,) = lex.get_vn_classes("walk")
    assert cls.frames[0].pattern_roles() == ["Theme", "Destination"]
    assert cls.frames[0].semantics[1].phase == ("end", "E0")


def test_unknown_primitive_reports_line():
    text = SMALL.replace("sem: motion", "sem: teleport")
    with pytest.raises(UnknownPrimitive) as err:
        read_frames(text.splitlines())
    assert err.value.line == 7


@pytest.mark.parametrize("edit", [
    ("  members: run walk\n", "  members:\n"),
    ("pattern: NP:Theme V", "pattern: NP:Theme"),
    ("pattern: NP:Theme V", "pattern: NP:Theme V V"),
    ("sem: motion(during(E0), Theme)", "sem: motion(during(E0), Agent)"),
    ("class run-51.3.2\n", "class run-51.3.2\n  members: go\nclass run-51.3.2\n"),
])
def test_malformed_frame_files(edit):
    with pytest.raises(FrameFileError):
        read_frames(SMALL.replace(*edit).splitlines())


def test_class_without_frames():
    with pytest.raises(FrameFileError):
        read_frames(["primitives: motion", "class x-1", "  members: x"])

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from square import SquareQA
from square.errors import NoAnswer

STORY = ["Mary got the milk there.", "John moved to the bedroom.", "Mary travelled to the hallway."]
X = [(STORY, "Where is the milk?"), (STORY, "Where is John?"), (STORY[:1], "Where is the milk?")]
Y = ["hallway", "bedroom", "hallway"]


def test_params_and_clone():
    est = SquareQA(max_depth=500)
    assert est.get_params()["max_depth"] == 500
    copy = clone(est.set_params(error_answer="?"))
    assert copy.get_params()["error_answer"] == "?"
    assert not hasattr(copy, "rules_")


def test_fit_predict_score():
    est = SquareQA().fit(X, Y)
    assert est.n_rules_ == len(est.rules_)
    pred = est.predict(X)
    assert isinstance(pred, np.ndarray) and pred.dtype == object
    assert list(pred) == ["hallway", "bedroom", ""]
    assert est.score(X, Y) == pytest.approx(2 / 3)


def test_error_answer_none_reraises():
    est = SquareQA(error_answer=None).fit()
    with pytest.raises(NoAnswer):
        est.predict([(STORY[:1], "Where is the milk?")])


def test_task_tags_limit_rules():
    core = SquareQA(task_tags=()).fit()
    full = SquareQA().fit()
    assert core.n_rules_ < full.n_rules_
    assert core.predict([(["The office is north of the bedroom."], "What is north of the bedroom?")])[0] == ""
    assert full.predict([(["The office is north of the bedroom."], "What is north of the bedroom?")])[0] == "office"


def test_not_fitted():
    with pytest.raises(NotFittedError):
        SquareQA().predict(X)


@pytest.mark.parametrize("bad", ["a story", [("just one",)], [("a sentence", "Where?")],
                                 [(["a"], "")], 42])
def test_input_validation(bad):
    with pytest.raises(ValueError):
        SquareQA().fit().predict(bad)


def test_length_mismatch():
    with pytest.raises(ValueError):
        SquareQA().fit(X, Y[:2])
    with pytest.raises(ValueError):
        SquareQA().fit().score(X, Y[:2])

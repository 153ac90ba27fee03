import json

import pytest
from hypothesis import given, strategies as st

from cnlogic import io
from cnlogic.errors import ModelFormatError
from cnlogic.lab import ModelSpec, builtin_comparison, builtin_ellsberg, builtin_lottery, random_cn_model, random_weight_model


def models():
    spec = st.tuples(st.integers(1, 6), st.integers(1, 2), st.integers(1, 4), st.integers(0, 10**6))
    cn = spec.map(lambda t: random_cn_model(ModelSpec(t[0], t[1], t[2], ("p", "q")), t[3]))
    weight = spec.map(lambda t: random_weight_model(ModelSpec(t[0], t[1], t[2], ("p", "q")), t[3]))
    return st.one_of(cn, weight)


@given(models())
def test_round_trip(m):
    text = io.model_dumps(m)
    back = io.model_loads(text)
    assert back == m
    assert io.model_dumps(back) == text


@pytest.mark.parametrize("m", [builtin_ellsberg(), builtin_lottery(5, 2, "11/2"), *builtin_comparison()])
def test_builtin_round_trip(m, tmp_path):
    path = tmp_path / "m.json"
    io.save_model(m, path)
    assert io.load_model(path) == m
    assert path.read_text().endswith("}\n")


def test_weights_are_written_as_fractions():
    doc = io.model_to_dict(builtin_lottery(3, 0, "5/2"))
    assert doc["weights"]["a"] == {"0": "5/2", "1": "1/1", "2": "1/1"}


def _weight_doc(value):
    doc = io.model_to_dict(builtin_lottery(2))
    doc["weights"]["a"]["0"] = value
    return doc


@pytest.mark.parametrize("value", ["0.5", 0.5, "1e3", "1/0", "abc", None, True])
def test_inexact_weights_rejected(value):
    with pytest.raises(ModelFormatError):
        io.model_from_dict(_weight_doc(value))


def test_integer_and_signed_weights_parse():
    assert io.model_from_dict(_weight_doc(3)).weights["a"]["0"] == 3
    assert io.model_from_dict(_weight_doc("-2/4")).weights["a"]["0"] == -0.5


@pytest.mark.parametrize("mutate, message", [
    (lambda d: d.pop("worlds"), "worlds"),
    (lambda d: d["valuation"].update(Gr=["purple"]), "purple"),
    (lambda d: d.update(worlds=["red", "red", "yellow", "blue"]), "distinct"),
    (lambda d: d.pop("neighbourhoods"), "kind"),
    (lambda d: d["neighbourhoods"].pop("a"), "agent"),
])
def test_malformed_models(mutate, message):
    doc = io.model_to_dict(builtin_ellsberg())
    mutate(doc)
    with pytest.raises(ModelFormatError) as err:
        io.model_from_dict(doc)
    assert message in str(err.value)


def test_invalid_json_and_missing_file(tmp_path):
    with pytest.raises(ModelFormatError):
        io.model_loads("{not json")
    with pytest.raises(ModelFormatError):
        io.model_loads("[]")
    with pytest.raises(ModelFormatError):
        io.load_model(tmp_path / "missing.json")


def test_canonical_output():
    a = io.model_dumps(builtin_ellsberg())
    doc = json.loads(a)
    assert io.dumps(doc) == a
    assert list(doc) == sorted(doc)

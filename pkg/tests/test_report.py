from __future__ import annotations

import json
from fractions import Fraction as Q

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagx import report
from flagx.extremality import Verdict

rationals = st.fractions(max_denominator=10**6)
floats = st.floats(allow_nan=False, allow_infinity=False)
leaves = st.one_of(rationals, floats, st.integers(-10**12, 10**12), st.booleans(), st.none(), st.text(max_size=8))
trees = st.recursive(
    leaves,
    lambda c: st.one_of(st.lists(c, max_size=4), st.dictionaries(st.text(max_size=5), c, max_size=4)),
    max_leaves=20,
)


def decode(encoded, original):
    if isinstance(original, Q):
        return report.parse_rational(encoded)
    if isinstance(original, dict):
        return {k: decode(encoded[k], v) for k, v in original.items()}
    if isinstance(original, list):
        return [decode(e, o) for e, o in zip(encoded, original)]
    return encoded


@given(trees)
def test_roundtrip_lossless(tree):
    text = report.dumps(tree)
    assert json.loads(text) == report.encode(tree)
    assert decode(report.loads(text), tree) == tree


@given(floats)
def test_float_format(x):
    text = report.format_float(x)
    assert float(text) == x
    assert json.loads(text) == x
    assert isinstance(json.loads(text), float)


def test_encode_types():
    assert report.encode(Q(-3, 4)) == "-3/4"
    assert report.encode(Q(5)) == "5"
    assert report.encode(np.int64(3)) == 3
    assert report.encode(np.float64(0.5)) == 0.5
    assert report.encode(Verdict.EXTREMAL) == "EXTREMAL"
    assert report.encode(np.array([[Q(1, 2)]], dtype=object)) == [["1/2"]]
    with pytest.raises(TypeError):
        report.encode(object())
    with pytest.raises(ValueError):
        report.format_float(float("nan"))


def test_dumps_layout():
    text = report.dumps({"a": [Q(1, 2), 1.0], "b": {"c": []}, "d": [[1, 2], [3]]})
    assert text == (
        '{\n  "a": ["1/2", 1.0],\n  "b": {\n    "c": []\n  },\n'
        '  "d": [\n    [1, 2],\n    [3]\n  ]\n}\n'
    )


def test_table():
    text = report.table(["x", "value"], [[1, Q(1, 3)], [22, (1, 2)]])
    assert text.splitlines() == ["x   value", "--  ------", "1   1/3", "22  (1, 2)"]
    assert report.key_values([("a", None), ("bb", 0.5)]) == "a   -\nbb  0.5"

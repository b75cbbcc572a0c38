import json

import pytest
from hypothesis import given, strategies as st

from pathkit.report import SCHEMA, CheckReport

texts = st.text(max_size=20)
reports = st.builds(
    CheckReport,
    law=st.sampled_from(["groupoid", "pentagon"]),
    samples=st.integers(0, 1000),
    seed=st.integers(-5, 10**6),
    depth=st.integers(1, 9),
    failures=st.lists(st.tuples(texts, texts, texts), max_size=3),
    oracle_verdicts=st.fixed_dictionaries({"confirmed": st.integers(0, 9), "unknown": st.integers(0, 9)}),
    stats=st.dictionaries(st.sampled_from(["max_steps", "total_steps"]), st.integers(0, 99)),
    elapsed=st.none() | st.floats(0, 1e6).map(lambda x: round(x, 3)),
)


@given(reports)
def test_json_round_trip(r):
    assert CheckReport.from_json(r.to_json()) == r


@given(reports)
def test_pass_iff_no_failures(r):
    assert r.passed == (not r.failures)
    assert json.loads(r.to_json())["pass"] == r.passed


def test_stable_key_order_and_schema():
    r = CheckReport("groupoid", 3, 1, 2, elapsed=12.5)
    d = json.loads(r.to_json(timing=False))
    assert list(d) == sorted(d)
    assert d["schema"] == SCHEMA and d["elapsed_ms"] is None
    assert json.loads(r.to_json())["elapsed_ms"] == 12.5


def test_merge():
    a = CheckReport("groupoid", 2, 1, 3, failures=[("b", "x", "y")], stats={"max_steps": 4, "total_steps": 5})
    b = CheckReport("groupoid", 3, 1, 3, failures=[("a", "x", "y")], stats={"max_steps": 2, "total_steps": 1})
    b.note_oracle("unknown")
    m = a.merge(b)
    assert m.samples == 5
    assert m.failures == [("a", "x", "y"), ("b", "x", "y")]
    assert m.stats == {"max_steps": 4, "total_steps": 6}
    assert m.unknown == 1


def test_merge_rejects_other_campaign():
    with pytest.raises(ValueError):
        CheckReport("groupoid", 1, 1, 3).merge(CheckReport("pentagon", 1, 1, 3))


def test_schema_check():
    with pytest.raises(ValueError):
        CheckReport.from_dict({"schema": "other/9"})

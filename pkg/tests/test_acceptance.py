"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for just the summary lines.
"""

import io
import json
import os
import sys
import time
from contextlib import contextmanager

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from pathkit.campaigns import CampaignConfig, run_campaign  # noqa: E402
from pathkit.cli import main  # noqa: E402
from pathkit.path import BetaStep, Rho, Sigma, Tau  # noqa: E402
from pathkit.rewrite import rw_apply  # noqa: E402
from pathkit.term import parse_term  # noqa: E402
from pathkit.twocell import infer_sequence, oracle_verdict, rw2_eq  # noqa: E402


@contextmanager
def criterion(number: int, title: str, limit_s: float, capsys=None):
    started = time.perf_counter()
    state = {"ok": False, "detail": ""}
    try:
        yield state
    finally:
        took = time.perf_counter() - started
        ok = state["ok"] and took < limit_s
        detail = state["detail"] + ("" if took < limit_s else f" over time limit {limit_s:g}s")
        line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} {title} ({took:.2f}s){' ' + detail if detail else ''}"
        if capsys is not None:
            with capsys.disabled():
                print("\n" + line)
        else:
            print(line)
        state["line"] = line
        state["took"] = took


def _run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue()


def check_1(state):
    code, out = _run_cli("path", r"(\y.y x)(\w.z w)", "z x", "--style", "paper")
    want = "τ(η((λy.yx)(λw.zw),(λy.yx)z),β((λy.yx)z,zx))"
    state["ok"] = code == 0 and "".join(out.split()) == want
    state["detail"] = out.strip()


def check_2(state):
    a, b = parse_term(r"(\x.x) z"), parse_term("z")
    r = BetaStep(a)
    t, s = Sigma(r), Rho(b)
    table = [
        ("sr", Sigma(Rho(a)), Rho(a)),
        ("ss", Sigma(Sigma(r)), r),
        ("tr", Tau(r, Sigma(r)), Rho(a)),
        ("tsr", Tau(Sigma(r), r), Rho(b)),
        ("trr", Tau(r, Rho(b)), r),
        ("tlr", Tau(Rho(a), r), r),
        ("tt", Tau(Tau(t, r), s), Tau(t, Tau(r, s))),
    ]
    bad = [name for name, lhs, rhs in table if rw_apply(lhs, (), name) != rhs]
    state["ok"] = not bad
    state["detail"] = f"7 golden rules, mismatches: {bad or 'none'}"


def _campaign(state, **kw):
    report = run_campaign(CampaignConfig(**kw))
    state["ok"] = report.passed and report.unknown == 0
    state["detail"] = report.summary() + (f" stats={report.stats}" if report.stats else "")
    if report.failures:
        state["detail"] += f" first failure: {report.failures[0][0]}"
    return report


def check_3(state):
    _campaign(state, law="groupoid", samples=1000, seed=0, depth=6)


def check_4(state):
    _campaign(state, law="termination", samples=10_000, seed=0, depth=8, fuel=100_000)


def check_5(state):
    _campaign(state, law="confluence", samples=500, seed=0, strategies=20)


def check_6(state):
    a, b = parse_term(r"(\x.x) z"), parse_term("z")
    r = BetaStep(a)
    s, s1 = Tau(r, Rho(b)), r
    t, t1 = Sigma(Sigma(Sigma(r))), Sigma(r)
    left = infer_sequence([Tau(s, t), Tau(s1, t), Tau(s1, t1)])
    right = infer_sequence([Tau(s, t), Tau(s, t1), Tau(s1, t1)])
    canonical = rw2_eq(left, right, "canonical")
    verdict = oracle_verdict(left, right)
    state["ok"] = canonical and verdict == "equal"
    state["detail"] = f"canonical={canonical} oracle={verdict}"


def check_7(state):
    _campaign(state, law="interchange", samples=200, seed=0, oracle_subsample=20, oracle_cap=50_000)


def check_8(state):
    parts = []
    ok = True
    for law in ("pentagon", "triangle"):
        report = run_campaign(CampaignConfig(law=law, samples=100, seed=0, oracle_subsample=10))
        ok = ok and report.passed and report.unknown == 0 and report.oracle_verdicts["confirmed"] == 10
        parts.append(report.summary())
    state["ok"] = ok
    state["detail"] = "; ".join(parts)


def check_9(state):
    _campaign(state, law="equivalence", samples=1000, seed=0)


CRITERIA = [
    (1, "worked example path in lambda notation", 1.0, check_1),
    (2, "rule table conformance", 1.0, check_2),
    (3, "weak groupoid laws on 1000 composable triples", 60.0, check_3),
    (4, "termination on 10000 paths at depth 8", 120.0, check_4),
    (5, "confluence on 500 paths under 20 random strategies", 120.0, check_5),
    (6, "cd2 worked example (canonical and oracle)", 1.0, check_6),
    (7, "interchange on 200 quadruples with 20 oracle checks", 60.0, check_7),
    (8, "pentagon and triangle on 100 tuples each", 60.0, check_8),
    (9, "rw_eq is an equivalence on 1000 connected triples", 60.0, check_9),
]


@pytest.mark.parametrize("number, title, limit, check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, limit, check, capsys):
    with criterion(number, title, limit, capsys) as state:
        check(state)
    assert state["ok"], state["detail"]
    assert state["took"] < limit, state["line"]


if __name__ == "__main__":
    failed = 0
    for number, title, limit, check in CRITERIA:
        with criterion(number, title, limit) as state:
            check(state)
        failed += "FAIL" in state["line"]
    sys.exit(1 if failed else 0)

"""Rw-sequences as 2-cells between parallel paths.

A 2-cell is a list of paths ``R0 … Rn`` together with the rewrite step that
links each neighbouring pair.  Vertical composition is concatenation,
reversal flips the list, and the identity 2-cell is a single entry, so the
groupoid laws between 2-cells hold on the nose.

Equality of 2-cells is layered.  :func:`cd2_canonicalize` cancels adjacent
inverse steps and sorts independent steps (first component of a ``τ`` before
the second); :func:`oracle_verdict` runs a bounded breadth-first search over
single moves and is used as a referee.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    EndpointDrift,
    Incomposable,
    JunctionMismatch,
    NoMatch,
    OracleBudgetExhausted,
    ShapeMismatch,
    StepMismatch,
)
from .path import Path, Rho, Tau, ends, replace_subpath, show_path, subpath_at
from .report import CheckReport
from .rewrite import (
    FORWARD,
    GROUPOID_RULES,
    REVERSE,
    Redex,
    RwRule,
    RwStepRecord,
    rw_apply,
    rw_redexes,
    step,
)

DEFAULT_ORACLE_CAP = 50_000
MAX_TILE_LENGTH = 3

ASSOC = "assoc"
LEFT_UNIT = "left_unit"
RIGHT_UNIT = "right_unit"
COHERENCE_KINDS = (ASSOC, LEFT_UNIT, RIGHT_UNIT)


@dataclass(frozen=True)
class RwSequence:
    entries: tuple[Path, ...]
    steps: tuple[RwStepRecord, ...] = ()

    def __post_init__(self):
        if not self.entries:
            raise ValueError("an rw-sequence needs at least one entry")
        if len(self.steps) != len(self.entries) - 1:
            raise ValueError("need exactly one step between neighbouring entries")

    @property
    def first(self) -> Path:
        return self.entries[0]

    @property
    def last(self) -> Path:
        return self.entries[-1]

    @property
    def endpoints(self):
        return ends(self.entries[0])

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def key(self):
        return (self.entries, tuple(s.signature for s in self.steps))

    def same_as(self, other: "RwSequence") -> bool:
        return self.key == other.key

    def show(self) -> str:
        parts = [show_path(self.entries[0])]
        for s, e in zip(self.steps, self.entries[1:]):
            arrow = "▷" if s.direction == FORWARD else "◁"
            where = ".".join(s.position) or "root"
            parts.append(f" {arrow}{s.rule}@{where} {show_path(e)}")
        return "".join(parts)


def identity(p: Path) -> RwSequence:
    return RwSequence((p,), ())


def _check_steps(entries: Sequence[Path], steps: Sequence[RwStepRecord], rules: Sequence[RwRule]) -> None:
    if len(steps) != len(entries) - 1:
        raise ValueError("need exactly one step between neighbouring entries")
    e0 = ends(entries[0])
    for i, e in enumerate(entries):
        if ends(e) != e0:
            raise EndpointDrift(f"entry {i} has endpoints different from entry 0")
    for i, s in enumerate(steps):
        if s.before != entries[i] or s.after != entries[i + 1]:
            raise StepMismatch(i, (entries[i], entries[i + 1]), (s.before, s.after))
        try:
            if s.direction == FORWARD:
                got = rw_apply(s.before, s.position, s.rule, rules)
                if got != s.after:
                    raise StepMismatch(i, s.after, got)
            elif s.direction == REVERSE:
                got = rw_apply(s.after, s.position, s.rule, rules)
                if got != s.before:
                    raise StepMismatch(i, s.before, got)
            else:
                raise StepMismatch(i, "forward|reverse", s.direction)
        except NoMatch as exc:
            raise StepMismatch(i, f"{s.rule} at {s.position}", str(exc)) from None


def mk_sequence(
    entries: Sequence[Path], steps: Sequence[RwStepRecord], rules: Sequence[RwRule] = GROUPOID_RULES
) -> RwSequence:
    """Validated rw-sequence: every step is replayed against its rule."""
    _check_steps(entries, steps, rules)
    return RwSequence(tuple(entries), tuple(steps))


def connecting_step(a: Path, b: Path, rules: Sequence[RwRule] = GROUPOID_RULES) -> RwStepRecord | None:
    """A single rewrite step (either direction) turning ``a`` into ``b``."""
    for pos, rule in rw_redexes(a, rules):
        if rw_apply(a, pos, rule, rules) == b:
            return RwStepRecord(pos, rule, FORWARD, a, b)
    for pos, rule in rw_redexes(b, rules):
        if rw_apply(b, pos, rule, rules) == a:
            return RwStepRecord(pos, rule, REVERSE, a, b)
    return None


def infer_sequence(entries: Sequence[Path], rules: Sequence[RwRule] = GROUPOID_RULES) -> RwSequence:
    """Build a 2-cell from its entries alone, recovering each step."""
    steps = []
    for i in range(len(entries) - 1):
        s = connecting_step(entries[i], entries[i + 1], rules)
        if s is None:
            raise StepMismatch(i, "an rw-step", "no single step connects these entries")
        steps.append(s)
    return mk_sequence(entries, steps, rules)


def from_trace(start: Path, trace: Sequence[RwStepRecord]) -> RwSequence:
    return RwSequence((start,) + tuple(s.after for s in trace), tuple(trace))


# ---------------------------------------------------------------------------
# strict groupoid structure

def vcomp(a: RwSequence, b: RwSequence) -> RwSequence:
    if a.last != b.first:
        raise JunctionMismatch("last entry of the first cell is not the first entry of the second")
    return RwSequence(a.entries + b.entries[1:], a.steps + b.steps)


def reverse2(a: RwSequence) -> RwSequence:
    return RwSequence(tuple(reversed(a.entries)), tuple(s.flipped() for s in reversed(a.steps)))


def _reroot(s: RwStepRecord, side: str, other: Path) -> RwStepRecord:
    if side == "first":
        return RwStepRecord(("first",) + s.position, s.rule, s.direction, Tau(s.before, other), Tau(s.after, other))
    return RwStepRecord(("second",) + s.position, s.rule, s.direction, Tau(other, s.before), Tau(other, s.after))


def hcomp(alpha: RwSequence, theta: RwSequence) -> RwSequence:
    """Horizontal composite: develop ``alpha`` inside ``τ(-, θ1)``, then ``theta`` inside ``τ(αn, -)``."""
    if ends(alpha.first)[1] != ends(theta.first)[0]:
        raise Incomposable("target of the left cell's paths is not the source of the right cell's")
    t1, an = theta.first, alpha.last
    entries = [Tau(x, t1) for x in alpha.entries] + [Tau(an, y) for y in theta.entries[1:]]
    steps = [_reroot(s, "first", t1) for s in alpha.steps] + [_reroot(s, "second", an) for s in theta.steps]
    return RwSequence(tuple(entries), tuple(steps))


# ---------------------------------------------------------------------------
# canonical forms (cd2 + inverse cancellation)

def disjoint(p: Sequence[str], q: Sequence[str]) -> bool:
    n = min(len(p), len(q))
    return tuple(p[:n]) != tuple(q[:n])


def _left_of(p: Sequence[str], q: Sequence[str]) -> bool:
    """For disjoint positions: does ``p`` lie in an earlier ``τ`` component than ``q``?"""
    for a, b in zip(p, q):
        if a != b:
            return a == "first"
    return False


def _is_inverse_pair(entries: Sequence[Path], steps: Sequence[RwStepRecord], i: int) -> bool:
    a, b = steps[i], steps[i + 1]
    return (
        a.position == b.position
        and a.rule == b.rule
        and a.direction != b.direction
        and entries[i] == entries[i + 2]
    )


def _swap(entries: list[Path], steps: list[RwStepRecord], i: int) -> None:
    """Exchange independent steps ``i`` and ``i+1`` in place."""
    a, b = steps[i], steps[i + 1]
    start, end = entries[i], entries[i + 2]
    mid = replace_subpath(start, b.position, subpath_at(end, b.position))
    steps[i] = RwStepRecord(b.position, b.rule, b.direction, start, mid)
    steps[i + 1] = RwStepRecord(a.position, a.rule, a.direction, mid, end)
    entries[i + 1] = mid


def _cancel(entries: list[Path], steps: list[RwStepRecord], i: int) -> None:
    del steps[i : i + 2]
    del entries[i + 1 : i + 3]


def cd2_canonicalize(a: RwSequence) -> RwSequence:
    entries, steps = list(a.entries), list(a.steps)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(steps) - 1:
            if _is_inverse_pair(entries, steps, i):
                _cancel(entries, steps, i)
                changed = True
                i = max(i - 1, 0)
            else:
                i += 1
        for i in range(len(steps) - 1):
            p, q = steps[i].position, steps[i + 1].position
            if disjoint(p, q) and _left_of(q, p):
                _swap(entries, steps, i)
                changed = True
    return RwSequence(tuple(entries), tuple(steps))


# ---------------------------------------------------------------------------
# breadth-first oracle

class _Oracle:
    def __init__(self, rules: Sequence[RwRule]):
        self.rules = rules
        self._reductions: dict[Path, list[list[RwStepRecord]]] = {}

    def reductions(self, x: Path) -> list[list[RwStepRecord]]:
        """Forward rewrite sequences out of ``x`` of length 1..MAX_TILE_LENGTH."""
        got = self._reductions.get(x)
        if got is not None:
            return got
        out: list[list[RwStepRecord]] = []
        frontier: list[list[RwStepRecord]] = [[]]
        for _ in range(MAX_TILE_LENGTH):
            nxt = []
            for seq in frontier:
                cur = seq[-1].after if seq else x
                for redex in rw_redexes(cur, self.rules):
                    ext = seq + [step(cur, redex, self.rules)]
                    out.append(ext)
                    nxt.append(ext)
            frontier = nxt
        self._reductions[x] = out
        return out

    def moves(self, entries: tuple[Path, ...], steps: tuple[RwStepRecord, ...], phase: int, max_len: int):
        n = len(steps)
        for i in range(n - 1):
            if disjoint(steps[i].position, steps[i + 1].position):
                e, s = list(entries), list(steps)
                _swap(e, s, i)
                yield tuple(e), tuple(s)
            if _is_inverse_pair(entries, steps, i):
                e, s = list(entries), list(steps)
                _cancel(e, s, i)
                yield tuple(e), tuple(s)
        if phase >= 2:
            yield from self._tiles(entries, steps, max_len)
        if phase >= 3 and n + 2 <= max_len:
            for k, x in enumerate(entries):
                for redex in rw_redexes(x, self.rules):
                    fwd = step(x, redex, self.rules)
                    e = entries[: k + 1] + (fwd.after, x) + entries[k + 1 :]
                    s = steps[:k] + (fwd, fwd.flipped()) + steps[k:]
                    yield e, s

    def _tiles(self, entries, steps, max_len):
        """Swap one side of a critical branching for the other side."""
        n = len(steps)
        for i in range(n):
            for j in range(i + 1, min(n, i + MAX_TILE_LENGTH) + 1):
                window = steps[i:j]
                direction = window[0].direction
                if any(s.direction != direction for s in window):
                    break
                if direction == FORWARD:
                    x, y, lead = entries[i], entries[j], window[0]
                else:
                    x, y, lead = entries[j], entries[i], window[-1].flipped()
                for alt in self.reductions(x):
                    if alt[-1].after != y:
                        continue
                    first = alt[0]
                    if (first.position, first.rule) == (lead.position, lead.rule):
                        continue
                    if disjoint(first.position, lead.position):
                        continue
                    if n - (j - i) + len(alt) > max_len:
                        continue
                    if direction == FORWARD:
                        mid_steps = tuple(alt)
                        mid_entries = tuple(s.after for s in alt[:-1])
                    else:
                        mid_steps = tuple(s.flipped() for s in reversed(alt))
                        mid_entries = tuple(s.before for s in reversed(alt[1:]))
                    yield (
                        entries[: i + 1] + mid_entries + entries[j:],
                        steps[:i] + mid_steps + steps[j:],
                    )


def oracle_verdict(
    a: RwSequence,
    b: RwSequence,
    cap: int = DEFAULT_ORACLE_CAP,
    rules: Sequence[RwRule] = GROUPOID_RULES,
) -> str:
    """``"equal"``, ``"different"`` or ``"unknown"`` (node cap reached).

    Moves, in widening phases: (1) swaps of independent neighbouring steps
    and cancellation of inverse neighbours; (2) plus replacement of one side
    of a critical branching (overlapping first steps, each side at most
    ``MAX_TILE_LENGTH`` steps) by the other; (3) plus insertion of inverse
    pairs.  Phases 2 and 3 bound sequence length by the longer input plus two,
    so "different" means "not connected within those bounds".
    """
    if a.first != b.first or a.last != b.last:
        return "different"
    goal = b.key
    if a.key == goal:
        return "equal"
    oracle = _Oracle(rules)
    explored = 0
    max_len = max(len(a.steps), len(b.steps)) + 2
    for phase in (1, 2, 3):
        seen = {a.key}
        queue = deque([(a.entries, a.steps)])
        while queue:
            entries, steps = queue.popleft()
            explored += 1
            if explored > cap:
                return "unknown"
            for e, s in oracle.moves(entries, steps, phase, max_len):
                k = (e, tuple(x.signature for x in s))
                if k == goal:
                    return "equal"
                if k not in seen:
                    seen.add(k)
                    queue.append((e, s))
    return "different"


def rw2_eq(
    a: RwSequence,
    b: RwSequence,
    mode: str = "canonical",
    cap: int = DEFAULT_ORACLE_CAP,
    rules: Sequence[RwRule] = GROUPOID_RULES,
) -> bool:
    if mode == "canonical":
        if a.first != b.first or a.last != b.last:
            return False
        return cd2_canonicalize(a).same_as(cd2_canonicalize(b))
    if mode == "oracle":
        verdict = oracle_verdict(a, b, cap, rules)
        if verdict == "unknown":
            raise OracleBudgetExhausted(cap)
        return verdict == "equal"
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# coherence cells and bicategory checks

def coherence_component(kind: str, at: Path) -> RwSequence:
    if kind == ASSOC:
        if not (isinstance(at, Tau) and isinstance(at.second, Tau)):
            raise ShapeMismatch("assoc needs a path of shape τ(x, τ(y, z))")
        x, (y, z) = at.first, (at.second.first, at.second.second)
        after = Tau(Tau(x, y), z)
        return RwSequence((at, after), (RwStepRecord((), "tt", REVERSE, at, after),))
    if kind == LEFT_UNIT:
        if not (isinstance(at, Tau) and isinstance(at.second, Rho)):
            raise ShapeMismatch("left_unit needs a path of shape τ(x, ρ)")
        rule = "trr"
    elif kind == RIGHT_UNIT:
        if not (isinstance(at, Tau) and isinstance(at.first, Rho)):
            raise ShapeMismatch("right_unit needs a path of shape τ(ρ, x)")
        rule = "tlr"
    else:
        raise ValueError(f"unknown coherence kind {kind!r}")
    try:
        rec = step(at, Redex((), rule))
    except NoMatch:
        raise ShapeMismatch(f"{kind}: ρ does not sit on the adjacent endpoint") from None
    return RwSequence((at, rec.after), (rec,))


def _require_chain(*paths: Path) -> None:
    for i, (p, q) in enumerate(zip(paths, paths[1:])):
        if ends(p)[1] != ends(q)[0]:
            raise Incomposable(f"path {i + 1} does not start where path {i} ends")


def _confirm(report: CheckReport, label: str, left: RwSequence, right: RwSequence, cap: int) -> None:
    verdict = oracle_verdict(left, right, cap)
    if verdict == "equal":
        report.note_oracle("confirmed")
    elif verdict == "unknown":
        report.note_oracle("unknown")
    else:
        report.add_failure(f"{label}: {left.show()} vs {right.show()}", "rw2-equal (oracle)", "different")


def interchange_sides(alpha, theta, chi, phi) -> tuple[RwSequence, RwSequence]:
    lhs = hcomp(vcomp(alpha, chi), vcomp(theta, phi))
    rhs = vcomp(hcomp(alpha, theta), hcomp(chi, phi))
    return lhs, rhs


def check_interchange(
    alpha: RwSequence,
    theta: RwSequence,
    chi: RwSequence,
    phi: RwSequence,
    mode: str = "canonical",
    cap: int = DEFAULT_ORACLE_CAP,
    seed: int = 0,
) -> CheckReport:
    """``(α ⋄ χ) ∘h (θ ⋄ φ)`` against ``(α ∘h θ) ⋄ (χ ∘h φ)``.

    ``mode="oracle"`` additionally asks the search oracle for confirmation.
    """
    started = time.perf_counter()
    report = CheckReport(law="interchange", samples=1, seed=seed, depth=0)
    lhs, rhs = interchange_sides(alpha, theta, chi, phi)
    if not rw2_eq(lhs, rhs, "canonical"):
        report.add_failure(f"{lhs.show()} vs {rhs.show()}", "rw2-equal (canonical)", "different")
    if mode == "oracle":
        _confirm(report, "interchange", lhs, rhs, cap)
    return report.finish(started)


def pentagon_routes(s: Path, r: Path, p: Path, u: Path) -> tuple[RwSequence, RwSequence, Path]:
    _require_chain(s, r, p, u)
    start = Tau(s, Tau(r, Tau(p, u)))
    c1 = hcomp(identity(s), coherence_component(ASSOC, Tau(r, Tau(p, u))))
    c2 = coherence_component(ASSOC, c1.last)
    c3 = hcomp(coherence_component(ASSOC, c2.last.first), identity(u))
    right = vcomp(vcomp(c1, c2), c3)
    l1 = coherence_component(ASSOC, start)
    left = vcomp(l1, coherence_component(ASSOC, l1.last))
    return right, left, Tau(Tau(Tau(s, r), p), u)


def triangle_routes(r: Path, s: Path) -> tuple[RwSequence, RwSequence, Path]:
    _require_chain(s, r)
    rho_b = Rho(ends(s)[1])
    start = Tau(s, Tau(rho_b, r))
    a1 = coherence_component(ASSOC, start)
    via_assoc = vcomp(a1, hcomp(coherence_component(LEFT_UNIT, a1.last.first), identity(r)))
    direct = hcomp(identity(s), coherence_component(RIGHT_UNIT, Tau(rho_b, r)))
    return via_assoc, direct, Tau(s, r)


def check_pentagon(
    s: Path, r: Path, p: Path, u: Path, oracle: bool = True, cap: int = DEFAULT_ORACLE_CAP, seed: int = 0
) -> CheckReport:
    started = time.perf_counter()
    report = CheckReport(law="pentagon", samples=1, seed=seed, depth=0)
    right, left, target = pentagon_routes(s, r, p, u)
    for name, route in (("right", right), ("left", left)):
        if route.last != target:
            report.add_failure(
                f"pentagon {name} route from {show_path(route.first)}", show_path(target), show_path(route.last)
            )
    if oracle and report.passed:
        _confirm(report, "pentagon", right, left, cap)
    return report.finish(started)


def check_triangle(r: Path, s: Path, oracle: bool = True, cap: int = DEFAULT_ORACLE_CAP, seed: int = 0) -> CheckReport:
    started = time.perf_counter()
    report = CheckReport(law="triangle", samples=1, seed=seed, depth=0)
    via_assoc, direct, target = triangle_routes(r, s)
    for name, route in (("assoc", via_assoc), ("unit", direct)):
        if route.last != target:
            report.add_failure(
                f"triangle {name} route from {show_path(route.first)}", show_path(target), show_path(route.last)
            )
    if oracle and report.passed:
        _confirm(report, "triangle", via_assoc, direct, cap)
    return report.finish(started)


def all_entries_parallel(cells: Iterable[RwSequence]) -> bool:
    return all(all(ends(e) == ends(c.first) for e in c.entries) for c in cells)

"""Rewriting of computational paths (the rw-rules) and rw-equality.

Rules are values: a :class:`RwRule` bundles a matcher, a contraction and an
optional expansion (used to build reversed contractions).  Every engine
entry point takes the rule set as an argument, defaulting to the seven
groupoid rules :data:`GROUPOID_RULES`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple, Optional, Sequence

from .errors import FuelExhausted, NoMatch
from .path import (
    Path,
    PathPosition,
    Rho,
    Sigma,
    Tau,
    ends,
    preorder,
    replace_subpath,
    show_path,
    src,
    subpath_at,
    tgt,
)

DEFAULT_PATH_FUEL = 100_000

FORWARD = "forward"
REVERSE = "reverse"


@dataclass(frozen=True)
class RwRule:
    """One rewrite rule on paths.

    ``expand(q, witness)`` returns a path that contracts to ``q`` by this
    rule at the root, or ``None``.  Rules that invent a sub-path when run
    backwards (``tr``/``tsr``) need ``witness``.
    """

    name: str
    matches: Callable[[Path], bool]
    contract: Callable[[Path], Path]
    expand: Optional[Callable[[Path, Optional[Path]], Optional[Path]]] = None
    pattern: str = ""

    def __repr__(self) -> str:
        return f"RwRule({self.name})"


def _is_tau_sigma_right(p: Path) -> bool:
    return isinstance(p, Tau) and isinstance(p.second, Sigma) and p.second.inner == p.first


def _is_tau_sigma_left(p: Path) -> bool:
    return isinstance(p, Tau) and isinstance(p.first, Sigma) and p.first.inner == p.second


def _expand_tr(q: Path, witness: Path | None) -> Path | None:
    if isinstance(q, Rho) and witness is not None and src(witness) == q.at:
        return Tau(witness, Sigma(witness))
    return None


def _expand_tsr(q: Path, witness: Path | None) -> Path | None:
    if isinstance(q, Rho) and witness is not None and tgt(witness) == q.at:
        return Tau(Sigma(witness), witness)
    return None


SR = RwRule(
    "sr",
    lambda p: isinstance(p, Sigma) and isinstance(p.inner, Rho),
    lambda p: p.inner,
    lambda q, w: Sigma(q) if isinstance(q, Rho) else None,
    "σ(ρ) ▷ ρ",
)
SS = RwRule(
    "ss",
    lambda p: isinstance(p, Sigma) and isinstance(p.inner, Sigma),
    lambda p: p.inner.inner,
    lambda q, w: Sigma(Sigma(q)),
    "σ(σ(r)) ▷ r",
)
TR = RwRule(
    "tr",
    _is_tau_sigma_right,
    lambda p: Rho(src(p.first)),
    _expand_tr,
    "τ(r, σ(r)) ▷ ρ",
)
TSR = RwRule(
    "tsr",
    _is_tau_sigma_left,
    lambda p: Rho(tgt(p.second)),
    _expand_tsr,
    "τ(σ(r), r) ▷ ρ",
)
TRR = RwRule(
    "trr",
    lambda p: isinstance(p, Tau) and isinstance(p.second, Rho) and p.second.at == tgt(p.first),
    lambda p: p.first,
    lambda q, w: Tau(q, Rho(tgt(q))),
    "τ(r, ρ) ▷ r",
)
TLR = RwRule(
    "tlr",
    lambda p: isinstance(p, Tau) and isinstance(p.first, Rho) and p.first.at == src(p.second),
    lambda p: p.second,
    lambda q, w: Tau(Rho(src(q)), q),
    "τ(ρ, r) ▷ r",
)
TT = RwRule(
    "tt",
    lambda p: isinstance(p, Tau) and isinstance(p.first, Tau),
    lambda p: Tau(p.first.first, Tau(p.first.second, p.second)),
    lambda q, w: (
        Tau(Tau(q.first, q.second.first), q.second.second)
        if isinstance(q, Tau) and isinstance(q.second, Tau)
        else None
    ),
    "τ(τ(t, r), s) ▷ τ(t, τ(r, s))",
)

GROUPOID_RULES: tuple[RwRule, ...] = (SR, SS, TR, TSR, TRR, TLR, TT)
RULE_NAMES = tuple(r.name for r in GROUPOID_RULES)

# Opt-in completion of the groupoid fragment: with these three extra rules the
# set becomes the usual convergent presentation of free groupoids.  Never used
# unless passed explicitly.
ST = RwRule(
    "st",
    lambda p: isinstance(p, Sigma) and isinstance(p.inner, Tau),
    lambda p: Tau(Sigma(p.inner.second), Sigma(p.inner.first)),
    lambda q, w: (
        Sigma(Tau(q.second.inner, q.first.inner))
        if isinstance(q, Tau) and isinstance(q.first, Sigma) and isinstance(q.second, Sigma)
        else None
    ),
    "σ(τ(r, s)) ▷ τ(σ(s), σ(r))",
)
TCR = RwRule(
    "tcr",
    lambda p: isinstance(p, Tau) and isinstance(p.second, Tau) and p.second.first == Sigma(p.first),
    lambda p: p.second.second,
    None,
    "τ(r, τ(σ(r), s)) ▷ s",
)
TCL = RwRule(
    "tcl",
    lambda p: (
        isinstance(p, Tau)
        and isinstance(p.first, Sigma)
        and isinstance(p.second, Tau)
        and p.second.first == p.first.inner
    ),
    lambda p: p.second.second,
    None,
    "τ(σ(r), τ(r, s)) ▷ s",
)
COMPLETION_RULES: tuple[RwRule, ...] = (ST, TCR, TCL)
COMPLETED_RULES: tuple[RwRule, ...] = GROUPOID_RULES + COMPLETION_RULES
RULE_SETS: dict[str, tuple[RwRule, ...]] = {"groupoid": GROUPOID_RULES, "completed": COMPLETED_RULES}


def rule_table(rules: Sequence[RwRule]) -> dict[str, RwRule]:
    return {r.name: r for r in rules}


def _lookup(rule: RwRule | str, rules: Sequence[RwRule]) -> RwRule:
    if isinstance(rule, RwRule):
        return rule
    for r in rules:
        if r.name == rule:
            return r
    raise KeyError(f"unknown rw-rule {rule!r}")


class Redex(NamedTuple):
    position: PathPosition
    rule: str


@dataclass(frozen=True)
class RwStepRecord:
    """One rewrite step between adjacent paths.

    ``forward``: ``before`` contracts to ``after`` by ``rule`` at ``position``.
    ``reverse``: ``after`` contracts to ``before`` there instead.
    """

    position: PathPosition
    rule: str
    direction: str
    before: Path
    after: Path

    @property
    def signature(self) -> tuple[PathPosition, str, str]:
        return (self.position, self.rule, self.direction)

    def flipped(self) -> "RwStepRecord":
        d = REVERSE if self.direction == FORWARD else FORWARD
        return RwStepRecord(self.position, self.rule, d, self.after, self.before)

    def replayed(self, rules: Sequence[RwRule] = GROUPOID_RULES) -> bool:
        if self.direction == FORWARD:
            return rw_apply(self.before, self.position, self.rule, rules) == self.after
        return rw_apply(self.after, self.position, self.rule, rules) == self.before


# ---------------------------------------------------------------------------
# redexes and one-step contraction

def iter_redexes(p: Path, rules: Sequence[RwRule] = GROUPOID_RULES) -> Iterator[Redex]:
    for pos, q in preorder(p):
        for r in rules:
            if r.matches(q):
                yield Redex(pos, r.name)


def rw_redexes(p: Path, rules: Sequence[RwRule] = GROUPOID_RULES) -> list[Redex]:
    """All (position, rule) pairs, outermost-leftmost then in rule order."""
    return list(iter_redexes(p, rules))


def rw_apply(
    p: Path, at: Sequence[str], rule: RwRule | str, rules: Sequence[RwRule] = GROUPOID_RULES
) -> Path:
    r = _lookup(rule, rules)
    try:
        q = subpath_at(p, at)
    except ValueError:
        raise NoMatch(tuple(at), r.name) from None
    if not r.matches(q):
        raise NoMatch(tuple(at), r.name)
    return replace_subpath(p, at, r.contract(q))


def rw_expand(
    p: Path,
    at: Sequence[str],
    rule: RwRule | str,
    witness: Path | None = None,
    rules: Sequence[RwRule] = GROUPOID_RULES,
) -> Path:
    """A path ``p'`` with ``rw_apply(p', at, rule) == p`` (a reversed contraction)."""
    r = _lookup(rule, rules)
    q = subpath_at(p, at)
    bigger = r.expand(q, witness) if r.expand else None
    if bigger is None or not r.matches(bigger) or r.contract(bigger) != q:
        raise NoMatch(tuple(at), r.name)
    return replace_subpath(p, at, bigger)


def step(p: Path, redex: Redex, rules: Sequence[RwRule] = GROUPOID_RULES) -> RwStepRecord:
    after = rw_apply(p, redex.position, redex.rule, rules)
    return RwStepRecord(redex.position, redex.rule, FORWARD, p, after)


# ---------------------------------------------------------------------------
# normalization and rw-equality

def normalize_rw(
    p: Path, fuel: int = DEFAULT_PATH_FUEL, rules: Sequence[RwRule] = GROUPOID_RULES
) -> tuple[Path, list[RwStepRecord]]:
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    trace: list[RwStepRecord] = []
    cur = p
    while True:
        redex = next(iter_redexes(cur, rules), None)
        if redex is None:
            return cur, trace
        if len(trace) >= fuel:
            raise FuelExhausted(f"path not rw-normal after {fuel} steps", trace)
        rec = step(cur, redex, rules)
        trace.append(rec)
        cur = rec.after


def rw_normal_form(p: Path, fuel: int = DEFAULT_PATH_FUEL, rules: Sequence[RwRule] = GROUPOID_RULES) -> Path:
    return normalize_rw(p, fuel, rules)[0]


def normalize_random(
    p: Path,
    rng: random.Random,
    fuel: int = DEFAULT_PATH_FUEL,
    rules: Sequence[RwRule] = GROUPOID_RULES,
) -> tuple[Path, int]:
    """Normalize choosing a uniformly random redex at every step."""
    cur = p
    n = 0
    while True:
        redexes = rw_redexes(cur, rules)
        if not redexes:
            return cur, n
        if n >= fuel:
            raise FuelExhausted(f"path not rw-normal after {fuel} steps")
        pos, rule = rng.choice(redexes)
        cur = rw_apply(cur, pos, rule, rules)
        n += 1


def rw_eq(
    p: Path, q: Path, fuel: int = DEFAULT_PATH_FUEL, rules: Sequence[RwRule] = GROUPOID_RULES
) -> bool:
    """Decide rw-equality by comparing normal forms."""
    if p == q:
        return True
    return rw_normal_form(p, fuel, rules) == rw_normal_form(q, fuel, rules)


# ---------------------------------------------------------------------------
# weak groupoid laws

def groupoid_equations(s: Path, r: Path, t: Path) -> list[tuple[str, Path, Path]]:
    """Weak-groupoid equations for composable ``s: a→b, r: b→c, t: c→d``."""
    a, b = ends(s)
    return [
        ("assoc", Tau(Tau(s, r), t), Tau(s, Tau(r, t))),
        ("left_identity", Tau(Rho(a), s), s),
        ("right_identity", Tau(s, Rho(b)), s),
        ("right_inverse", Tau(s, Sigma(s)), Rho(a)),
        ("left_inverse", Tau(Sigma(s), s), Rho(b)),
    ]


def check_groupoid_laws(samples: int, seed: int, depth: int, fuel: int = DEFAULT_PATH_FUEL):
    """Randomized campaign over composable triples; failures are data."""
    from .campaigns import CampaignConfig, run_campaign

    return run_campaign(CampaignConfig("groupoid", samples, seed, depth, fuel))

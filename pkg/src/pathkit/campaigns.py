"""Randomized law-checking campaigns.

Each law has a per-sample checker.  Sample ``i`` draws from
``sample_rng(seed, i)``, so a campaign can be cut into index ranges, run in
worker processes, and merged back in index order with identical output.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .errors import FuelExhausted
from .generate import GeneratorConfig, PathGenerator, sample_rng
from .path import show_path
from .report import CheckReport
from .rewrite import DEFAULT_PATH_FUEL, RULE_SETS, groupoid_equations, normalize_random, normalize_rw, rw_eq
from .twocell import (
    DEFAULT_ORACLE_CAP,
    RwSequence,
    interchange_sides,
    oracle_verdict,
    pentagon_routes,
    rw2_eq,
    triangle_routes,
)

LAWS = ("groupoid", "interchange", "pentagon", "triangle", "confluence", "termination", "equivalence")

DEFAULT_DEPTH = {
    "groupoid": 6,
    "interchange": 3,
    "pentagon": 4,
    "triangle": 4,
    "confluence": 6,
    "termination": 8,
    "equivalence": 5,
}
# samples (by index) that get an oracle verdict unless every sample is requested
DEFAULT_ORACLE_SUBSAMPLE = {"interchange": 20, "pentagon": 10, "triangle": 10}
CONFLUENCE_STRATEGIES = 20
MAX_WALK = 3


@dataclass(frozen=True)
class CampaignConfig:
    law: str
    samples: int
    seed: int = 0
    depth: int | None = None
    fuel: int = DEFAULT_PATH_FUEL
    oracle_all: bool = False
    oracle_subsample: int | None = None
    oracle_cap: int = DEFAULT_ORACLE_CAP
    strategies: int = CONFLUENCE_STRATEGIES
    # rule set for the 1-cell laws (groupoid, confluence, termination, equivalence)
    rule_set: str = "groupoid"

    def __post_init__(self):
        if self.law not in LAWS:
            raise ValueError(f"unknown law {self.law!r}; expected one of {', '.join(LAWS)}")
        if self.samples < 0:
            raise ValueError("samples must be non-negative")
        if self.depth is not None and self.depth < 1:
            raise ValueError("depth must be positive")
        if self.fuel <= 0 or self.oracle_cap <= 0:
            raise ValueError("fuel and oracle cap must be positive")
        if self.rule_set not in RULE_SETS:
            raise ValueError(f"unknown rule set {self.rule_set!r}")

    @property
    def rules(self):
        return RULE_SETS[self.rule_set]

    @property
    def effective_depth(self) -> int:
        return DEFAULT_DEPTH[self.law] if self.depth is None else self.depth

    def wants_oracle(self, i: int) -> bool:
        if self.oracle_all:
            return True
        n = self.oracle_subsample
        if n is None:
            n = DEFAULT_ORACLE_SUBSAMPLE.get(self.law, 0)
        return i < n


def _gen(cfg: CampaignConfig, i: int) -> PathGenerator:
    gcfg = GeneratorConfig(seed=cfg.seed, max_path_depth=cfg.effective_depth)
    return PathGenerator(gcfg, sample_rng(cfg.seed, i))


def _bump(report: CheckReport, key: str, n: int = 1) -> None:
    report.stats[key] = report.stats.get(key, 0) + n


def _max(report: CheckReport, key: str, v: int) -> None:
    report.stats[key] = max(report.stats.get(key, 0), v)


def _oracle(report: CheckReport, label: str, a: RwSequence, b: RwSequence, cap: int) -> None:
    verdict = oracle_verdict(a, b, cap)
    if verdict == "equal":
        report.note_oracle("confirmed")
    elif verdict == "unknown":
        report.note_oracle("unknown")
    else:
        report.add_failure(f"{label}: {a.show()} vs {b.show()}", "rw2-equal (oracle)", "different")


# ---------------------------------------------------------------------------
# per-sample checkers

def _groupoid(cfg: CampaignConfig, i: int, report: CheckReport) -> None:
    s, r, t = _gen(cfg, i).composable(3)
    for name, lhs, rhs in groupoid_equations(s, r, t):
        try:
            ok = rw_eq(lhs, rhs, cfg.fuel, cfg.rules)
            got = "true" if ok else "false"
        except FuelExhausted:
            ok, got = False, "fuel-exhausted"
        if not ok:
            report.add_failure(f"{name}: {show_path(lhs)} =rw {show_path(rhs)}", "true", got)


def _termination(cfg: CampaignConfig, i: int, report: CheckReport) -> None:
    p = _gen(cfg, i).path()
    try:
        _, trace = normalize_rw(p, cfg.fuel, cfg.rules)
    except FuelExhausted:
        report.add_failure(show_path(p), "rw-normal form", "fuel-exhausted")
        return
    _bump(report, "total_steps", len(trace))
    _max(report, "max_steps", len(trace))


def _confluence(cfg: CampaignConfig, i: int, report: CheckReport) -> None:
    p = _gen(cfg, i).path()
    rng = sample_rng(cfg.seed, i)
    rng.random()  # decorrelate from the generator stream
    try:
        forms = {normalize_rw(p, cfg.fuel, cfg.rules)[0]}
        for _ in range(cfg.strategies):
            forms.add(normalize_random(p, rng, cfg.fuel, cfg.rules)[0])
    except FuelExhausted:
        report.add_failure(show_path(p), "one rw-normal form", "fuel-exhausted")
        return
    _max(report, "max_normal_forms", len(forms))
    if len(forms) > 1:
        _bump(report, "nonconfluent")
        shown = sorted(show_path(f) for f in forms)
        report.add_failure(show_path(p), "one rw-normal form", f"{len(forms)}: " + " | ".join(shown))


def _walk(gen: PathGenerator, p) -> RwSequence:
    entries, steps = gen.walk(p, gen.rng.randint(0, MAX_WALK))
    return RwSequence(tuple(entries), tuple(steps))


def _interchange(cfg: CampaignConfig, i: int, report: CheckReport) -> None:
    gen = _gen(cfg, i)
    s, r = gen.composable(2)
    alpha = _walk(gen, s)
    chi = _walk(gen, alpha.last)
    theta = _walk(gen, r)
    phi = _walk(gen, theta.last)
    lhs, rhs = interchange_sides(alpha, theta, chi, phi)
    _max(report, "max_cell_length", max(len(lhs.steps), len(rhs.steps)))
    if not rw2_eq(lhs, rhs, "canonical"):
        report.add_failure(f"{lhs.show()} vs {rhs.show()}", "rw2-equal (canonical)", "different")
    elif cfg.wants_oracle(i):
        _oracle(report, "interchange", lhs, rhs, cfg.oracle_cap)


def _pentagon(cfg: CampaignConfig, i: int, report: CheckReport) -> None:
    s, r, p, u = _gen(cfg, i).composable(4)
    right, left, target = pentagon_routes(s, r, p, u)
    ok = True
    for name, route in (("right", right), ("left", left)):
        if route.last != target:
            ok = False
            report.add_failure(f"pentagon {name} route from {show_path(route.first)}", show_path(target), show_path(route.last))
    if ok and cfg.wants_oracle(i):
        _oracle(report, "pentagon", right, left, cfg.oracle_cap)


def _triangle(cfg: CampaignConfig, i: int, report: CheckReport) -> None:
    s, r = _gen(cfg, i).composable(2)
    via_assoc, direct, target = triangle_routes(r, s)
    ok = True
    for name, route in (("assoc", via_assoc), ("unit", direct)):
        if route.last != target:
            ok = False
            report.add_failure(f"triangle {name} route from {show_path(route.first)}", show_path(target), show_path(route.last))
    if ok and cfg.wants_oracle(i):
        _oracle(report, "triangle", via_assoc, direct, cfg.oracle_cap)


def _equivalence(cfg: CampaignConfig, i: int, report: CheckReport) -> None:
    """Reflexivity, symmetry and transitivity on an rw-connected triple."""
    gen = _gen(cfg, i)
    p = gen.path()
    q = gen.walk(p, gen.rng.randint(1, 4))[0][-1]
    t = gen.walk(q, gen.rng.randint(1, 4))[0][-1]
    try:
        pq, qp = rw_eq(p, q, cfg.fuel, cfg.rules), rw_eq(q, p, cfg.fuel, cfg.rules)
        qt, pt = rw_eq(q, t, cfg.fuel, cfg.rules), rw_eq(p, t, cfg.fuel, cfg.rules)
        refl = rw_eq(p, p, cfg.fuel, cfg.rules)
    except FuelExhausted:
        report.add_failure(show_path(p), "rw-normal forms", "fuel-exhausted")
        return
    if not refl:
        report.add_failure(f"reflexive: {show_path(p)}", "true", "false")
    if pq != qp:
        report.add_failure(f"symmetric: {show_path(p)} ~ {show_path(q)}", str(pq).lower(), str(qp).lower())
    if pq and qt and not pt:
        report.add_failure(f"transitive: {show_path(p)} ~ {show_path(q)} ~ {show_path(t)}", "true", "false")
    # connected by construction; a false verdict exposes a non-joinable pair
    if not (pq and qt):
        _bump(report, "connected_but_unjoined")


CHECKERS: dict[str, Callable[[CampaignConfig, int, CheckReport], None]] = {
    "groupoid": _groupoid,
    "interchange": _interchange,
    "pentagon": _pentagon,
    "triangle": _triangle,
    "confluence": _confluence,
    "termination": _termination,
    "equivalence": _equivalence,
}


def run_range(cfg: CampaignConfig, lo: int, hi: int) -> CheckReport:
    started = time.perf_counter()
    report = CheckReport(law=cfg.law, samples=hi - lo, seed=cfg.seed, depth=cfg.effective_depth)
    check = CHECKERS[cfg.law]
    for i in range(lo, hi):
        check(cfg, i, report)
    return report.finish(started)


def _run_chunk(args: tuple[CampaignConfig, int, int]) -> CheckReport:
    return run_range(*args)


def run_campaign(cfg: CampaignConfig, workers: int = 1) -> CheckReport:
    """Run ``cfg.samples`` samples, optionally fanned out over processes.

    Chunk reports are merged in index order, so the result does not depend
    on ``workers`` (apart from timing).
    """
    if workers <= 1 or cfg.samples < 2 * workers:
        return run_range(cfg, 0, cfg.samples)
    bounds = [cfg.samples * k // workers for k in range(workers + 1)]
    chunks = [(cfg, bounds[k], bounds[k + 1]) for k in range(workers)]
    started = time.perf_counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_chunk, chunks))
    report = parts[0]
    for part in parts[1:]:
        report = report.merge(part)
    report.elapsed = (time.perf_counter() - started) * 1000.0
    return report


def check_law(law: str, samples: int, seed: int = 0, depth: int | None = None, **kw) -> CheckReport:
    return run_campaign(CampaignConfig(law=law, samples=samples, seed=seed, depth=depth, **kw))


__all__ = [
    "CampaignConfig",
    "CHECKERS",
    "DEFAULT_DEPTH",
    "LAWS",
    "check_law",
    "run_campaign",
    "run_range",
]

"""Seeded random terms, paths and rw-sequences for the property campaigns.

Every campaign sample ``i`` draws from its own ``random.Random`` seeded by
``(seed, i)``, so campaigns can be split across workers by sample index and
still reproduce byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import term as T
from .errors import NoMatch
from .path import (
    BetaStep,
    EtaStep,
    Mu,
    Nu,
    Path,
    Rho,
    Sigma,
    Tau,
    Xi,
    preorder,
    src,
    subpath_at,
    tgt,
    wrap_at,
)
from .rewrite import (
    FORWARD,
    GROUPOID_RULES,
    REVERSE,
    RwRule,
    RwStepRecord,
    rw_expand,
    rw_redexes,
    step,
)
from .term import App, Bound, Lam, Term, Var

FREE_NAMES = ("x", "y", "z", "w")
BINDER_NAMES = ("x", "y", "z", "w", "u", "v")

DEFAULT_WEIGHTS = {
    "rho": 0.5,
    "beta": 0.5,
    "eta": 0.5,
    "sigma": 2.0,
    "tau": 2.0,
    "xi": 1.0,
    "mu": 1.0,
    "nu": 1.0,
}


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    max_term_depth: int = 3
    max_path_depth: int = 4
    constructor_weights: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    # weight of planted inverse pairs τ(q, σ(q)) / τ(σ(q), q); off by default
    inverse_weight: float = 0.0

    def __post_init__(self):
        if self.max_term_depth < 1 or self.max_path_depth < 1:
            raise ValueError("depth bounds must be positive")
        if any(w <= 0 for w in self.constructor_weights.values()):
            raise ValueError("constructor weights must be positive")
        if self.inverse_weight < 0:
            raise ValueError("inverse_weight must be non-negative")


def sample_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"pathkit:{seed}:{index}")


class PathGenerator:
    def __init__(self, cfg: GeneratorConfig, rng: random.Random | None = None):
        self.cfg = cfg
        self.rng = rng if rng is not None else random.Random(cfg.seed)

    def _pick(self, options: dict[str, float]) -> str:
        names = list(options)
        return self.rng.choices(names, weights=[options[n] for n in names])[0]

    # -- terms --------------------------------------------------------------

    def term(self, depth: int | None = None, scope: int = 0) -> Term:
        """Random term of depth at most ``depth`` over ``scope`` enclosing binders."""
        d = self.cfg.max_term_depth if depth is None else depth
        rng = self.rng
        if d <= 1:
            roll = rng.random()
            if roll < 0.25:
                return Lam(rng.choice(BINDER_NAMES), Bound(0))
            if scope and roll < 0.6:
                return Bound(rng.randrange(scope))
            return Var(rng.choice(FREE_NAMES))
        kind = self._pick({"var": 1.0, "lam": 1.5, "app": 1.5, "redex": 1.5})
        if kind == "var":
            return self.term(1, scope)
        if kind == "lam":
            return Lam(rng.choice(BINDER_NAMES), self.term(d - 1, scope + 1))
        if kind == "redex":
            fun = Lam(rng.choice(BINDER_NAMES), self.term(d - 2, scope + 1)) if d > 2 else Lam(rng.choice(BINDER_NAMES), Bound(0))
            return App(fun, self.term(d - 1, scope))
        return App(self.term(d - 1, scope), self.term(d - 1, scope))

    # -- paths --------------------------------------------------------------

    def path(self, start: Term | None = None, depth: int | None = None) -> Path:
        d = self.cfg.max_path_depth if depth is None else depth
        if start is None:
            start = self.term()
        return self.path_from(start, d)

    def _atomic(self, m: Term, kind: str, d: int) -> Path | None:
        sites = [c for c in T.contractions(m) if c.kind == kind and len(c.position) < d]
        if not sites:
            return None
        c = self.rng.choice(sites)
        redex = T.subterm_at(m, c.position)
        atom = BetaStep(redex) if kind == T.BETA else EtaStep(redex)
        return wrap_at(c.position, m, atom)

    def path_from(self, m: Term, d: int) -> Path:
        """Random valid path of depth at most ``d`` with source ``m``."""
        w = self.cfg.constructor_weights
        options = {"rho": w.get("rho", 1.0)}
        if any(c.kind == T.BETA and len(c.position) < d for c in T.contractions(m)):
            options["beta"] = w.get("beta", 1.0)
        if any(c.kind == T.ETA and len(c.position) < d for c in T.contractions(m)):
            options["eta"] = w.get("eta", 1.0)
        if d > 1:
            options["sigma"] = w.get("sigma", 1.0)
            options["tau"] = w.get("tau", 1.0)
            if isinstance(m, Lam):
                options["xi"] = w.get("xi", 1.0)
            if isinstance(m, App):
                options["mu"] = w.get("mu", 1.0)
                options["nu"] = w.get("nu", 1.0)
            if self.cfg.inverse_weight > 0 and d > 2:
                options["inverse"] = self.cfg.inverse_weight
        kind = self._pick(options)
        match kind:
            case "rho":
                return Rho(m)
            case "beta" | "eta":
                return self._atomic(m, T.BETA if kind == "beta" else T.ETA, d)
            case "sigma":
                return Sigma(self.path_to(m, d - 1))
            case "tau":
                q = self.path_from(m, d - 1)
                return Tau(q, self.path_from(tgt(q), d - 1))
            case "xi":
                return Xi(m.binder, self.path_from(m.body, d - 1))
            case "mu":
                return Mu(m.fun, self.path_from(m.arg, d - 1))
            case "nu":
                return Nu(self.path_from(m.fun, d - 1), m.arg)
            case "inverse":
                if self.rng.random() < 0.5:
                    q = self.path_from(m, d - 2)
                    return Tau(q, Sigma(q))
                q = self.path_to(m, d - 2)
                return Tau(Sigma(q), q)
        raise AssertionError(kind)

    def path_to(self, m: Term, d: int) -> Path:
        """Random valid path of depth at most ``d`` with target ``m``."""
        w = self.cfg.constructor_weights
        options = {"rho": w.get("rho", 1.0), "beta": w.get("beta", 1.0), "eta": w.get("eta", 1.0)}
        if d > 1:
            options["sigma"] = w.get("sigma", 1.0)
            options["tau"] = w.get("tau", 1.0)
            if isinstance(m, Lam):
                options["xi"] = w.get("xi", 1.0)
            if isinstance(m, App):
                options["mu"] = w.get("mu", 1.0)
                options["nu"] = w.get("nu", 1.0)
        match self._pick(options):
            case "rho":
                return Rho(m)
            case "beta":
                # (λv.v) m contracts to m
                return BetaStep(App(Lam(self.rng.choice(BINDER_NAMES), Bound(0)), m))
            case "eta":
                return EtaStep(Lam(self.rng.choice(BINDER_NAMES), App(T.shift(m, 1), Bound(0))))
            case "sigma":
                return Sigma(self.path_from(m, d - 1))
            case "tau":
                q = self.path_to(m, d - 1)
                return Tau(self.path_to(src(q), d - 1), q)
            case "xi":
                return Xi(m.binder, self.path_to(m.body, d - 1))
            case "mu":
                return Mu(m.fun, self.path_to(m.arg, d - 1))
            case "nu":
                return Nu(self.path_to(m.fun, d - 1), m.arg)
        raise AssertionError

    def composable(self, k: int, depth: int | None = None) -> list[Path]:
        """``k`` paths, each starting where the previous one ends."""
        out = []
        cur = self.term()
        for _ in range(k):
            p = self.path_from(cur, self.cfg.max_path_depth if depth is None else depth)
            out.append(p)
            cur = tgt(p)
        return out

    # -- rw-steps -----------------------------------------------------------

    def _witness(self, rule: str, at: Term) -> Path:
        if rule == "tr":
            return self.path_from(at, 2)
        return self.path_to(at, 2)

    def random_expansion(self, p: Path, rules=GROUPOID_RULES) -> RwStepRecord | None:
        """A reversed contraction out of ``p`` (an rw-expansion), if one is found."""
        positions = [pos for pos, _ in preorder(p)]
        for _ in range(8):
            pos = self.rng.choice(positions)
            q = subpath_at(p, pos)
            rule: RwRule = self.rng.choice([r for r in rules if r.expand is not None])
            witness = self._witness(rule.name, q.at) if isinstance(q, Rho) and rule.name in ("tr", "tsr") else None
            try:
                bigger = rw_expand(p, pos, rule, witness, rules)
            except (NoMatch, ValueError):
                continue
            return RwStepRecord(pos, rule.name, REVERSE, p, bigger)
        return None

    def random_step(self, p: Path, p_forward: float = 0.6, rules=GROUPOID_RULES) -> RwStepRecord | None:
        redexes = rw_redexes(p, rules)
        if redexes and self.rng.random() < p_forward:
            return step(p, self.rng.choice(redexes), rules)
        rec = self.random_expansion(p, rules)
        if rec is None and redexes:
            return step(p, self.rng.choice(redexes), rules)
        return rec

    def walk(self, p: Path, length: int, p_forward: float = 0.6, rules=GROUPOID_RULES) -> tuple[list[Path], list[RwStepRecord]]:
        entries = [p]
        steps: list[RwStepRecord] = []
        for _ in range(length):
            rec = self.random_step(entries[-1], p_forward, rules)
            if rec is None:
                break
            steps.append(rec)
            entries.append(rec.after)
        return entries, steps


def gen_term(cfg: GeneratorConfig) -> Term:
    return PathGenerator(cfg).term()


def gen_path(cfg: GeneratorConfig, start: Term | None = None) -> Path:
    return PathGenerator(cfg).path(start)


__all__ = [
    "DEFAULT_WEIGHTS",
    "FORWARD",
    "GeneratorConfig",
    "PathGenerator",
    "gen_path",
    "gen_term",
    "sample_rng",
]

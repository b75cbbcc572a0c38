"""Computational paths: proof terms for beta-eta equality of lambda terms.

A path is built from the eight equality axioms of the Π fragment.  Atomic
steps store only their redex; the contractum is always recomputed.  Paths
under ``Xi`` see the abstracted variable as de Bruijn index 0, so two paths
that differ only in bound names compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence, Union

from . import term as T
from .errors import InvalidPath, NotBetaEtaEqual
from .term import App, Bound, Lam, Reader, Term, Var, _cache_hash

PathPosition = tuple[str, ...]  # steps drawn from "inner" | "first" | "second"


@_cache_hash
@dataclass(frozen=True)
class Rho:
    at: Term


@_cache_hash
@dataclass(frozen=True)
class BetaStep:
    redex: Term


@_cache_hash
@dataclass(frozen=True)
class EtaStep:
    redex: Term


@_cache_hash
@dataclass(frozen=True)
class Sigma:
    inner: "Path"


@_cache_hash
@dataclass(frozen=True)
class Tau:
    first: "Path"
    second: "Path"


@_cache_hash
@dataclass(frozen=True)
class Xi:
    binder: str = field(compare=False)
    inner: "Path"


@_cache_hash
@dataclass(frozen=True)
class Mu:
    fun: Term
    inner: "Path"


@_cache_hash
@dataclass(frozen=True)
class Nu:
    inner: "Path"
    arg: Term


Path = Union[Rho, BetaStep, EtaStep, Sigma, Tau, Xi, Mu, Nu]
ATOMIC = (Rho, BetaStep, EtaStep)


# ---------------------------------------------------------------------------
# endpoints

def ends(p: Path) -> tuple[Term, Term]:
    """Endpoints of a path already known to be well formed (memoized)."""
    cached = p.__dict__.get("_ends")
    if cached is not None:
        return cached
    match p:
        case Rho(m):
            e = (m, m)
        case BetaStep(r):
            e = (r, T.contract_beta(r))
        case EtaStep(r):
            e = (r, T.contract_eta(r))
        case Sigma(q):
            a, b = ends(q)
            e = (b, a)
        case Tau(q, r):
            e = (ends(q)[0], ends(r)[1])
        case Xi(x, q):
            a, b = ends(q)
            e = (Lam(x, a), Lam(x, b))
        case Mu(n, q):
            a, b = ends(q)
            e = (App(n, a), App(n, b))
        case Nu(q, n):
            a, b = ends(q)
            e = (App(a, n), App(b, n))
        case _:
            raise TypeError(f"not a path: {p!r}")
    object.__setattr__(p, "_ends", e)
    return e


def src(p: Path) -> Term:
    return ends(p)[0]


def tgt(p: Path) -> Term:
    return ends(p)[1]


def _check_term(t: Term, depth: int, pos: PathPosition) -> None:
    if not isinstance(t, (Var, Bound, Lam, App)):
        raise InvalidPath(pos, f"not a term: {t!r}")
    if T.max_loose(t) >= depth:
        raise InvalidPath(pos, "term has an unbound de Bruijn index")


def _validate(p: Path, depth: int, pos: PathPosition) -> tuple[Term, Term]:
    match p:
        case Rho(m):
            _check_term(m, depth, pos)
        case BetaStep(r):
            _check_term(r, depth, pos)
            if not T.is_beta_redex(r):
                raise InvalidPath(pos, "not-a-redex: beta step needs (λx.M)N")
        case EtaStep(r):
            _check_term(r, depth, pos)
            if not (isinstance(r, Lam) and isinstance(r.body, App) and r.body.arg == Bound(0)):
                raise InvalidPath(pos, "not-a-redex: eta step needs λx.M x")
            if T.occurs_loose(r.body.fun, 0):
                raise InvalidPath(pos, "eta side condition violated: x occurs free in M")
        case Sigma(q):
            _validate(q, depth, pos + ("inner",))
        case Tau(q, r):
            _, mid = _validate(q, depth, pos + ("first",))
            mid2, _ = _validate(r, depth, pos + ("second",))
            if mid != mid2:
                raise InvalidPath(pos, "tau endpoint mismatch: target of first is not source of second")
        case Xi(_, q):
            _validate(q, depth + 1, pos + ("inner",))
        case Mu(n, q):
            _check_term(n, depth, pos)
            _validate(q, depth, pos + ("inner",))
        case Nu(q, n):
            _check_term(n, depth, pos)
            _validate(q, depth, pos + ("inner",))
        case _:
            raise InvalidPath(pos, f"not a path: {p!r}")
    return ends(p)


def validate_path(p: Path, depth: int = 0) -> None:
    """Raise :class:`InvalidPath` at the first violated constructor constraint.

    ``depth`` is the number of enclosing ``Xi`` binders; top-level paths
    must be closed with respect to de Bruijn indices.
    """
    _validate(p, depth, ())


def endpoints(p: Path) -> tuple[Term, Term]:
    return _validate(p, 0, ())


def is_valid(p: Path) -> bool:
    try:
        validate_path(p)
    except InvalidPath:
        return False
    return True


# ---------------------------------------------------------------------------
# structure

def children(p: Path) -> Iterator[tuple[str, Path]]:
    match p:
        case Sigma(q) | Xi(_, q) | Mu(_, q) | Nu(q, _):
            yield "inner", q
        case Tau(q, r):
            yield "first", q
            yield "second", r


def subpath_at(p: Path, pos: Sequence[str]) -> Path:
    for step in pos:
        match step, p:
            case "inner", (Sigma(q) | Xi(_, q) | Mu(_, q) | Nu(q, _)):
                p = q
            case "first", Tau(q, _):
                p = q
            case "second", Tau(_, r):
                p = r
            case _:
                raise ValueError(f"invalid path position {tuple(pos)!r}")
    return p


def replace_subpath(p: Path, pos: Sequence[str], new: Path) -> Path:
    if not pos:
        return new
    step, rest = pos[0], pos[1:]
    match step, p:
        case "inner", Sigma(q):
            return Sigma(replace_subpath(q, rest, new))
        case "inner", Xi(x, q):
            return Xi(x, replace_subpath(q, rest, new))
        case "inner", Mu(n, q):
            return Mu(n, replace_subpath(q, rest, new))
        case "inner", Nu(q, n):
            return Nu(replace_subpath(q, rest, new), n)
        case "first", Tau(q, r):
            return Tau(replace_subpath(q, rest, new), r)
        case "second", Tau(q, r):
            return Tau(q, replace_subpath(r, rest, new))
    raise ValueError(f"invalid path position {tuple(pos)!r}")


def preorder(p: Path, pos: PathPosition = ()) -> Iterator[tuple[PathPosition, Path]]:
    """Sub-paths outermost-leftmost, with their positions."""
    stack = [(pos, p)]
    while stack:
        q_pos, q = stack.pop()
        yield q_pos, q
        kids = list(children(q))
        for step, child in reversed(kids):
            stack.append((q_pos + (step,), child))


def path_size(p: Path) -> int:
    return sum(1 for _ in preorder(p))


def path_depth(p: Path) -> int:
    kids = [c for _, c in children(p)]
    return 1 + max((path_depth(c) for c in kids), default=0)


def atoms(p: Path) -> list[Path]:
    return [q for _, q in preorder(p) if isinstance(q, ATOMIC)]


def binder_depth(p: Path, pos: Sequence[str]) -> int:
    """Number of ``Xi`` nodes strictly above ``pos``."""
    n = 0
    for k in range(len(pos)):
        if isinstance(subpath_at(p, pos[:k]), Xi):
            n += 1
    return n


# ---------------------------------------------------------------------------
# construction between beta-eta equal terms

def wrap_at(pos: Sequence[str], whole: Term, step: Path) -> Path:
    """Wrap an atomic step at term position ``pos`` of ``whole`` in xi/mu/nu."""
    if not pos:
        return step
    head, rest = pos[0], pos[1:]
    match head, whole:
        case "body", Lam(x, body):
            return Xi(x, wrap_at(rest, body, step))
        case "fun", App(f, a):
            return Nu(wrap_at(rest, f, step), a)
        case "arg", App(f, a):
            return Mu(f, wrap_at(rest, a, step))
    raise ValueError(f"invalid term position {tuple(pos)!r}")


def trace_steps(trace: T.ReductionTrace) -> list[Path]:
    out = []
    cur = trace.start
    for c in trace.steps:
        redex = T.subterm_at(cur, c.position)
        atom = BetaStep(redex) if c.kind == T.BETA else EtaStep(redex)
        out.append(wrap_at(c.position, cur, atom))
        cur = c.result
    return out


def chain(steps: Sequence[Path]) -> Path | None:
    """Right-nested tau composite, ``None`` for no steps."""
    if not steps:
        return None
    acc = steps[-1]
    for s in reversed(steps[:-1]):
        acc = Tau(s, acc)
    return acc


def path_between(m: Term, n: Term, fuel: int = T.DEFAULT_TERM_FUEL) -> Path:
    tm = T.normalize_term(m, fuel)
    tn = T.normalize_term(n, fuel)
    if tm.final != tn.final:
        raise NotBetaEtaEqual(m, n)
    left = chain(trace_steps(tm))
    right = chain(trace_steps(tn))
    if left is None and right is None:
        return Rho(m)
    if right is None:
        return left
    if left is None:
        return Sigma(right)
    return Tau(left, Sigma(right))


# ---------------------------------------------------------------------------
# printing

def _path_names(p: Path) -> frozenset[str]:
    names: set[str] = set()
    for _, q in preorder(p):
        for t in (getattr(q, a) for a in ("at", "redex", "fun", "arg") if hasattr(q, a)):
            names |= T.free_names(t)
    return frozenset(names)


def _xi_name(hint: str, q: Path, ctx: Sequence[str]) -> str:
    return T.fresh_name(hint or "x", _path_names(q) | set(ctx))


def show_path(p: Path, ctx: Sequence[str] = ()) -> str:
    """Structural rendering; re-parses with :func:`parse_path`."""
    ctx = list(ctx)

    def term(t: Term) -> str:
        return T.show_term(t, "structural", ctx)

    def go(q: Path) -> str:
        match q:
            case Rho(m):
                return f"rho({term(m)})"
            case BetaStep(r):
                return f"beta({term(r)})"
            case EtaStep(r):
                return f"eta({term(r)})"
            case Sigma(inner):
                return f"sigma({go(inner)})"
            case Tau(a, b):
                return f"tau({go(a)}, {go(b)})"
            case Xi(x, inner):
                name = _xi_name(x, inner, ctx)
                ctx.append(name)
                try:
                    return f"xi({name}. {go(inner)})"
                finally:
                    ctx.pop()
            case Mu(n, inner):
                return f"mu({term(n)}, {go(inner)})"
            case Nu(inner, n):
                return f"nu({go(inner)}, {term(n)})"
        raise TypeError(f"not a path: {q!r}")

    return go(p)


def show_paper(p: Path) -> str:
    """Flattened notation: each atomic step labelled with its whole-term endpoints."""

    def term(t: Term) -> str:
        return T.show_term(t, "paper")

    def go(q: Path, ctx: Callable[[Term], Term]) -> str:
        match q:
            case Rho(m):
                return f"ρ({term(ctx(m))})"
            case BetaStep() | EtaStep():
                a, b = ends(q)
                label = "β" if isinstance(q, BetaStep) else "η"
                return f"{label}({term(ctx(a))}, {term(ctx(b))})"
            case Sigma(inner):
                return f"σ({go(inner, ctx)})"
            case Tau(a, b):
                return f"τ({go(a, ctx)}, {go(b, ctx)})"
            case Xi(x, inner):
                return go(inner, lambda t: ctx(Lam(x, t)))
            case Mu(n, inner):
                return go(inner, lambda t: ctx(App(n, t)))
            case Nu(inner, n):
                return go(inner, lambda t: ctx(App(t, n)))
        raise TypeError(f"not a path: {q!r}")

    return go(p, lambda t: t)


def print_path(p: Path, style: str = "structural") -> str:
    if style == "structural":
        return show_path(p)
    if style == "paper":
        return show_paper(p)
    raise ValueError(f"unknown style {style!r}")


# ---------------------------------------------------------------------------
# parsing

_PATH_HEADS = ("rho", "beta", "eta", "sigma", "tau", "xi", "mu", "nu")


def _read_path(r: Reader) -> Path:
    r.skip_ws()
    m = T.IDENT_RE.match(r.text, r.pos)
    head = m.group() if m else ""
    if head not in _PATH_HEADS:
        raise r.error(
            "expected a path constructor" if r.pos < len(r.text) else "unexpected end of input",
            {f"'{h}('" for h in _PATH_HEADS},
        )
    r.pos = m.end()
    r.expect("(")
    match head:
        case "rho":
            out: Path = Rho(r.term())
        case "beta":
            out = BetaStep(r.term())
        case "eta":
            out = EtaStep(r.term())
        case "sigma":
            out = Sigma(_read_path(r))
        case "tau":
            a = _read_path(r)
            r.expect(",")
            out = Tau(a, _read_path(r))
        case "xi":
            x = r.ident()
            r.expect(".")
            r.scope.append(x)
            try:
                out = Xi(x, _read_path(r))
            finally:
                r.scope.pop()
        case "mu":
            n = r.term()
            r.expect(",")
            out = Mu(n, _read_path(r))
        case "nu":
            q = _read_path(r)
            r.expect(",")
            out = Nu(q, r.term())
    r.expect(")")
    return out


def parse_path(text: str, validate: bool = True) -> Path:
    r = Reader(text)
    p = _read_path(r)
    r.finish()
    if validate:
        validate_path(p)
    return p

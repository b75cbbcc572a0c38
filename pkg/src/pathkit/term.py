"""Untyped lambda terms.

Bound variables are de Bruijn indices (``Bound``); free variables are named
(``Var``).  ``Lam.binder`` is only a naming hint for the printer and takes no
part in equality or hashing, so ``==`` on terms *is* alpha-equivalence and
substitution can never capture.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence, Union

from .errors import FuelExhausted, TermSyntaxError

DEFAULT_TERM_FUEL = 10_000

TermPosition = tuple[str, ...]  # steps drawn from "body" | "fun" | "arg"

BETA = "beta"
ETA = "eta"


def _cache_hash(cls):
    generated = cls.__hash__

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = generated(self)
            object.__setattr__(self, "_hash", h)
        return h

    cls.__hash__ = __hash__
    return cls


@_cache_hash
@dataclass(frozen=True)
class Var:
    name: str


@_cache_hash
@dataclass(frozen=True)
class Bound:
    index: int


@_cache_hash
@dataclass(frozen=True)
class Lam:
    binder: str = field(compare=False)
    body: "Term"


@_cache_hash
@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


Term = Union[Var, Bound, Lam, App]


class Contraction(NamedTuple):
    position: TermPosition
    kind: str
    result: Term


@dataclass(frozen=True)
class ReductionTrace:
    start: Term
    steps: tuple[Contraction, ...] = ()

    @property
    def final(self) -> Term:
        return self.steps[-1].result if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)


# ---------------------------------------------------------------------------
# de Bruijn plumbing

def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    if d == 0:
        return t
    match t:
        case Bound(i):
            return Bound(i + d) if i >= cutoff else t
        case Var():
            return t
        case Lam(b, body):
            return Lam(b, shift(body, d, cutoff + 1))
        case App(f, a):
            return App(shift(f, d, cutoff), shift(a, d, cutoff))
    raise TypeError(f"not a term: {t!r}")


def _subst_index(t: Term, j: int, s: Term) -> Term:
    match t:
        case Bound(i):
            return s if i == j else t
        case Var():
            return t
        case Lam(b, body):
            return Lam(b, _subst_index(body, j + 1, shift(s, 1)))
        case App(f, a):
            return App(_subst_index(f, j, s), _subst_index(a, j, s))
    raise TypeError(f"not a term: {t!r}")


def instantiate(body: Term, value: Term) -> Term:
    """Body of a binder with index 0 replaced by ``value``."""
    return shift(_subst_index(body, 0, shift(value, 1)), -1)


def occurs_loose(t: Term, i: int) -> bool:
    match t:
        case Bound(j):
            return i == j
        case Var():
            return False
        case Lam(_, body):
            return occurs_loose(body, i + 1)
        case App(f, a):
            return occurs_loose(f, i) or occurs_loose(a, i)
    raise TypeError(f"not a term: {t!r}")


def max_loose(t: Term, depth: int = 0) -> int:
    """Largest dangling index in ``t`` (``-1`` when ``t`` is locally closed)."""
    match t:
        case Bound(j):
            return j - depth if j >= depth else -1
        case Var():
            return -1
        case Lam(_, body):
            return max_loose(body, depth + 1)
        case App(f, a):
            return max(max_loose(f, depth), max_loose(a, depth))
    raise TypeError(f"not a term: {t!r}")


def free_names(t: Term) -> frozenset[str]:
    match t:
        case Var(n):
            return frozenset((n,))
        case Bound():
            return frozenset()
        case Lam(_, body):
            return free_names(body)
        case App(f, a):
            return free_names(f) | free_names(a)
    raise TypeError(f"not a term: {t!r}")


def abstract(name: str, t: Term, depth: int = 0) -> Term:
    """Turn free occurrences of ``name`` into the index bound just outside ``t``."""
    match t:
        case Var(n):
            return Bound(depth) if n == name else t
        case Bound():
            return t
        case Lam(b, body):
            return Lam(b, abstract(name, body, depth + 1))
        case App(f, a):
            return App(abstract(name, f, depth), abstract(name, a, depth))
    raise TypeError(f"not a term: {t!r}")


def lam(name: str, body: Term) -> Lam:
    """``λname.body`` with ``body`` written in terms of the free variable ``name``."""
    return Lam(name, abstract(name, body))


def alpha_eq(t: Term, u: Term) -> bool:
    return t == u


def substitute(body: Term, var: str, value: Term) -> Term:
    """Capture-avoiding ``body[value/var]`` for the free variable ``var``."""

    def go(t: Term, depth: int) -> Term:
        match t:
            case Var(n):
                return shift(value, depth) if n == var else t
            case Bound():
                return t
            case Lam(b, inner):
                return Lam(b, go(inner, depth + 1))
            case App(f, a):
                return App(go(f, depth), go(a, depth))
        raise TypeError(f"not a term: {t!r}")

    return go(body, 0)


def size(t: Term) -> int:
    match t:
        case Lam(_, body):
            return 1 + size(body)
        case App(f, a):
            return 1 + size(f) + size(a)
    return 1


def depth(t: Term) -> int:
    match t:
        case Lam(_, body):
            return 1 + depth(body)
        case App(f, a):
            return 1 + max(depth(f), depth(a))
    return 0


# ---------------------------------------------------------------------------
# positions and contraction

def subterm_at(t: Term, pos: Sequence[str]) -> Term:
    for step in pos:
        match step, t:
            case "body", Lam(_, body):
                t = body
            case "fun", App(f, _):
                t = f
            case "arg", App(_, a):
                t = a
            case _:
                raise ValueError(f"invalid term position {tuple(pos)!r}")
    return t


def replace_at(t: Term, pos: Sequence[str], new: Term) -> Term:
    if not pos:
        return new
    step, rest = pos[0], pos[1:]
    match step, t:
        case "body", Lam(b, body):
            return Lam(b, replace_at(body, rest, new))
        case "fun", App(f, a):
            return App(replace_at(f, rest, new), a)
        case "arg", App(f, a):
            return App(f, replace_at(a, rest, new))
    raise ValueError(f"invalid term position {tuple(pos)!r}")


def is_beta_redex(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fun, Lam)


def is_eta_redex(t: Term) -> bool:
    return (
        isinstance(t, Lam)
        and isinstance(t.body, App)
        and t.body.arg == Bound(0)
        and not occurs_loose(t.body.fun, 0)
    )


def contract_beta(redex: Term) -> Term:
    if not is_beta_redex(redex):
        raise ValueError("not a beta-redex")
    return instantiate(redex.fun.body, redex.arg)


def contract_eta(redex: Term) -> Term:
    if not is_eta_redex(redex):
        raise ValueError("not an eta-redex")
    return shift(redex.body.fun, -1)


def contract(redex: Term, kind: str) -> Term:
    if kind == BETA:
        return contract_beta(redex)
    if kind == ETA:
        return contract_eta(redex)
    raise ValueError(f"unknown contraction kind {kind!r}")


def _preorder(t: Term, pos: TermPosition = ()) -> Iterator[tuple[TermPosition, Term]]:
    stack = [(pos, t)]
    while stack:
        p, u = stack.pop()
        yield p, u
        if isinstance(u, Lam):
            stack.append((p + ("body",), u.body))
        elif isinstance(u, App):
            stack.append((p + ("arg",), u.arg))
            stack.append((p + ("fun",), u.fun))


def _redex_sites(t: Term) -> Iterator[tuple[TermPosition, str]]:
    # eta sites first, then beta sites, each leftmost-outermost
    for p, u in _preorder(t):
        if is_eta_redex(u):
            yield p, ETA
    for p, u in _preorder(t):
        if is_beta_redex(u):
            yield p, BETA


def apply_contraction(t: Term, pos: Sequence[str], kind: str) -> Term:
    return replace_at(t, pos, contract(subterm_at(t, pos), kind))


def contractions(t: Term) -> list[Contraction]:
    """Every one-step beta/eta contraction of ``t``, in normalization order."""
    return [Contraction(p, k, apply_contraction(t, p, k)) for p, k in _redex_sites(t)]


def first_contraction(t: Term) -> Contraction | None:
    for p, k in _redex_sites(t):
        return Contraction(p, k, apply_contraction(t, p, k))
    return None


def normalize_term(t: Term, fuel: int = DEFAULT_TERM_FUEL) -> ReductionTrace:
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    steps: list[Contraction] = []
    cur = t
    while True:
        nxt = first_contraction(cur)
        if nxt is None:
            return ReductionTrace(t, tuple(steps))
        if len(steps) >= fuel:
            raise FuelExhausted(
                f"term not normal after {fuel} steps", ReductionTrace(t, tuple(steps))
            )
        steps.append(nxt)
        cur = nxt.result


def normal_form(t: Term, fuel: int = DEFAULT_TERM_FUEL) -> Term:
    return normalize_term(t, fuel).final


# ---------------------------------------------------------------------------
# surface syntax

IDENT_RE = re.compile(r"[a-z][A-Za-z0-9_]*")
_LAMBDA_KEYWORD = re.compile(r"lam\s+")
_DIGITS = "0123456789"


def fresh_name(hint: str, avoid) -> str:
    """``hint`` if unused, else its base name with the smallest free numeric suffix."""
    if hint not in avoid:
        return hint
    base = hint.rstrip(_DIGITS) or "x"
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def _binder_name(hint: str, body: Term, ctx: Sequence[str]) -> str:
    return fresh_name(hint or "x", free_names(body) | set(ctx))


def show_term(t: Term, style: str = "structural", ctx: Sequence[str] = ()) -> str:
    """Render ``t``. ``ctx`` names the enclosing binders, innermost last.

    ``structural`` output re-parses with :func:`parse_term`; ``paper`` (lambda notation) uses
    ``λ`` and drops spaces that are not needed to separate identifiers.
    """
    if style not in ("structural", "paper"):
        raise ValueError(f"unknown style {style!r}")
    lam_sym = "λ" if style == "paper" else "\\"
    ctx = list(ctx)

    def atom(u: Term) -> str:
        s = go(u)
        return s if isinstance(u, (Var, Bound)) else f"({s})"

    def go(u: Term) -> str:
        match u:
            case Var(n):
                return n
            case Bound(i):
                if i >= len(ctx):
                    return f"#{i - len(ctx)}"
                return ctx[-1 - i]
            case Lam(hint, body):
                name = _binder_name(hint, body, ctx)
                ctx.append(name)
                try:
                    return f"{lam_sym}{name}.{go(body)}"
                finally:
                    ctx.pop()
            case App(f, a):
                left = go(f) if isinstance(f, App) else atom(f)
                right = atom(a)
                if style == "paper" and (left.endswith(")") or right.startswith("(")):
                    return left + right
                return f"{left} {right}"
        raise TypeError(f"not a term: {u!r}")

    return go(t)


class Reader:
    """Cursor over surface text, shared by the term and path parsers."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.scope: list[str] = []

    def offset(self, pos: int | None = None) -> int:
        return len(self.text[: self.pos if pos is None else pos].encode("utf-8"))

    def error(self, message: str, expected=()) -> TermSyntaxError:
        return TermSyntaxError(message, self.offset(), frozenset(expected))

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise self.error("unexpected input" if self.pos < len(self.text) else "unexpected end of input", {repr(token)})
        self.pos += len(token)

    def try_consume(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def ident(self) -> str:
        self.skip_ws()
        m = IDENT_RE.match(self.text, self.pos)
        if not m:
            raise self.error(
                "unexpected input" if self.pos < len(self.text) else "unexpected end of input",
                {"identifier"},
            )
        self.pos = m.end()
        return m.group()

    # -- terms --------------------------------------------------------------

    def _lambda_start(self) -> int:
        """Length of a lambda introducer at the cursor, 0 if none."""
        self.skip_ws()
        c = self.text[self.pos : self.pos + 1]
        if c in ("\\", "λ"):
            return 1
        m = _LAMBDA_KEYWORD.match(self.text, self.pos)
        if m and IDENT_RE.match(self.text, m.end()):
            return m.end() - self.pos
        return 0

    def _atom_start(self) -> bool:
        self.skip_ws()
        if self.pos >= len(self.text):
            return False
        return self.text[self.pos] == "(" or bool(IDENT_RE.match(self.text, self.pos))

    def term(self) -> Term:
        n = self._lambda_start()
        if n:
            self.pos += n
            name = self.ident()
            self.expect(".")
            self.scope.append(name)
            try:
                body = self.term()
            finally:
                self.scope.pop()
            return Lam(name, body)
        t = self.atom()
        while True:
            if self._lambda_start():
                return App(t, self.term())
            if not self._atom_start():
                return t
            t = App(t, self.atom())

    def atom(self) -> Term:
        self.skip_ws()
        if self.try_consume("("):
            t = self.term()
            self.expect(")")
            return t
        if self.pos >= len(self.text) or not IDENT_RE.match(self.text, self.pos):
            raise self.error(
                "unexpected input" if self.pos < len(self.text) else "unexpected end of input",
                {"identifier", "'('", "'\\'"},
            )
        name = self.ident()
        for k, bound in enumerate(reversed(self.scope)):
            if bound == name:
                return Bound(k)
        return Var(name)

    def finish(self) -> None:
        if not self.at_end():
            raise self.error("trailing input", {"end of input"})


def parse_term(text: str) -> Term:
    r = Reader(text)
    t = r.term()
    r.finish()
    return t

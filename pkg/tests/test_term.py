import random

import pytest
from hypothesis import given, strategies as st

from conftest import generator, seeds, terms
from oracles import ref_beta_eta_nf
from pathkit.errors import FuelExhausted, TermSyntaxError
from pathkit.term import (
    App,
    Bound,
    Lam,
    Var,
    alpha_eq,
    apply_contraction,
    contractions,
    free_names,
    normal_form,
    normalize_term,
    parse_term,
    show_term,
    substitute,
)

ID = Lam("x", Bound(0))


class TestParsing:
    @pytest.mark.parametrize("src", [r"\x.x", "λx.x", "lam x. x", r"\ x . x"])
    def test_lambda_introducers(self, src):
        assert parse_term(src) == ID

    def test_application_is_left_associative(self):
        assert parse_term("x y z") == App(App(Var("x"), Var("y")), Var("z"))

    def test_lambda_extends_right(self):
        t = parse_term(r"\x.\y.x y")
        assert t == Lam("x", Lam("y", App(Bound(1), Bound(0))))

    def test_trailing_lambda_argument(self):
        assert parse_term(r"f \x.x") == App(Var("f"), ID)

    def test_shadowing_binds_innermost(self):
        t = parse_term(r"\x.\x.x")
        assert t.body.body == Bound(0)

    @pytest.mark.parametrize(
        "src, offset",
        [(r"\x.", 3), ("(x", 2), ("x )", 2), ("", 0), (r"\1.x", 1), ("λ", 2)],
    )
    def test_syntax_error_offsets_in_bytes(self, src, offset):
        with pytest.raises(TermSyntaxError) as info:
            parse_term(src)
        assert info.value.offset == offset
        assert info.value.expected

    def test_syntax_error_is_value_error(self):
        with pytest.raises(ValueError):
            parse_term(")")


class TestPrinting:
    def test_both_print_styles(self):
        t = parse_term(r"(\y.y x)(\w.z w)")
        assert show_term(t) == r"(\y.y x) (\w.z w)"
        assert show_term(t, "paper") == "(λy.y x)(λw.z w)"

    def test_binder_renamed_away_from_free_names(self):
        t = Lam("x", App(Var("x"), Bound(0)))
        assert show_term(t) == r"\x1.x x1"

    def test_unknown_style(self):
        with pytest.raises(ValueError):
            show_term(ID, "fancy")

    @given(terms)
    def test_round_trip(self, t):
        assert parse_term(show_term(t)) == t
        assert parse_term(show_term(t, "paper")) == t


class TestAlphaAndSubstitution:
    def test_alpha_equivalence_ignores_binder_names(self):
        assert alpha_eq(parse_term(r"\x.x"), parse_term(r"\y.y"))
        assert not alpha_eq(parse_term(r"\x.\y.x"), parse_term(r"\x.\y.y"))

    def test_substitution_avoids_capture(self):
        out = substitute(parse_term(r"\z.y z"), "y", Var("z"))
        assert out == Lam("z", App(Var("z"), Bound(0)))
        assert show_term(out) == r"\z1.z z1"

    def test_substitution_leaves_other_names(self):
        assert substitute(parse_term("x y"), "x", Var("w")) == parse_term("w y")

    @given(terms, terms)
    def test_substituting_absent_name_is_identity(self, t, v):
        name = "fresh_name_q"
        assert name not in free_names(t)
        assert substitute(t, name, v) == t


class TestContraction:
    def test_worked_example_redexes(self):
        cs = contractions(parse_term(r"(\y.y x)(\w.z w)"))
        assert [(c.position, c.kind) for c in cs] == [(("arg",), "eta"), ((), "beta")]

    def test_eta_side_condition(self):
        assert contractions(parse_term(r"\x.x x")) == []

    def test_identity_step(self):
        trace = normalize_term(parse_term(r"(\x.x) z"), 10)
        assert len(trace) == 1 and trace.steps[0].kind == "beta"
        assert trace.final == Var("z")

    def test_normal_term_has_empty_trace(self):
        trace = normalize_term(ID, 10)
        assert len(trace) == 0 and trace.final == ID

    def test_omega_exhausts_fuel_with_partial_trace(self):
        with pytest.raises(FuelExhausted) as info:
            normalize_term(parse_term(r"(\x.x x)(\x.x x)"), 10)
        assert len(info.value.partial.steps) == 10

    @given(terms)
    def test_normal_form_has_no_redex(self, t):
        nf = normal_form(t)
        assert contractions(nf) == []
        assert normal_form(nf) == nf

    @given(terms)
    def test_matches_named_reference_reducer(self, t):
        assert normal_form(t) == ref_beta_eta_nf(t)

    @given(seeds)
    def test_strategy_independence(self, seed):
        t = generator(seed, term_depth=6).term()
        rng = random.Random(seed)
        cur = t
        for _ in range(10_000):
            cs = contractions(cur)
            if not cs:
                break
            c = rng.choice(cs)
            cur = apply_contraction(cur, c.position, c.kind)
        assert alpha_eq(cur, normal_form(t))

    @given(terms)
    def test_trace_steps_replay(self, t):
        trace = normalize_term(t)
        cur = t
        for c in trace.steps:
            cur = apply_contraction(cur, c.position, c.kind)
            assert cur == c.result

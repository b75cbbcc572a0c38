import pytest
from hypothesis import given

from conftest import generator, seeds
from pathkit.errors import (
    EndpointDrift,
    Incomposable,
    JunctionMismatch,
    OracleBudgetExhausted,
    ShapeMismatch,
    StepMismatch,
)
from pathkit.path import BetaStep, Rho, Sigma, Tau
from pathkit.rewrite import FORWARD, RwStepRecord
from pathkit.term import parse_term
from pathkit.twocell import (
    RwSequence,
    cd2_canonicalize,
    check_interchange,
    check_pentagon,
    check_triangle,
    coherence_component,
    hcomp,
    identity,
    infer_sequence,
    interchange_sides,
    mk_sequence,
    oracle_verdict,
    pentagon_routes,
    reverse2,
    rw2_eq,
    triangle_routes,
    vcomp,
)

A = parse_term(r"(\x.x) z")
B = parse_term("z")
R = BetaStep(A)  # a -> b

# τ(s, t) with s ▷ s' (trr) and t ▷ t' (ss)
S, S1 = Tau(R, Rho(B)), R
T, T1 = Sigma(Sigma(Sigma(R))), Sigma(R)
LEFT_FIRST = [Tau(S, T), Tau(S1, T), Tau(S1, T1)]
RIGHT_FIRST = [Tau(S, T), Tau(S, T1), Tau(S1, T1)]


def _walk_cell(gen, p, n=3) -> RwSequence:
    entries, steps = gen.walk(p, n)
    return mk_sequence(entries, steps)


class TestConstruction:
    def test_infer_and_validate(self):
        a = infer_sequence(LEFT_FIRST)
        assert [s.rule for s in a.steps] == ["trr", "ss"]
        assert [s.position for s in a.steps] == [("first",), ("second",)]

    def test_step_mismatch(self):
        bad = RwStepRecord(("first",), "tlr", FORWARD, LEFT_FIRST[0], LEFT_FIRST[1])
        with pytest.raises(StepMismatch) as info:
            mk_sequence(LEFT_FIRST[:2], [bad])
        assert info.value.index == 0

    def test_endpoint_drift(self):
        step = RwStepRecord((), "ss", FORWARD, Rho(A), Rho(B))
        with pytest.raises(EndpointDrift):
            mk_sequence([Rho(A), Rho(B)], [step])

    def test_no_connecting_step(self):
        with pytest.raises(StepMismatch):
            infer_sequence([Tau(S, T), Tau(S1, T1)])

    def test_step_count(self):
        with pytest.raises(ValueError):
            RwSequence((R,), (RwStepRecord((), "ss", FORWARD, R, R),))
        with pytest.raises(ValueError):
            RwSequence(())


class TestStrictGroupoid:
    @given(seeds)
    def test_units_associativity_inverse(self, seed):
        gen = generator(seed)
        a = _walk_cell(gen, gen.path())
        b = _walk_cell(gen, a.last)
        c = _walk_cell(gen, b.last)
        assert vcomp(identity(a.first), a).same_as(a)
        assert vcomp(a, identity(a.last)).same_as(a)
        assert vcomp(vcomp(a, b), c).same_as(vcomp(a, vcomp(b, c)))
        assert reverse2(reverse2(a)).same_as(a)
        assert cd2_canonicalize(vcomp(a, reverse2(a))).same_as(identity(a.first))

    def test_junction(self):
        with pytest.raises(JunctionMismatch):
            vcomp(identity(R), identity(Rho(A)))

    def test_reverse_is_valid(self):
        a = infer_sequence(LEFT_FIRST)
        r = reverse2(a)
        mk_sequence(r.entries, r.steps)
        assert r.first == a.last and r.last == a.first


class TestHorizontal:
    def test_shape(self):
        alpha = infer_sequence([S, S1])
        theta = infer_sequence([T, T1])
        h = hcomp(alpha, theta)
        assert len(h) == len(alpha) + len(theta) - 1
        assert h.first == Tau(S, T) and h.last == Tau(S1, T1)
        assert h.same_as(infer_sequence(LEFT_FIRST))
        mk_sequence(h.entries, h.steps)

    def test_incomposable(self):
        with pytest.raises(Incomposable):
            hcomp(identity(R), identity(R))

    @given(seeds)
    def test_random_cells(self, seed):
        gen = generator(seed)
        s, r = gen.composable(2)
        h = hcomp(_walk_cell(gen, s), _walk_cell(gen, r))
        mk_sequence(h.entries, h.steps)


class TestCd2:
    def test_worked_orders_are_equal(self):
        a, b = infer_sequence(LEFT_FIRST), infer_sequence(RIGHT_FIRST)
        assert not a.same_as(b)
        assert rw2_eq(a, b, "canonical")
        assert rw2_eq(a, b, "oracle")

    def test_first_component_scheduled_first(self):
        out = cd2_canonicalize(infer_sequence(RIGHT_FIRST))
        assert [s.position[0] for s in out.steps] == ["first", "second"]

    def test_different_endpoints(self):
        a = infer_sequence(LEFT_FIRST)
        assert not rw2_eq(a, identity(a.first))
        assert oracle_verdict(a, identity(a.first)) == "different"

    def test_critical_pair_needs_oracle(self):
        # τ(ρ, ρ) contracts to ρ by trr and by tlr at the same position
        p = Tau(Rho(A), Rho(A))
        by_trr = mk_sequence([p, Rho(A)], [RwStepRecord((), "trr", FORWARD, p, Rho(A))])
        by_tlr = mk_sequence([p, Rho(A)], [RwStepRecord((), "tlr", FORWARD, p, Rho(A))])
        assert not rw2_eq(by_trr, by_tlr, "canonical")
        assert rw2_eq(by_trr, by_tlr, "oracle")

    def test_budget(self):
        a, b = infer_sequence(LEFT_FIRST), infer_sequence(RIGHT_FIRST)
        with pytest.raises(OracleBudgetExhausted):
            rw2_eq(vcomp(a, reverse2(b)), identity(a.first), "oracle", cap=1)
        assert oracle_verdict(vcomp(a, reverse2(b)), identity(a.first), cap=1) == "unknown"

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            rw2_eq(identity(R), identity(R), "fuzzy")

    @given(seeds)
    def test_canonical_form_idempotent_and_replayable(self, seed):
        gen = generator(seed)
        s, r = gen.composable(2)
        cell = hcomp(_walk_cell(gen, s), _walk_cell(gen, r))
        out = cd2_canonicalize(cell)
        mk_sequence(out.entries, out.steps)
        assert out.first == cell.first and out.last == cell.last
        assert cd2_canonicalize(out).same_as(out)
        assert len(out.steps) <= len(cell.steps)


class TestCoherence:
    def test_assoc_component(self):
        p = Tau(R, Tau(Sigma(R), R))
        c = coherence_component("assoc", p)
        assert c.last == Tau(Tau(R, Sigma(R)), R)
        assert c.steps[0].rule == "tt" and c.steps[0].direction == "reverse"
        mk_sequence(c.entries, c.steps)

    def test_unit_components(self):
        assert coherence_component("left_unit", Tau(R, Rho(B))).last == R
        assert coherence_component("right_unit", Tau(Rho(A), R)).last == R

    @pytest.mark.parametrize(
        "kind, at",
        [("assoc", R), ("left_unit", Tau(R, Sigma(R))), ("right_unit", Tau(R, Rho(B))), ("left_unit", Tau(R, Rho(A)))],
    )
    def test_shape_mismatch(self, kind, at):
        with pytest.raises(ShapeMismatch):
            coherence_component(kind, at)

    def test_pentagon_instance(self):
        right, left, target = pentagon_routes(R, Sigma(R), R, Sigma(R))
        assert right.last == left.last == target
        assert len(right.steps) == 3 and len(left.steps) == 2
        report = check_pentagon(R, Sigma(R), R, Sigma(R))
        assert report.passed and report.oracle_verdicts["confirmed"] == 1

    def test_triangle_instance(self):
        via_assoc, direct, target = triangle_routes(Sigma(R), R)
        assert via_assoc.last == direct.last == target == Tau(R, Sigma(R))
        report = check_triangle(Sigma(R), R)
        assert report.passed and report.oracle_verdicts["confirmed"] == 1

    def test_incomposable_tuple(self):
        with pytest.raises(Incomposable):
            check_pentagon(R, R, R, R)

    @given(seeds)
    def test_pentagon_and_triangle_endpoints(self, seed):
        s, r, p, u = generator(seed, path_depth=3).composable(4)
        right, left, target = pentagon_routes(s, r, p, u)
        assert right.last == target and left.last == target
        a, b, t = triangle_routes(r, s)
        assert a.last == t and b.last == t


class TestInterchange:
    def test_report(self):
        alpha = infer_sequence([S, S1])
        theta = infer_sequence([T, T1])
        rep = check_interchange(alpha, theta, identity(alpha.last), identity(theta.last), mode="oracle")
        assert rep.passed and rep.oracle_verdicts["confirmed"] == 1

    @given(seeds)
    def test_canonical(self, seed):
        gen = generator(seed, path_depth=3)
        s, r = gen.composable(2)
        alpha = _walk_cell(gen, s, 2)
        chi = _walk_cell(gen, alpha.last, 2)
        theta = _walk_cell(gen, r, 2)
        phi = _walk_cell(gen, theta.last, 2)
        lhs, rhs = interchange_sides(alpha, theta, chi, phi)
        assert rw2_eq(lhs, rhs)

"""
Tests for default_reasoner/engines/lcd.py

Covers:
  - Violation terms of single worlds and of world sets
  - Constraint generation, rendering and the two rule-level failures
  - The round-based class solver: classes, rounds, equalities, leftovers,
    held-back terms, stalls on inconsistent bases and the stratum-degree
    fallback on consistent ones
  - Queries: verdicts, confirming/refuting terms, preferred models
  - Every consistent random base compiles and satisfies its own constraints
"""
import pytest

from default_reasoner.engines.lcd import (
    LcdConstraint,
    LcdSolver,
    compile_lcd,
    entails_lcd,
    gen_constraints,
    preferred_models,
    query_lcd,
    solve,
    stratum_system,
    verify,
    viol_term,
    violation_terms,
)
from default_reasoner.engines.magnitude import UNIT, EpsTerm, OrderVerdict, compare, compare_max
from default_reasoner.engines.system_z import stratify
from default_reasoner.errors import LcdConstraintError, LcdSolveError, UnsatisfiableQueryError
from default_reasoner.knowledge_base import parse_kb
from default_reasoner.logic import TRUE, WorldSet, models
from default_reasoner.parser import parse_formula

e1, e2, e3, e4 = (EpsTerm.of(i) for i in range(1, 5))


def ask(model, alpha, beta):
    vocab = model.base.vocabulary
    return query_lcd(model, parse_formula(alpha, vocab), parse_formula(beta, vocab))


# ---------------------------------------------------------------------------
# Violation terms
# ---------------------------------------------------------------------------

class TestViolationTerms:

    @pytest.mark.parametrize("name, world, term", [
        ("penguin", 3, UNIT),
        ("penguin", 5, e1),
        ("penguin", 6, e2 * e3),
        ("penguin", 7, e2),
        ("quaker2", 3, e1 * e2),
        ("quaker2", 6, e3),
    ])
    def test_single_worlds(self, fixture_base, name, world, term):
        assert viol_term(fixture_base(name), world) == term

    def test_universe_partition(self, fixture_base):
        groups = violation_terms(fixture_base("penguin"))
        expected = {
            UNIT: [0, 2, 3],
            e1: [1, 5],
            e3: [4],
            e2 * e3: [6],
            e2: [7],
        }
        assert groups == {t: WorldSet.of(3, ws) for t, ws in expected.items()}

    def test_worlds_over_a_grown_vocabulary_are_projected(self, fixture_base):
        base = fixture_base("penguin")
        alpha = parse_formula("b & !f & red", base.vocabulary)
        groups = violation_terms(base, models(alpha, base.vocabulary))
        assert set(groups) == {e1}


# ---------------------------------------------------------------------------
# Constraints
# ---------------------------------------------------------------------------

class TestGenConstraints:

    @pytest.mark.parametrize("name, rendered", [
        ("penguin", ["1 >> e1", "max{e1, e3} >> e2", "max{e1, e2} >> e3"]),
        ("legs", ["1 >> e1", "max{e1, e3} >> e2", "max{e1, e2} >> e3", "1 >> e4"]),
        ("wings", ["1 >> e1", "max{e1, e3} >> e2", "max{e1, e2} >> e3", "1 >> e4"]),
        ("quaker2", ["1 >> e1*e2", "1 >> e1*e2", "1 >> e3"]),
        ("ecologist", ["1 >> e1", "1 >> e2", "1 >> e3"]),
        ("single", ["1 >> e1"]),
        ("empty", []),
    ])
    def test_rendering(self, fixture_base, name, rendered):
        constraints = gen_constraints(fixture_base(name))
        assert [str(c) for c in constraints] == rendered, f"{name}: constraints drifted"

    def test_rule_ids_carried(self, fixture_base):
        assert [c.rule_id for c in gen_constraints(fixture_base("legs"))] == [1, 2, 3, 4]

    def test_unsatisfiable_rule_rejected(self):
        base = parse_kb("a ~> b\na ~> !a\n")
        with pytest.raises(LcdConstraintError) as info:
            gen_constraints(base)
        assert info.value.rule_id == 2

    def test_rule_without_refuting_world_is_skipped(self):
        base = parse_kb("a ~> b\na ~> a | b\n")
        assert [c.rule_id for c in gen_constraints(base)] == [1]


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------

class TestSolver:

    @pytest.mark.parametrize("name, classes", [
        ("penguin", "ξ0 = {e1}; ξ1 = {e2, e3}"),
        ("legs", "ξ0 = {e1, e4}; ξ1 = {e2, e3}"),
        ("wings", "ξ0 = {e1, e4}; ξ1 = {e2, e3}"),
        ("quaker2", "ξ0 = {e1*e2, e3}"),
        ("ecologist", "ξ0 = {e1, e2, e3}"),
        ("single", "ξ0 = {e1}"),
    ])
    def test_classes(self, fixture_base, name, classes):
        assert compile_lcd(fixture_base(name)).describe_classes() == classes

    def test_penguin_rounds(self, fixture_base):
        rounds = compile_lcd(fixture_base("penguin")).rounds
        assert [(r.number, r.discharged, r.class_terms) for r in rounds] == [
            (0, (1,), (e1,)),
            (1, (2, 3), (e2, e3)),
        ]

    def test_quakers_split_the_product_evenly(self, fixture_base):
        model = compile_lcd(fixture_base("quaker2"))
        assert (e1, e2) in model.system.equalities
        degrees = model.system.integer_degrees()
        assert degrees[1] == degrees[2]
        assert degrees[3] == degrees[1] + degrees[2]
        assert model.warnings == ()

    def test_unconstrained_rule_joins_the_final_class(self):
        model = compile_lcd(parse_kb("a ~> b\na ~> a | b\n"))
        assert model.attached == (2,)
        assert model.describe_classes() == "ξ0 = {e1, e2}"

    def test_empty_base(self, fixture_base):
        model = compile_lcd(fixture_base("empty"))
        assert model.system.classes == ()
        assert model.rounds == ()

    def test_inconsistent_base_stalls(self, fixture_base):
        base = fixture_base("inconsistent")
        assert [str(c) for c in gen_constraints(base)] == ["e2 >> e1", "e1 >> e2"]
        with pytest.raises(LcdSolveError) as info:
            compile_lcd(base)
        assert info.value.active == (1, 2)

    def test_solver_on_explicit_constraints(self, fixture_base):
        base = fixture_base("penguin")
        solver = LcdSolver(gen_constraints(base), base.ids)
        system, rounds = solver.run()
        assert len(rounds) == 2
        assert system.class_index(e3) == 1

    def test_every_constraint_verified(self, reasoners):
        model = reasoners["wings"].lcd_model
        for c in model.constraints:
            assert compare_max(model.system, c.lhs, c.rhs) is OrderVerdict.GREATER, f"{c} fails"

    def test_term_waits_while_an_active_constraint_holds_it(self):
        e2e5 = EpsTerm.of(2, 5)
        constraints = [
            LcdConstraint(2, (UNIT,), (e2e5,)),
            LcdConstraint(4, (UNIT,), (e4,)),
            LcdConstraint(5, (e4,), (e2e5,)),
        ]
        system, rounds = LcdSolver(constraints, (2, 4, 5)).run()
        assert [(r.number, r.discharged, r.class_terms) for r in rounds] == [
            (0, (2, 4), (e4,)),
            (1, (5,), (e2e5,)),
        ]
        assert compare(system, e4, e2e5) is OrderVerdict.GREATER

    def test_mixed_base_keeps_products_below_their_guard(self):
        base = parse_kb("c ~> !b\n!b ~> c\n!c & b ~> !a\nc | b | a ~> c\n!c ~> b\n")
        assert [str(c) for c in gen_constraints(base)] == [
            "1 >> e1", "1 >> e2*e5", "e4 >> e3*e4", "1 >> e4", "e4 >> e2*e5",
        ]
        model = compile_lcd(base)
        assert model.warnings == ()
        assert model.describe_classes() == "ξ0 = {e1, e4}; ξ1 = {e2*e5, e3*e4}"
        assert [r.discharged for r in model.rounds] == [(1, 2, 4), (3, 5)]

    def test_stalled_rounds_fall_back_to_stratum_degrees(self):
        base = parse_kb("a ~> b\nc ~> d\na & c ~> !b\n")
        constraints = [
            LcdConstraint(1, (UNIT,), (e1,)),
            LcdConstraint(2, (UNIT,), (e2,)),
            LcdConstraint(3, (e1 * e2,), (e3,)),
        ]
        with pytest.raises(LcdSolveError) as info:
            LcdSolver(constraints, base.ids).run()
        assert info.value.active == (3,)

        model = solve(constraints, base)
        assert model.describe_classes() == "ξ0 = {e1, e2}; ξ1 = {e3}"
        assert [r.note for r in model.rounds] == ["stratum degrees", "stratum degrees"]
        assert len(model.warnings) == 1 and "stratum degrees" in model.warnings[0]
        assert compare_max(model.system, (e1 * e2,), (e3,)) is OrderVerdict.GREATER

    @pytest.mark.parametrize("name", ["penguin", "legs", "wings", "quaker2", "ecologist"])
    def test_stratum_degrees_satisfy_every_constraint(self, fixture_base, name):
        base = fixture_base(name)
        verify(stratum_system(stratify(base)), gen_constraints(base))

    def test_right_terms_hold_their_own_rule(self, random_suite):
        for case in random_suite:
            for c in gen_constraints(case.base):
                assert all(c.rule_id in t.factors for t in c.rhs), f"{case.case_id}: {c}"


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------

class TestQueries:

    @pytest.mark.parametrize("name, alpha, beta, entailed, verdict", [
        ("penguin", "b & p", "!f", True, OrderVerdict.GREATER),
        ("penguin", "b & p", "f", False, OrderVerdict.SMALLER),
        ("legs", "p", "l", True, OrderVerdict.GREATER),
        ("wings", "b & p & m", "!f", False, OrderVerdict.INCOMPARABLE),
        ("wings", "b & p & m", "f", False, OrderVerdict.INCOMPARABLE),
        ("quaker2", "q & r", "pa", False, OrderVerdict.SAME_ORDER),
        ("quaker2", "q & r", "!pa", False, OrderVerdict.SAME_ORDER),
        ("ecologist", "q & e & r", "pa", True, OrderVerdict.GREATER),
    ])
    def test_verdicts(self, fixture_base, name, alpha, beta, entailed, verdict):
        answer = ask(compile_lcd(fixture_base(name)), alpha, beta)
        assert answer.entailed is entailed
        assert answer.verdict is verdict, f"{name}: {alpha} ~> {beta} gave {answer.verdict}"

    def test_wings_terms(self, fixture_base):
        answer = ask(compile_lcd(fixture_base("wings")), "b & p & m", "!f")
        assert answer.confirming == (e1 * e4,)
        assert answer.refuting == (e2,)

    def test_irrelevant_atom(self, fixture_base):
        answer = ask(compile_lcd(fixture_base("penguin")), "b & r", "f")
        assert answer.entailed

    def test_unsatisfiable_antecedent(self, fixture_base):
        answer = ask(compile_lcd(fixture_base("penguin")), "p & !p", "f")
        assert answer.entailed and answer.verdict is None

    def test_tautology_consequent_needs_no_comparison(self, fixture_base):
        answer = ask(compile_lcd(fixture_base("penguin")), "b", "f | !f")
        assert answer.entailed and answer.verdict is None

    def test_entails_lcd_matches_query(self, fixture_base):
        model = compile_lcd(fixture_base("legs"))
        vocab = model.base.vocabulary
        assert entails_lcd(model, parse_formula("p", vocab), parse_formula("l", vocab))


class TestPreferredModels:

    def test_penguins(self, fixture_base):
        model = compile_lcd(fixture_base("penguin"))
        alpha = parse_formula("b & p", model.base.vocabulary)
        assert preferred_models(model, alpha) == WorldSet.of(3, [5])

    def test_whole_universe(self, fixture_base):
        model = compile_lcd(fixture_base("penguin"))
        assert preferred_models(model, TRUE) == WorldSet.of(3, [0, 2, 3])

    def test_incomparable_terms_both_kept(self, fixture_base):
        model = compile_lcd(fixture_base("wings"))
        alpha = parse_formula("b & p & m", model.base.vocabulary)
        assert preferred_models(model, alpha) == WorldSet.of(4, [13, 15])

    def test_unsatisfiable(self, fixture_base):
        model = compile_lcd(fixture_base("penguin"))
        with pytest.raises(UnsatisfiableQueryError):
            preferred_models(model, parse_formula("false", model.base.vocabulary))


# ---------------------------------------------------------------------------
# Random suite
# ---------------------------------------------------------------------------

class TestRandomSuite:

    def test_every_consistent_base_compiles(self, compiled_suite):
        failed = [(case.case_id, error) for case, model, error in compiled_suite if model is None]
        assert not failed, f"no LCD model for {len(failed)} consistent bases: {failed[:3]}"

    def test_stratum_fallbacks_are_flagged(self, compiled_suite):
        for case, model, _ in compiled_suite:
            if model is not None and any(r.note == "stratum degrees" for r in model.rounds):
                assert any("stratum degrees" in w for w in model.warnings), case.case_id

    def test_compiled_models_satisfy_their_constraints(self, compiled_suite):
        broken = []
        for case, model, _ in compiled_suite:
            if model is None:
                continue
            for c in model.constraints:
                if compare_max(model.system, c.lhs, c.rhs) is not OrderVerdict.GREATER:
                    broken.append((case.case_id, str(c)))
        assert not broken, f"Unverified constraints: {broken[:3]}"

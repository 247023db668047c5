"""
Tests for default_reasoner/logic.py

Covers:
  - WorldSet algebra, projection and lifting across vocabularies
  - Vocabulary registration, capacity and world rendering
  - Model enumeration for every connective
  - DefaultBase construction, violations, with_rule and reordering
  - non_dominated selection
"""
import pytest

from default_reasoner.errors import VocabularyError
from default_reasoner.logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    DefaultBase,
    Iff,
    Implies,
    Not,
    Or,
    Vocabulary,
    WorldSet,
    material,
    models,
    non_dominated,
)


# ---------------------------------------------------------------------------
# WorldSet
# ---------------------------------------------------------------------------

class TestWorldSet:

    def test_full_and_empty_sizes(self):
        assert len(WorldSet.full(3)) == 8
        assert len(WorldSet.empty(3)) == 0
        assert WorldSet.empty(3).is_empty()

    def test_zero_atom_universe_has_one_world(self):
        assert list(WorldSet.full(0)) == [0]

    def test_set_algebra(self):
        a = WorldSet.of(2, [0, 1])
        b = WorldSet.of(2, [1, 2])
        assert list(a & b) == [1]
        assert list(a | b) == [0, 1, 2]
        assert list(a - b) == [0]
        assert list(~a) == [2, 3]

    def test_subset_and_disjoint(self):
        small = WorldSet.of(2, [1])
        big = WorldSet.of(2, [1, 3])
        assert small.issubset(big)
        assert not big.issubset(small)
        assert small.isdisjoint(WorldSet.of(2, [0, 2]))

    def test_mixing_universes_is_rejected(self):
        with pytest.raises(ValueError):
            WorldSet.full(2) & WorldSet.full(3)

    def test_world_outside_universe_rejected(self):
        with pytest.raises(ValueError):
            WorldSet.of(2, [4])

    def test_project_forgets_high_atoms(self):
        # world 5 = atoms 0 and 2 true; dropping atom 2 leaves world 1
        assert WorldSet.of(3, [5]).project(2) == WorldSet.of(2, [1])

    def test_lift_is_preimage_of_project(self):
        assert WorldSet.of(2, [1]).lift(3) == WorldSet.of(3, [1, 5])

    def test_project_of_lift_is_identity(self):
        original = WorldSet.of(3, [0, 3, 6])
        assert original.lift(5).project(3) == original

    def test_project_to_larger_universe_rejected(self):
        with pytest.raises(ValueError):
            WorldSet.full(2).project(3)


# ---------------------------------------------------------------------------
# Vocabulary
# ---------------------------------------------------------------------------

class TestVocabulary:

    def test_indices_follow_registration_order(self):
        vocab = Vocabulary(["b", "f", "p"])
        assert [vocab.index(a) for a in ("b", "f", "p")] == [0, 1, 2]

    def test_reregistering_is_a_no_op(self):
        vocab = Vocabulary(["a"])
        assert vocab.register("a") == 0
        assert len(vocab) == 1

    def test_capacity_failure_registers_nothing(self):
        vocab = Vocabulary(["a", "b"], capacity=3)
        with pytest.raises(VocabularyError):
            vocab.register_all(["c", "d"])
        assert vocab.atoms == ("a", "b"), f"Partial registration leaked: {vocab.atoms}"

    @pytest.mark.parametrize("name", ["1a", "a-b", "true", "false", ""])
    def test_invalid_names_rejected(self, name):
        with pytest.raises(VocabularyError):
            Vocabulary([name])

    def test_unknown_atom_lookup_fails(self):
        with pytest.raises(VocabularyError):
            Vocabulary(["a"]).index("z")

    def test_describe_renders_literals(self):
        vocab = Vocabulary(["b", "f", "p"])
        assert vocab.describe(5) == "b !f p"
        assert vocab.describe(5, 2) == "b !f"


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------

class TestModels:

    @pytest.fixture
    def vocab(self):
        return Vocabulary(["a", "b"])

    @pytest.mark.parametrize("formula, expected", [
        (Atom("a"), [1, 3]),
        (Not(Atom("a")), [0, 2]),
        (And((Atom("a"), Atom("b"))), [3]),
        (Or((Atom("a"), Atom("b"))), [1, 2, 3]),
        (Implies(Atom("a"), Atom("b")), [0, 2, 3]),
        (Iff(Atom("a"), Atom("b")), [0, 3]),
        (TRUE, [0, 1, 2, 3]),
        (FALSE, []),
    ])
    def test_connectives(self, vocab, formula, expected):
        assert list(models(formula, vocab)) == expected, f"Wrong models for {formula}"

    def test_models_over_prefix_of_vocabulary(self, vocab):
        vocab.register("c")
        assert models(Atom("a"), vocab, 2) == WorldSet.of(2, [1, 3])

    def test_atom_outside_prefix_rejected(self, vocab):
        vocab.register("c")
        with pytest.raises(VocabularyError):
            models(Atom("c"), vocab, 2)

    def test_operator_sugar(self, vocab):
        a, b = Atom("a"), Atom("b")
        assert models(a & ~b, vocab) == WorldSet.of(2, [1])
        assert models(a | b, vocab) == models(Or((a, b)), vocab)


# ---------------------------------------------------------------------------
# DefaultBase
# ---------------------------------------------------------------------------

class TestDefaultBase:

    @pytest.fixture
    def penguin(self):
        vocab = Vocabulary(["b", "f", "p"])
        b, f, p = Atom("b"), Atom("f"), Atom("p")
        return DefaultBase.build([(b, f), (p, Not(f)), (p, b)], vocab)

    def test_ids_are_one_based(self, penguin):
        assert penguin.ids == (1, 2, 3)
        assert str(penguin.rule(2)) == "p ~> !f"

    def test_material_counterpart(self, penguin):
        assert models(material(penguin.rule(1)), penguin.vocabulary) == WorldSet.of(
            3, [0, 2, 3, 4, 6, 7]
        )

    def test_violations_are_complements_of_materials(self, penguin):
        violations = penguin.violations()
        assert list(violations[1]) == [1, 5], "b ~> f is violated exactly by b & !f"
        assert list(violations[2]) == [6, 7]
        assert list(violations[3]) == [4, 6]

    def test_vocabulary_growth_keeps_universe(self, penguin):
        penguin.vocabulary.register("r")
        assert penguin.n_atoms == 3
        assert penguin.universe() == WorldSet.full(3)

    def test_with_rule_uses_current_vocabulary(self, penguin):
        penguin.vocabulary.register("r")
        extended = penguin.with_rule(Atom("r"), Atom("f"))
        assert len(extended) == 4
        assert extended.n_atoms == 4

    def test_reordered_renumbers(self, penguin):
        moved = penguin.reordered([3, 1, 2])
        assert str(moved.rule(1)) == "p ~> b"
        assert str(moved.rule(3)) == "p ~> !f"

    def test_reordered_requires_permutation(self, penguin):
        with pytest.raises(ValueError):
            penguin.reordered([1, 1, 2])

    def test_rule_outside_base_universe_rejected(self):
        vocab = Vocabulary(["a"])
        with pytest.raises(VocabularyError):
            DefaultBase.build([(Atom("a"), Atom("z"))], vocab)


class TestNonDominated:

    def test_keeps_only_unbeaten(self):
        assert non_dominated([3, 1, 2], lambda x, y: x > y) == [3]

    def test_partial_order_keeps_incomparable(self):
        better = lambda x, y: x != y and x % 2 == y % 2 and x > y
        assert sorted(non_dominated([1, 2, 3, 4], better)) == [3, 4]

    def test_duplicates_collapse(self):
        assert non_dominated([1, 1], lambda x, y: False) == [1]

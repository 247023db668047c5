"""
Tests for the formula grammar and knowledge-base files:
  - default_reasoner/parser.py
  - default_reasoner/knowledge_base.py

Covers precedence and associativity, canonical printing, positioned syntax
errors, atom registration, .kb headers/comments and line-numbered errors.
"""
import pytest

from default_reasoner.errors import FormulaSyntaxError, KnowledgeBaseSyntaxError
from default_reasoner.knowledge_base import (
    available_fixtures,
    fixture_path,
    load_fixture,
    load_kb,
    parse_kb,
)
from default_reasoner.logic import FALSE, TRUE, And, Atom, Iff, Implies, Not, Or, Vocabulary, to_text
from default_reasoner.parser import parse_formula, parse_rule

a, b, c = Atom("a"), Atom("b"), Atom("c")


# ---------------------------------------------------------------------------
# Grammar
# ---------------------------------------------------------------------------

class TestFormulaGrammar:

    @pytest.mark.parametrize("text, expected", [
        ("a", a),
        ("!a", Not(a)),
        ("!!a", Not(Not(a))),
        ("a & b & c", And((a, b, c))),
        ("a | b & c", Or((a, And((b, c))))),
        ("!a & b", And((Not(a), b))),
        ("a -> b -> c", Implies(a, Implies(b, c))),
        ("(a -> b) -> c", Implies(Implies(a, b), c)),
        ("a <-> b", Iff(a, b)),
        ("a | b -> c", Implies(Or((a, b)), c)),
        ("true", TRUE),
        ("false", FALSE),
        ("trueish", Atom("trueish")),
    ])
    def test_parses(self, text, expected):
        assert parse_formula(text, Vocabulary()) == expected, f"Wrong tree for {text!r}"

    @pytest.mark.parametrize("text", [
        "a & b | c",
        "a -> b -> c",
        "(a -> b) -> c",
        "!(a & b)",
        "(a & b) & c",
        "a <-> b <-> c",
        "!a | b & !c -> a",
    ])
    def test_canonical_text_reparses_to_same_tree(self, text):
        tree = parse_formula(text, Vocabulary())
        assert parse_formula(to_text(tree), Vocabulary()) == tree, (
            f"{text!r} printed as {to_text(tree)!r} does not read back"
        )

    def test_canonical_text_drops_redundant_parentheses(self):
        assert to_text(parse_formula("((a)) & (b)", Vocabulary())) == "a & b"
        assert to_text(parse_formula("a -> (b -> c)", Vocabulary())) == "a -> b -> c"

    @pytest.mark.parametrize("text", ["", "a &", "& a", "(a", "a b", "a ~> b", "a -> "])
    def test_syntax_errors(self, text):
        with pytest.raises(FormulaSyntaxError):
            parse_formula(text, Vocabulary())

    def test_syntax_error_carries_position(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_formula("a & (b |", Vocabulary())
        assert info.value.text == "a & (b |"
        assert info.value.position >= 0

    def test_failed_parse_registers_nothing(self):
        vocab = Vocabulary()
        with pytest.raises(FormulaSyntaxError):
            parse_formula("x & ", vocab)
        assert len(vocab) == 0

    def test_new_atoms_appended_in_order(self):
        vocab = Vocabulary(["b"])
        parse_formula("z & b & y", vocab)
        assert vocab.atoms == ("b", "z", "y")

    def test_rule_split_on_arrow(self):
        antecedent, consequent = parse_rule("b & p ~> !f", Vocabulary())
        assert antecedent == And((Atom("b"), Atom("p")))
        assert consequent == Not(Atom("f"))

    def test_rule_with_implication_inside(self):
        antecedent, consequent = parse_rule("a -> b ~> c", Vocabulary())
        assert antecedent == Implies(a, b)
        assert consequent == c


# ---------------------------------------------------------------------------
# Knowledge-base files
# ---------------------------------------------------------------------------

class TestKnowledgeBaseFiles:

    def test_header_fixes_atom_order(self):
        base = parse_kb("atoms: p f b\nb ~> f\n")
        assert base.vocabulary.atoms == ("p", "f", "b")
        assert base.n_atoms == 3

    def test_comments_and_blank_lines_ignored(self):
        base = parse_kb("# birds\n\nb ~> f   # usually\n\n")
        assert len(base) == 1
        assert str(base.rule(1)) == "b ~> f"

    def test_duplicate_rules_are_kept(self):
        base = parse_kb("q ~> pa\nq ~> pa\n")
        assert base.ids == (1, 2)

    def test_header_after_rules_rejected(self):
        with pytest.raises(KnowledgeBaseSyntaxError) as info:
            parse_kb("a ~> b\natoms: a b\n", source="late.kb")
        assert info.value.line == 2
        assert "late.kb:2" in str(info.value)

    def test_missing_arrow_reports_line(self):
        with pytest.raises(KnowledgeBaseSyntaxError) as info:
            parse_kb("a ~> b\n\na & b\n")
        assert info.value.line == 3

    def test_bad_formula_reports_line(self):
        with pytest.raises(KnowledgeBaseSyntaxError) as info:
            parse_kb("a ~> (b\n")
        assert info.value.line == 1

    def test_capacity_overflow_reports_line(self):
        with pytest.raises(KnowledgeBaseSyntaxError) as info:
            parse_kb("a ~> b\nc ~> d\n", capacity=3)
        assert info.value.line == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(KnowledgeBaseSyntaxError):
            load_kb(tmp_path / "nope.kb")

    def test_undecodable_file(self, tmp_path):
        path = tmp_path / "bad.kb"
        path.write_bytes(b"\xff\xfe a ~> b\n")
        with pytest.raises(KnowledgeBaseSyntaxError) as info:
            load_kb(path)
        assert "not UTF-8" in str(info.value)
        assert info.value.source == str(path)

    def test_directory_is_not_a_file(self, tmp_path):
        with pytest.raises(KnowledgeBaseSyntaxError) as info:
            load_kb(tmp_path)
        assert info.value.line == 0

    def test_load_from_path(self, tmp_path):
        path = tmp_path / "mini.kb"
        path.write_text("atoms: a b\na ~> b\n", encoding="utf-8")
        base = load_kb(path)
        assert len(base) == 1
        assert base.vocabulary.atoms == ("a", "b")

    def test_empty_text_gives_empty_base(self):
        base = parse_kb("")
        assert len(base) == 0
        assert base.n_atoms == 0


class TestFixtures:

    @pytest.mark.parametrize("name", [
        "penguin", "legs", "wings", "quaker2", "ecologist", "nixon",
        "inconsistent", "empty", "single",
    ])
    def test_shipped(self, name):
        assert name in available_fixtures()
        load_fixture(name)

    @pytest.mark.parametrize("name, rules", [
        ("penguin", ["b ~> f", "p ~> !f", "p ~> b"]),
        ("legs", ["b ~> f", "p ~> !f", "p ~> b", "b ~> l"]),
        ("wings", ["b ~> f", "p ~> !f", "p ~> b", "m ~> f"]),
        ("quaker2", ["q ~> pa", "q ~> pa", "r ~> !pa"]),
        ("ecologist", ["q ~> pa", "e ~> pa", "r ~> !pa"]),
    ])
    def test_rule_order(self, name, rules):
        base = load_fixture(name)
        assert [str(rule) for rule in base] == rules, f"{name}: rule ids drifted"

    def test_fresh_vocabulary_per_load(self):
        first = load_fixture("penguin")
        first.vocabulary.register("r")
        assert len(load_fixture("penguin").vocabulary) == 3

    def test_unknown_fixture(self):
        with pytest.raises(KeyError):
            fixture_path("ostrich")

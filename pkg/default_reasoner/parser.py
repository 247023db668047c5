"""
Formula grammar.

  formula := iff
  iff     := imp ("<->" imp)*          left-associative
  imp     := or ("->" or)*             right-associative
  or      := and ("|" and)*
  and     := unary ("&" unary)*
  unary   := "!" unary | "(" formula ")" | atom | "true" | "false"

A default rule line is ``<formula> ~> <formula>``; the ``~>`` arrow never
appears inside a formula.  Unknown atoms are registered in the vocabulary
after a successful parse, all at once, so a capacity failure leaves the
vocabulary untouched.
"""

from __future__ import annotations

from pyparsing import (
    Keyword,
    OpAssoc,
    ParseException,
    ParserElement,
    ParseResults,
    Suppress,
    Word,
    alphanums,
    alphas,
    infix_notation,
)

from default_reasoner.errors import FormulaSyntaxError
from default_reasoner.logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Vocabulary,
)

ParserElement.enable_packrat()


# ---------------------------------------------------------------------------
# Parse actions
# ---------------------------------------------------------------------------


def _operands(group: ParseResults) -> list[Formula]:
    return [item for item in group if isinstance(item, Formula)]


def _negation(tokens: ParseResults) -> Formula:
    group = tokens[0]
    operand = _operands(group)[-1]
    for item in group:
        if isinstance(item, str):
            operand = Not(operand)
    return operand


def _conjunction(tokens: ParseResults) -> Formula:
    return And(tuple(_operands(tokens[0])))


def _disjunction(tokens: ParseResults) -> Formula:
    return Or(tuple(_operands(tokens[0])))


def _implication(tokens: ParseResults) -> Formula:
    operands = _operands(tokens[0])
    result = operands[-1]
    for antecedent in reversed(operands[:-1]):
        result = Implies(antecedent, result)
    return result


def _biconditional(tokens: ParseResults) -> Formula:
    operands = _operands(tokens[0])
    result = operands[0]
    for right in operands[1:]:
        result = Iff(result, right)
    return result


# ---------------------------------------------------------------------------
# Grammar
# ---------------------------------------------------------------------------

_CONSTANT = Keyword("true").set_parse_action(lambda: TRUE) | Keyword("false").set_parse_action(
    lambda: FALSE
)
_ATOM = Word(alphas + "_", alphanums + "_").set_parse_action(lambda t: Atom(t[0]))

FORMULA = infix_notation(
    _CONSTANT | _ATOM,
    [
        ("!", 1, OpAssoc.RIGHT, _negation),
        ("&", 2, OpAssoc.LEFT, _conjunction),
        ("|", 2, OpAssoc.LEFT, _disjunction),
        ("->", 2, OpAssoc.RIGHT, _implication),
        ("<->", 2, OpAssoc.LEFT, _biconditional),
    ],
)

RULE = FORMULA + Suppress("~>") + FORMULA


# ---------------------------------------------------------------------------
# Public interface
# ---------------------------------------------------------------------------


def parse_formula(text: str, vocab: Vocabulary) -> Formula:
    """Parse ``text`` and register any new atoms in ``vocab``."""
    try:
        formula = FORMULA.parse_string(text, parse_all=True)[0]
    except ParseException as exc:
        raise FormulaSyntaxError(text, exc.loc, exc.msg) from None
    vocab.register_all(formula.atoms())
    return formula


def parse_rule(text: str, vocab: Vocabulary) -> tuple[Formula, Formula]:
    """Parse ``alpha ~> beta`` into its two formulas."""
    try:
        result = RULE.parse_string(text, parse_all=True)
    except ParseException as exc:
        raise FormulaSyntaxError(text, exc.loc, exc.msg) from None
    antecedent, consequent = result[0], result[1]
    vocab.register_all(antecedent.atoms() + consequent.atoms())
    return antecedent, consequent

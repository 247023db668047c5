"""
Numeric oracle for compiled LCD models.

Instantiates every e_d as base**x_d, where x is an integer point of the
model's degree cone, combines the rules' simple support functions exactly and
checks the symbolic claims against the numbers:

  - singleton plausibility against the violation-term product, within 32 * base
  - each rule's conditional belief, 1 - bel(consequent | antecedent) <= 2^n * base
  - every Greater verdict between world terms matches the numeric order

Same-order term pairs carry no strict numeric claim and are only listed.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from data.random_bases import generate_suite

from default_reasoner.engines.belief import (
    MassAssignment,
    combine_all,
    condition,
    simple_support,
    singleton_plausibility,
)
from default_reasoner.engines.lcd import LcdModel, compile_lcd
from default_reasoner.engines.magnitude import EpsTerm, OrderVerdict, compare
from default_reasoner.errors import ConditioningError, ReasonerError, TotalConflictError
from default_reasoner.log_setup import get_logger
from default_reasoner.logic import Formula, material

logger = get_logger(__name__)

RATIO_FACTOR = 32
SAME_ORDER_NOTE = "no strict numeric separation expected"


def class_respecting_degrees(model: LcdModel) -> dict[int, int]:
    return model.system.integer_degrees()


def epsilon_values(degrees: dict[int, int], base_eps: Fraction) -> dict[int, Fraction]:
    return {d: base_eps**x for d, x in degrees.items()}


def term_value(term: EpsTerm, eps: dict[int, Fraction]) -> Fraction:
    value = Fraction(1)
    for symbol in term.factors:
        value *= eps[symbol]
    return value


def instantiate(model: LcdModel, eps: dict[int, Fraction]) -> list[MassAssignment]:
    """One simple support function per rule: 1 - e_d on its material counterpart."""
    base = model.base
    return [simple_support(base.models(material(rule)), eps[rule.id]) for rule in base]


def combination(model: LcdModel, eps: dict[int, Fraction]) -> MassAssignment:
    return combine_all(instantiate(model, eps), model.base.n_atoms)


@dataclass(frozen=True)
class RungResult:
    base_eps: Fraction
    ratio_error: Fraction = Fraction(0)
    ratio_bound: Fraction = Fraction(0)
    belief_gap: Fraction = Fraction(0)
    belief_bound: Fraction = Fraction(0)
    confirmed: int = 0
    refuted: tuple[tuple[EpsTerm, EpsTerm], ...] = ()
    error: str | None = None

    @property
    def ok(self) -> bool:
        return (
            self.error is None
            and self.ratio_error <= self.ratio_bound
            and self.belief_gap <= self.belief_bound
            and not self.refuted
        )


@dataclass(frozen=True)
class OracleRun:
    degrees: dict[int, int]
    rungs: tuple[RungResult, ...]
    same_order: tuple[tuple[EpsTerm, EpsTerm], ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(rung.ok for rung in self.rungs)


def _world_terms(model: LcdModel) -> dict[int, EpsTerm]:
    return {
        world: term
        for term, worlds in model.terms_of(model.base.universe()).items()
        for world in worlds
    }


def check_rung(model: LcdModel, degrees: dict[int, int], base_eps: Fraction) -> RungResult:
    eps = epsilon_values(degrees, base_eps)
    base = model.base
    try:
        combined = combination(model, eps)
    except TotalConflictError as exc:
        logger.warning("combination at %s failed: %s", base_eps, exc)
        return RungResult(base_eps, error=str(exc))

    world_terms = _world_terms(model)
    ratio_error = max(
        (
            abs(singleton_plausibility(combined, w) / term_value(t, eps) - 1)
            for w, t in world_terms.items()
        ),
        default=Fraction(0),
    )

    belief_gap = Fraction(0)
    for rule in base:
        try:
            given = condition(combined, base.models(rule.antecedent))
        except ConditioningError as exc:
            return RungResult(base_eps, error=f"rule {rule.id}: {exc}")
        belief_gap = max(belief_gap, 1 - given(base.models(rule.consequent)))

    confirmed = 0
    refuted: list[tuple[EpsTerm, EpsTerm]] = []
    representative: dict[EpsTerm, int] = {}
    for w, t in sorted(world_terms.items()):
        representative.setdefault(t, w)
    for t1, t2 in combinations(sorted(representative), 2):
        verdict = compare(model.system, t1, t2)
        if verdict is OrderVerdict.SMALLER:
            t1, t2 = t2, t1
        elif verdict is not OrderVerdict.GREATER:
            continue
        high = singleton_plausibility(combined, representative[t1])
        low = singleton_plausibility(combined, representative[t2])
        if high > low:
            confirmed += 1
        else:
            refuted.append((t1, t2))

    return RungResult(
        base_eps=base_eps,
        ratio_error=ratio_error,
        ratio_bound=RATIO_FACTOR * base_eps,
        belief_gap=belief_gap,
        belief_bound=(2**base.n_atoms) * base_eps,
        confirmed=confirmed,
        refuted=tuple(refuted),
    )


def same_order_pairs(model: LcdModel) -> tuple[tuple[EpsTerm, EpsTerm], ...]:
    terms = sorted(set(_world_terms(model).values()))
    return tuple(
        (t1, t2)
        for t1, t2 in combinations(terms, 2)
        if compare(model.system, t1, t2) is OrderVerdict.SAME_ORDER
    )


def run_oracle(model: LcdModel, ladder: Sequence[Fraction]) -> OracleRun:
    degrees = class_respecting_degrees(model)
    rungs = tuple(check_rung(model, degrees, e) for e in ladder)
    run = OracleRun(degrees, rungs, same_order_pairs(model))
    logger.info("oracle %s over %d rungs", "passed" if run.ok else "FAILED", len(rungs))
    return run


def conditional_belief(
    model: LcdModel, eps: dict[int, Fraction], antecedent: Formula, consequent: Formula
) -> Fraction:
    """bel(consequent | antecedent) under the numeric combination."""
    combined = combination(model, eps)
    base = model.base
    return condition(combined, base.models(antecedent))(base.models(consequent))


@dataclass(frozen=True)
class SuiteOutcome:
    case_id: str
    run: OracleRun | None
    error: str | None = None


def run_random_suite(
    seed: int, ladder: Sequence[Fraction], size: int = 50, max_rules: int = 4, max_atoms: int = 4
) -> list[SuiteOutcome]:
    """Oracle over a seeded suite of consistent random bases."""
    outcomes: list[SuiteOutcome] = []
    for case in generate_suite(seed, size=size, max_rules=max_rules, max_atoms=max_atoms, queries=0):
        try:
            model = compile_lcd(case.base)
        except ReasonerError as exc:
            logger.warning("%s: %s", case.case_id, exc)
            outcomes.append(SuiteOutcome(case.case_id, None, str(exc)))
            continue
        outcomes.append(SuiteOutcome(case.case_id, run_oracle(model, ladder)))
    return outcomes


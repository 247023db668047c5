"""
LCD: combination of one simple support function per rule.

Rule d contributes mass 1 - e_d on its material counterpart and e_d on the
universe.  After Dempster combination a world's plausibility is, to first
order, the product of the e_d of the rules it violates: its violation term.
Asking every rule to be entailed by its own antecedent gives one constraint
per rule,

    max(terms of antecedent & consequent)  >>  max(terms of antecedent & !consequent)

and the solver partitions the terms into classes of equal degree, each class
infinitely smaller than the one before.

SOLVER ROUNDS:
  Round 0 discharges every constraint whose left side holds the unit term.
  Round k discharges every active constraint with a left term that is made of
  classed symbols only and beats each right term, assuming every unclassed
  symbol sits strictly below the last class.  The unclassed right terms of the
  discharged constraints form the next class, except those still on the right
  side of an active constraint: they wait for a later round.  Symbols still
  unclassed at the end join the final class, and the finished system is
  checked against every constraint before it is returned.

  A consistent base on which the rounds stall falls back to stratum degrees:
  every rule at the degree of its tolerance stratum, each stratum beyond the
  reach of any product of the ones before it.  The model carries a warning.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from default_reasoner.engines.magnitude import (
    DegreeSystem,
    EpsTerm,
    OrderVerdict,
    compare,
    compare_max,
    prune_dominated,
)
from default_reasoner.engines.system_z import Stratification, stratify
from default_reasoner.errors import (
    LcdConstraintError,
    LcdSolveError,
    LcdVerificationError,
    UnsatisfiableQueryError,
)
from default_reasoner.log_setup import get_logger
from default_reasoner.logic import (
    DefaultBase,
    Formula,
    Not,
    WorldSet,
    conjoin,
    models,
    non_dominated,
)

logger = get_logger(__name__)


# ---------------------------------------------------------------------------
# Violation terms
# ---------------------------------------------------------------------------


def viol_term(base: DefaultBase, world: int) -> EpsTerm:
    """Product of e_d over the rules whose material counterpart ``world`` falsifies."""
    return EpsTerm(tuple(d for d, violated in base.violations().items() if world in violated))


def _partition(worlds: WorldSet, violations: dict[int, WorldSet]) -> dict[EpsTerm, WorldSet]:
    parts: list[tuple[WorldSet, tuple[int, ...]]] = [(worlds, ())] if worlds else []
    for rule_id, violated in violations.items():
        split: list[tuple[WorldSet, tuple[int, ...]]] = []
        for part, ids in parts:
            inside, outside = part & violated, part - violated
            if inside:
                split.append((inside, ids + (rule_id,)))
            if outside:
                split.append((outside, ids))
        parts = split
    return {EpsTerm(ids): part for part, ids in parts}


def violation_terms(base: DefaultBase, worlds: WorldSet | None = None) -> dict[EpsTerm, WorldSet]:
    """Group ``worlds`` (default: the whole base universe) by violation term."""
    worlds = base.universe() if worlds is None else worlds.project(base.n_atoms)
    return _partition(worlds, base.violations())


# ---------------------------------------------------------------------------
# Constraints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LcdConstraint:
    rule_id: int
    lhs: tuple[EpsTerm, ...]
    rhs: tuple[EpsTerm, ...]

    def __str__(self) -> str:
        return f"{_render_side(self.lhs)} >> {_render_side(self.rhs)}"


def _render_side(terms: Sequence[EpsTerm]) -> str:
    if len(terms) == 1:
        return str(terms[0])
    return "max{" + ", ".join(str(t) for t in terms) + "}"


def gen_constraints(base: DefaultBase) -> list[LcdConstraint]:
    violations = base.violations()
    constraints: list[LcdConstraint] = []
    for rule in base:
        confirming = base.models(conjoin(rule.antecedent, rule.consequent))
        refuting = base.models(conjoin(rule.antecedent, Not(rule.consequent)))
        if confirming.is_empty():
            raise LcdConstraintError(rule.id)
        if refuting.is_empty():
            logger.debug("rule %d has no refuting world; no constraint", rule.id)
            continue
        lhs = prune_dominated(_partition(confirming, violations))
        # refuting worlds violate the rule itself: every right term holds e_d
        rhs = prune_dominated(_partition(refuting, violations))
        constraints.append(LcdConstraint(rule.id, lhs, rhs))
    return constraints


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolverRound:
    number: int
    discharged: tuple[int, ...]
    class_terms: tuple[EpsTerm, ...]
    note: str = ""


@dataclass(frozen=True)
class LcdModel:
    """A verified degree system for a base, with the solver's provenance."""

    base: DefaultBase
    system: DegreeSystem
    constraints: tuple[LcdConstraint, ...]
    rounds: tuple[SolverRound, ...]
    attached: tuple[int, ...] = ()       # symbols appended to the final class
    warnings: tuple[str, ...] = field(default=())

    @cached_property
    def violations(self) -> dict[int, WorldSet]:
        return self.base.violations()

    def viol_term(self, world: int) -> EpsTerm:
        return EpsTerm(tuple(d for d, v in self.violations.items() if world in v))

    def terms_of(self, worlds: WorldSet) -> dict[EpsTerm, WorldSet]:
        """Violation terms met by ``worlds``, each with its worlds in the base universe."""
        return _partition(worlds.project(self.base.n_atoms), self.violations)

    def describe_classes(self) -> str:
        return self.system.describe_classes()


class LcdSolver:
    """Round-based class peeling over a list of constraints."""

    def __init__(self, constraints: Iterable[LcdConstraint], symbols: Iterable[int]) -> None:
        self.constraints = tuple(constraints)
        self.symbols = tuple(sorted(set(symbols)))
        self.classes: list[tuple[EpsTerm, ...]] = []
        self.equalities: list[tuple[EpsTerm, EpsTerm]] = []
        self.orderings: list[tuple[EpsTerm, EpsTerm]] = []
        self.classed: set[int] = set()
        self.pending: set[EpsTerm] = set()    # right terms waiting on an active constraint
        self.rounds: list[SolverRound] = []
        self.warnings: list[str] = []
        self.attached: tuple[int, ...] = ()

    def system(self, extra: Iterable[tuple[EpsTerm, EpsTerm]] = ()) -> DegreeSystem:
        return DegreeSystem(
            symbols=self.symbols,
            classes=tuple(self.classes),
            equalities=tuple(self.equalities),
            orderings=tuple(self.orderings) + tuple(extra),
            unconstrained=tuple(s for s in self.symbols if s not in self.classed),
        )

    def _tentative(self) -> DegreeSystem:
        """Current system with every unclassed symbol strictly below the last class."""
        if not self.classes:
            return self.system()
        last = self.classes[-1][0]
        return self.system(
            (last, EpsTerm.of(s)) for s in self.symbols if s not in self.classed
        )

    def _is_classed(self, term: EpsTerm) -> bool:
        return all(s in self.classed for s in term.symbols)

    def _dischargeable(self, system: DegreeSystem, constraint: LcdConstraint) -> bool:
        return any(
            self._is_classed(t)
            and all(compare(system, t, r) is OrderVerdict.GREATER for r in constraint.rhs)
            for t in constraint.lhs
        )

    def run(self) -> tuple[DegreeSystem, tuple[SolverRound, ...]]:
        active = {c.rule_id: c for c in self.constraints}
        number = 0
        while active:
            tentative = self._tentative()
            discharged = [c for c in active.values() if self._dischargeable(tentative, c)]
            if not discharged:
                logger.warning("solver stalled in round %d with %s active", number, sorted(active))
                raise LcdSolveError("no LCD stratification", active=sorted(active))
            for c in discharged:
                del active[c.rule_id]
            self._close_round(number, discharged, tentative, active)
            number += 1

        self._attach_leftovers()
        final = self.system()
        verify(final, self.constraints)
        return final, tuple(self.rounds)

    def _close_round(
        self,
        number: int,
        discharged: list[LcdConstraint],
        tentative: DegreeSystem,
        active: dict[int, LcdConstraint],
    ) -> None:
        blocked = {r for c in active.values() for r in c.rhs}
        self.pending.update(r for c in discharged for r in c.rhs)
        self.pending = {t for t in self.pending if not self._is_classed(t)}
        candidates = sorted(t for t in self.pending if t not in blocked)
        self.pending.difference_update(candidates)
        if self.pending:
            logger.debug(
                "round %d holds back %s", number, ", ".join(str(t) for t in sorted(self.pending))
            )
        kept = tuple(
            b
            for b in candidates
            if not any(a != b and compare(tentative, a, b) is OrderVerdict.GREATER for a in candidates)
        )
        ids = tuple(sorted(c.rule_id for c in discharged))
        if not kept:
            note = "terms held back" if self.pending else "no new terms"
            self.rounds.append(SolverRound(number, ids, (), note))
            logger.debug("round %d discharged %s, no new class", number, ids)
            return

        fresh = sorted({s for t in kept for s in t.symbols} - self.classed)
        if self.classes:
            last = self.classes[-1][0]
            self.orderings.extend((last, EpsTerm.of(s)) for s in fresh)
        self._split_symmetric(number, kept, set(fresh))
        self.classes.append(kept)
        self.classed.update(fresh)
        if not self.system().is_feasible:
            raise LcdSolveError(
                f"class {len(self.classes) - 1} leaves no positive degree assignment",
                active=sorted(active),
            )
        self.rounds.append(SolverRound(number, ids, kept))
        logger.info(
            "round %d discharged %s; class %d = {%s}",
            number,
            list(ids),
            len(self.classes) - 1,
            ", ".join(str(t) for t in kept),
        )

    def _split_symmetric(self, number: int, kept: tuple[EpsTerm, ...], fresh: set[int]) -> None:
        """Equal degrees for the fresh symbols of a product term they have to themselves."""
        for term in kept:
            own = [s for s in term.symbols if s in fresh]
            if len(own) < 2:
                continue
            shared = [s for s in own if any(s in other.symbols for other in kept if other != term)]
            if shared:
                message = (
                    f"round {number}: symbols {shared} of {term} occur in other class terms; "
                    "their degrees are left unsplit"
                )
                logger.warning(message)
                self.warnings.append(message)
                continue
            self.equalities.extend((EpsTerm.of(own[0]), EpsTerm.of(s)) for s in own[1:])

    def _attach_leftovers(self) -> None:
        leftovers = tuple(s for s in self.symbols if s not in self.classed)
        if not leftovers:
            return
        singletons = tuple(EpsTerm.of(s) for s in leftovers)
        if self.classes:
            self.classes[-1] = self.classes[-1] + singletons
        else:
            self.classes.append(singletons)
        self.classed.update(leftovers)
        self.attached = leftovers
        logger.info("symbols %s attached to the final class", list(leftovers))


def verify(system: DegreeSystem, constraints: Sequence[LcdConstraint]) -> None:
    """Raise unless every constraint holds at every point of ``system``."""
    if not system.is_feasible:
        raise LcdVerificationError("final degree system is infeasible")
    failed = [
        c.rule_id
        for c in constraints
        if compare_max(system, c.lhs, c.rhs) is not OrderVerdict.GREATER
    ]
    if failed:
        raise LcdVerificationError(f"constraints of rules {failed} fail verification", failed)
    logger.debug("verified %d constraints", len(constraints))


def stratum_system(strat: Stratification) -> DegreeSystem:
    """
    One class per tolerance stratum.  Each stratum's degree exceeds the
    degree of the previous stratum times the number of rules, so a term over
    lower strata always beats a term holding a symbol of a higher stratum.
    """
    strat.require_consistent()
    reach = max(len(strat.base), 1)
    classes = tuple(tuple(EpsTerm.of(d) for d in stratum) for stratum in strat.strata)
    orderings = tuple(
        (EpsTerm(lower[0].factors * reach), upper[0])
        for lower, upper in zip(classes, classes[1:])
    )
    return DegreeSystem(
        symbols=tuple(sorted(strat.base.ids)), classes=classes, orderings=orderings
    )


def _stratum_model(
    constraints: Sequence[LcdConstraint], base: DefaultBase, strat: Stratification, cause: Exception
) -> LcdModel:
    system = stratum_system(strat)
    verify(system, constraints)
    message = f"class solver failed ({cause}); using stratum degrees"
    logger.warning(message)
    rounds = tuple(
        SolverRound(k, stratum, system.classes[k], "stratum degrees")
        for k, stratum in enumerate(strat.strata)
    )
    return LcdModel(
        base=base,
        system=system,
        constraints=tuple(constraints),
        rounds=rounds,
        warnings=(message,),
    )


def solve(constraints: Sequence[LcdConstraint], base: DefaultBase) -> LcdModel:
    solver = LcdSolver(constraints, base.ids)
    try:
        system, rounds = solver.run()
    except LcdSolveError as exc:
        strat = stratify(base)
        if not strat.is_consistent:
            raise
        return _stratum_model(constraints, base, strat, exc)
    return LcdModel(
        base=base,
        system=system,
        constraints=tuple(constraints),
        rounds=rounds,
        attached=solver.attached,
        warnings=tuple(solver.warnings),
    )


def compile_lcd(base: DefaultBase) -> LcdModel:
    return solve(gen_constraints(base), base)


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LcdAnswer:
    entailed: bool
    verdict: OrderVerdict | None          # None when decided without a comparison
    confirming: tuple[EpsTerm, ...] = ()
    refuting: tuple[EpsTerm, ...] = ()


def query_lcd(model: LcdModel, alpha: Formula, beta: Formula) -> LcdAnswer:
    vocab = model.base.vocabulary
    if models(alpha, vocab).is_empty():
        return LcdAnswer(True, None)
    confirming = prune_dominated(model.terms_of(models(conjoin(alpha, beta), vocab)))
    refuting = prune_dominated(model.terms_of(models(conjoin(alpha, Not(beta)), vocab)))
    if not refuting:
        return LcdAnswer(True, None, confirming, refuting)
    if not confirming:
        return LcdAnswer(False, None, confirming, refuting)
    verdict = compare_max(model.system, confirming, refuting)
    return LcdAnswer(verdict is OrderVerdict.GREATER, verdict, confirming, refuting)


def entails_lcd(model: LcdModel, alpha: Formula, beta: Formula) -> bool:
    return query_lcd(model, alpha, beta).entailed


def preferred_models(model: LcdModel, alpha: Formula) -> WorldSet:
    """Models of ``alpha`` whose violation term no other model of ``alpha`` beats."""
    worlds = models(alpha, model.base.vocabulary)
    if worlds.is_empty():
        raise UnsatisfiableQueryError(f"{alpha} has no models")
    groups = model.terms_of(worlds)
    best = non_dominated(
        groups, lambda t1, t2: compare(model.system, t1, t2) is OrderVerdict.GREATER
    )
    chosen = WorldSet.empty(model.base.n_atoms)
    for term in best:
        chosen = chosen | groups[term]
    return worlds & chosen.lift(worlds.n_atoms)

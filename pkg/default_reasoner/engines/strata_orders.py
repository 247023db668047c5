"""
Orders on worlds derived from the Z-strata: penalty costs, the
lexicographic order and Brewka's preferred subtheories.

Strata are numbered from 1, so violating a rule of stratum i costs i.
All three comparators look only at the atoms of the base; query worlds over a
larger vocabulary are compared through their projection.  A world's scores
depend only on the set of rules it violates, so entailment scores one world
per violation term instead of every world.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from default_reasoner.engines.lcd import violation_terms
from default_reasoner.engines.magnitude import DegreeSystem, EpsTerm
from default_reasoner.engines.system_z import Stratification, stratify
from default_reasoner.logic import DefaultBase, Formula, Not, WorldSet, conjoin, models, non_dominated


@dataclass(frozen=True)
class StratumStats:
    """Per stratum (index 0 holds stratum 1): violated count, satisfied rule ids, size."""

    violated: tuple[int, ...]
    satisfied: tuple[frozenset[int], ...]
    sizes: tuple[int, ...]


def stratum_stats(strat: Stratification, world: int) -> StratumStats:
    strat.require_consistent()
    violated = frozenset(r for r, worlds in strat.violations.items() if world in worlds)
    return _stats(strat, violated)


def _stats(strat: Stratification, violated: frozenset[int]) -> StratumStats:
    satisfied = tuple(
        frozenset(r for r in stratum if r not in violated) for stratum in strat.strata
    )
    sizes = tuple(len(stratum) for stratum in strat.strata)
    return StratumStats(
        violated=tuple(size - len(sat) for size, sat in zip(sizes, satisfied)),
        satisfied=satisfied,
        sizes=sizes,
    )


def penalty_cost(strat: Stratification, world: int) -> int:
    stats = stratum_stats(strat, world)
    return sum(i * k for i, k in enumerate(stats.violated, start=1))


def lex_key(strat: Stratification, world: int) -> tuple[int, ...]:
    """Satisfied counts from the highest stratum down; a larger key is more plausible."""
    stats = stratum_stats(strat, world)
    return tuple(len(sat) for sat in reversed(stats.satisfied))


def lex_better(strat: Stratification, w1: int, w2: int) -> bool:
    return lex_key(strat, w1) > lex_key(strat, w2)


def brewka_better(strat: Stratification, w1: int, w2: int) -> bool:
    return _dominates(stratum_stats(strat, w1), stratum_stats(strat, w2))


def _dominates(s1: StratumStats, s2: StratumStats) -> bool:
    """Equal satisfied sets above some stratum, a strict superset at it."""
    for sat1, sat2 in zip(reversed(s1.satisfied), reversed(s2.satisfied)):
        if sat1 != sat2:
            return sat1 > sat2
    return False


# ---------------------------------------------------------------------------
# Entailment
# ---------------------------------------------------------------------------


def _prepare(base: DefaultBase, strat: Stratification | None) -> Stratification:
    return (strat if strat is not None else stratify(base)).require_consistent()


Score = Callable[[int], int | tuple[int, ...]]


def _decide(base: DefaultBase, alpha: Formula, beta: Formula, score: Score) -> bool:
    """Best score over alpha & beta strictly above best score over alpha & !beta."""
    vocab = base.vocabulary
    if models(alpha, vocab).is_empty():
        return True

    def best(f: Formula) -> int | tuple[int, ...] | None:
        groups = violation_terms(base, models(f, vocab))
        return max((score(next(iter(worlds))) for worlds in groups.values()), default=None)

    confirming, refuting = best(conjoin(alpha, beta)), best(conjoin(alpha, Not(beta)))
    if refuting is None:
        return True
    return confirming is not None and confirming > refuting


def entails_penalty(
    base: DefaultBase, alpha: Formula, beta: Formula, strat: Stratification | None = None
) -> bool:
    """Least cost over alpha & beta below least cost over alpha & !beta."""
    strat = _prepare(base, strat)
    return _decide(base, alpha, beta, lambda w: -penalty_cost(strat, w))


def entails_lex(
    base: DefaultBase, alpha: Formula, beta: Formula, strat: Stratification | None = None
) -> bool:
    """Every lex-maximal model of alpha satisfies beta."""
    strat = _prepare(base, strat)
    return _decide(base, alpha, beta, lambda w: lex_key(strat, w))


def brewka_preferred(strat: Stratification, alpha: Formula) -> WorldSet:
    """Models of alpha no other model of alpha dominates."""
    strat.require_consistent()
    base = strat.base
    worlds = models(alpha, base.vocabulary)
    groups = violation_terms(base, worlds)
    stats = {term: _stats(strat, frozenset(term.factors)) for term in groups}
    best = non_dominated(groups, lambda t1, t2: _dominates(stats[t1], stats[t2]))
    chosen = WorldSet.empty(base.n_atoms)
    for term in best:
        chosen = chosen | groups[term]
    return worlds & chosen.lift(worlds.n_atoms)


def entails_brewka(
    base: DefaultBase, alpha: Formula, beta: Formula, strat: Stratification | None = None
) -> bool:
    strat = _prepare(base, strat)
    vocab = base.vocabulary
    if models(alpha, vocab).is_empty():
        return True
    return brewka_preferred(strat, alpha).issubset(models(beta, vocab))


def penalty_degree_system(strat: Stratification) -> DegreeSystem:
    """
    deg(e_d) = i * deg(e_0) for every rule d of stratum i, with e_0 a reference
    symbol, so term comparison reproduces the penalty-cost order.
    """
    strat.require_consistent()
    return DegreeSystem(
        symbols=(0,) + strat.base.ids,
        equalities=tuple(
            (EpsTerm.of(d), EpsTerm((0,) * i))
            for i, stratum in enumerate(strat.strata, start=1)
            for d in stratum
        ),
    )

"""
System Z: tolerance, stratification, world ranks and the consonant
least-commitment chain, plus the P and Z entailment relations.

RANK CONVENTION:
  A world's rank is the HIGHEST stratum index among the rules it violates,
  0 when it violates none.  This is the rank the nested chain produces: the
  plausibility of a world is fixed by the innermost chain element that
  contains it, and a world leaves element i exactly when it violates a rule
  that is still present at iteration i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from collections.abc import Iterable, Sequence

from default_reasoner.engines.belief import MassAssignment
from default_reasoner.engines.magnitude import (
    UNIT,
    DegreeSystem,
    EpsTerm,
    OrderVerdict,
    compare_max,
)
from default_reasoner.errors import InconsistentBaseError
from default_reasoner.log_setup import get_logger
from default_reasoner.logic import (
    DefaultBase,
    DefaultRule,
    Formula,
    Not,
    WorldSet,
    conjoin,
    material,
    models,
)

logger = get_logger(__name__)


# ---------------------------------------------------------------------------
# Tolerance and stratification
# ---------------------------------------------------------------------------


def _joint_material(base: DefaultBase, rule_ids: Iterable[int]) -> WorldSet:
    joint = base.universe()
    for rule_id in rule_ids:
        joint = joint & base.models(material(base.rule(rule_id)))
    return joint


def tolerated(rule: DefaultRule, base: DefaultBase) -> bool:
    """Is antecedent & consequent satisfiable together with every material counterpart?"""
    confirming = base.models(conjoin(rule.antecedent, rule.consequent))
    return not confirming.isdisjoint(_joint_material(base, base.ids))


@dataclass(frozen=True)
class Stratification:
    """
    Ordered partition of a base into strata (1-based), or, when ``residue``
    is nonempty, the inconsistent outcome: the strata found before peeling
    stalled, and the rules none of which was tolerated.
    """

    base: DefaultBase
    strata: tuple[tuple[int, ...], ...]
    residue: tuple[int, ...] = ()

    @property
    def is_consistent(self) -> bool:
        return not self.residue

    def require_consistent(self) -> Stratification:
        if self.residue:
            raise InconsistentBaseError(self.residue)
        return self

    def __len__(self) -> int:
        return len(self.strata)

    @cached_property
    def stratum_index(self) -> dict[int, int]:
        return {r: i for i, stratum in enumerate(self.strata, start=1) for r in stratum}

    def stratum_of(self, rule_id: int) -> int:
        return self.stratum_index[rule_id]

    @cached_property
    def violations(self) -> dict[int, WorldSet]:
        return self.base.violations()

    @cached_property
    def ranking(self) -> WorldRank:
        return rank_worlds(self)


def stratify(base: DefaultBase) -> Stratification:
    """Peel off, round after round, every rule tolerated by what is left."""
    confirming = {
        r.id: base.models(conjoin(r.antecedent, r.consequent)) for r in base.rules
    }
    materials = {r.id: base.models(material(r)) for r in base.rules}
    remaining = list(base.ids)
    strata: list[tuple[int, ...]] = []

    while remaining:
        joint = base.universe()
        for rule_id in remaining:
            joint = joint & materials[rule_id]
        layer = tuple(r for r in remaining if not confirming[r].isdisjoint(joint))
        if not layer:
            logger.info("stratification stalled; residue %s", remaining)
            return Stratification(base, tuple(strata), tuple(remaining))
        strata.append(layer)
        remaining = [r for r in remaining if r not in layer]

    logger.debug("strata %s", strata)
    return Stratification(base, tuple(strata))


# ---------------------------------------------------------------------------
# World ranks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WorldRank:
    """``levels[r]`` holds the worlds of rank r over the base universe."""

    n_atoms: int
    levels: tuple[WorldSet, ...]

    def rank(self, world: int) -> int:
        for r, level in enumerate(self.levels):
            if world in level:
                return r
        raise ValueError(f"world {world} outside a {self.n_atoms}-atom universe")

    def z(self, worlds: WorldSet) -> int | None:
        """Least rank met by ``worlds`` (projected onto the base universe); None is infinity."""
        projected = worlds.project(self.n_atoms)
        for r, level in enumerate(self.levels):
            if not level.isdisjoint(projected):
                return r
        return None

    def minimal(self, worlds: WorldSet) -> WorldSet:
        """The members of ``worlds`` of least rank, in the universe of ``worlds``."""
        r = self.z(worlds)
        if r is None:
            return worlds
        return worlds & self.levels[r].lift(worlds.n_atoms)


def rank_worlds(strat: Stratification) -> WorldRank:
    strat.require_consistent()
    base = strat.base
    violations = strat.violations
    higher = WorldSet.empty(base.n_atoms)
    levels: list[WorldSet] = []
    for stratum in reversed(strat.strata):
        violated = WorldSet.empty(base.n_atoms)
        for rule_id in stratum:
            violated = violated | violations[rule_id]
        levels.append(violated - higher)
        higher = higher | violated
    levels.append(base.universe() - higher)
    return WorldRank(base.n_atoms, tuple(reversed(levels)))


def world_rank(strat: Stratification, world: int) -> int:
    return strat.ranking.rank(world)


def z_rank(strat: Stratification, formula: Formula) -> int | None:
    """z of a formula: least rank among its models, None when it has none."""
    return strat.ranking.z(models(formula, strat.base.vocabulary))


def minimal_models(strat: Stratification, alpha: Formula) -> WorldSet:
    """Rank-minimal models of ``alpha`` over the current vocabulary."""
    return strat.ranking.minimal(models(alpha, strat.base.vocabulary))


# ---------------------------------------------------------------------------
# Consonant least-commitment chain
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainLevel:
    focal: WorldSet               # [phi of the rules still present]
    present: tuple[int, ...]      # rules still present at this iteration
    satisfied: tuple[int, ...]    # rules the iteration's belief function satisfies


def _level_terms(focals: Sequence[WorldSet], worlds: WorldSet) -> set[EpsTerm]:
    """Symbolic plausibilities of ``worlds`` under a chain with the given focal sets."""
    terms: set[EpsTerm] = set()
    inside = WorldSet.empty(worlds.n_atoms)
    for j, focal in enumerate(focals):
        if not worlds.isdisjoint(focal - inside):
            terms.add(UNIT if j == 0 else EpsTerm.of(j))
        inside = inside | focal
    if not worlds.isdisjoint(~inside):
        terms.add(EpsTerm.of(len(focals)) if focals else UNIT)
    return terms


def _chain_system(depth: int) -> DegreeSystem:
    """e_1 infinitely larger than e_2, and so on down to e_depth."""
    return DegreeSystem(
        symbols=tuple(range(1, depth + 1)),
        classes=tuple((EpsTerm.of(i),) for i in range(1, depth + 1)),
    )


@dataclass(frozen=True)
class ConsonantEbf:
    base: DefaultBase
    levels: tuple[ChainLevel, ...]

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def satisfied(self) -> tuple[tuple[int, ...], ...]:
        return tuple(level.satisfied for level in self.levels)

    @property
    def focal_chain(self) -> tuple[WorldSet, ...]:
        """Distinct focal elements, innermost first, ending with the universe."""
        chain: list[WorldSet] = []
        for focal in [level.focal for level in self.levels] + [self.base.universe()]:
            if not chain or chain[-1] != focal:
                chain.append(focal)
        return tuple(chain)

    @property
    def mass_labels(self) -> tuple[str, ...]:
        k = self.depth
        if k == 0:
            return ("1",)
        labels = ["1-e1"] + [f"e{i}-e{i + 1}" for i in range(1, k)]
        return tuple(labels + [f"e{k}"])

    @cached_property
    def system(self) -> DegreeSystem:
        return _chain_system(self.depth)

    def terms_of(self, worlds: WorldSet) -> set[EpsTerm]:
        projected = worlds.project(self.base.n_atoms)
        return _level_terms([level.focal for level in self.levels], projected)

    def world_term(self, world: int) -> EpsTerm:
        (term,) = self.terms_of(WorldSet.of(self.base.n_atoms, [world]))
        return term

    def instantiate(self, eps: Sequence[Fraction]) -> MassAssignment:
        """Numeric chain for e_1 > e_2 > ... (one value per iteration)."""
        if len(eps) != self.depth:
            raise ValueError(f"need {self.depth} epsilon values, got {len(eps)}")
        universe = self.base.universe()
        if not eps:
            return MassAssignment.from_masses(self.base.n_atoms, {universe: 1})
        masses = [(self.levels[0].focal, 1 - eps[0])]
        for i in range(1, self.depth):
            masses.append((self.levels[i].focal, eps[i - 1] - eps[i]))
        masses.append((universe, eps[-1]))
        return MassAssignment.from_masses(self.base.n_atoms, masses)


def lc_build(base: DefaultBase) -> ConsonantEbf:
    """
    Build the least-commitment chain: at each iteration the rules still
    present fix the next focal element, and a rule drops out once the
    iteration's belief function satisfies it (plausibility comparison on the
    symbolic chain).
    """
    present = list(base.ids)
    levels: list[ChainLevel] = []
    while present:
        focal = _joint_material(base, present)
        focals = [level.focal for level in levels] + [focal]
        system = _chain_system(len(focals))
        satisfied = tuple(
            r for r in present if _chain_satisfies(base, base.rule(r), focals, system)
        )
        if not satisfied:
            raise InconsistentBaseError(present)
        levels.append(ChainLevel(focal, tuple(present), satisfied))
        present = [r for r in present if r not in satisfied]
    logger.debug("chain of depth %d, satisfied sets %s", len(levels), [lv.satisfied for lv in levels])
    return ConsonantEbf(base, tuple(levels))


def _chain_satisfies(
    base: DefaultBase, rule: DefaultRule, focals: list[WorldSet], system: DegreeSystem
) -> bool:
    confirming = _level_terms(focals, base.models(conjoin(rule.antecedent, rule.consequent)))
    refuting = _level_terms(focals, base.models(conjoin(rule.antecedent, Not(rule.consequent))))
    if not confirming:
        return False
    if not refuting:
        return True
    return compare_max(system, confirming, refuting) is OrderVerdict.GREATER


# ---------------------------------------------------------------------------
# Entailment
# ---------------------------------------------------------------------------


def _less(z1: int | None, z2: int | None) -> bool:
    if z1 is None:
        return False
    return z2 is None or z1 < z2


def entails_z(
    base: DefaultBase, alpha: Formula, beta: Formula, strat: Stratification | None = None
) -> bool:
    """z(alpha & beta) < z(alpha & !beta); an unsatisfiable alpha entails everything."""
    strat = (strat if strat is not None else stratify(base)).require_consistent()
    vocab = base.vocabulary
    if models(alpha, vocab).is_empty():
        return True
    ranking = strat.ranking
    return _less(
        ranking.z(models(conjoin(alpha, beta), vocab)),
        ranking.z(models(conjoin(alpha, Not(beta)), vocab)),
    )


def entails_p(
    base: DefaultBase, alpha: Formula, beta: Formula, strat: Stratification | None = None
) -> bool:
    """Preferential entailment: adding alpha ~> !beta must make the base inconsistent."""
    (strat if strat is not None else stratify(base)).require_consistent()
    if models(alpha, base.vocabulary).is_empty():
        return True
    return not stratify(base.with_rule(alpha, Not(beta))).is_consistent


def entails_lc(ebf: ConsonantEbf, alpha: Formula, beta: Formula) -> bool:
    """Entailment read off the chain: pl(alpha & beta) infinitely above pl(alpha & !beta)."""
    vocab = ebf.base.vocabulary
    if models(alpha, vocab).is_empty():
        return True
    confirming = ebf.terms_of(models(conjoin(alpha, beta), vocab))
    refuting = ebf.terms_of(models(conjoin(alpha, Not(beta)), vocab))
    if not refuting:
        return True
    if not confirming:
        return False
    return compare_max(ebf.system, confirming, refuting) is OrderVerdict.GREATER

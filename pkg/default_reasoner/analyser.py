"""
Knowledge-base analysis: everything the engines compile for one base, laid
out as an ``AnalysisReport``.
"""

from __future__ import annotations

from default_reasoner.engines.lcd import gen_constraints, violation_terms
from default_reasoner.engines.strata_orders import penalty_cost
from default_reasoner.errors import ReasonerError
from default_reasoner.log_setup import get_logger
from default_reasoner.reasoner import DefaultReasoner
from default_reasoner.reports import AnalysisReport, ChainEntry, RoundEntry, WorldRow

logger = get_logger(__name__)

# World tables beyond this many atoms are summarised, not listed
WORLD_TABLE_ATOMS = 6


class KnowledgeBaseAnalyser:
    """
    Inputs:  DefaultReasoner (a loaded base)
    Outputs: AnalysisReport (strata, LC chain, LCD constraints and classes, world table)
    """

    def __init__(self, reasoner: DefaultReasoner) -> None:
        self.reasoner = reasoner
        self.base = reasoner.base

    def analyse(self) -> AnalysisReport:
        strat = self.reasoner.stratification
        report = AnalysisReport(
            kb=self.reasoner.source,
            atoms=list(self.base.vocabulary.atoms[: self.base.n_atoms]),
            rules=[f"{rule.id}: {rule}" for rule in self.base],
            consistent=strat.is_consistent,
            strata=[list(s) for s in strat.strata],
            residue=list(strat.residue),
        )
        if not strat.is_consistent:
            return report

        report.chain = self._chain_entries()
        self._lcd(report)
        report.worlds, report.worlds_note = self._world_rows()
        return report

    # ------------------------------------------------------------------
    # Sections
    # ------------------------------------------------------------------

    def _chain_entries(self) -> list[ChainEntry]:
        chain = self.reasoner.chain
        labels = chain.mass_labels
        return [
            ChainEntry(
                iteration=i,
                mass=labels[i - 1],
                focal_size=len(level.focal),
                satisfied=list(level.satisfied),
            )
            for i, level in enumerate(chain.levels, start=1)
        ]

    def _lcd(self, report: AnalysisReport) -> None:
        try:
            report.constraints = [
                f"d{c.rule_id}: {c}" for c in gen_constraints(self.base)
            ]
            model = self.reasoner.lcd_model
        except ReasonerError as exc:
            logger.warning("LCD compilation failed: %s", exc)
            report.lcd_error = str(exc)
            return
        report.rounds = [
            RoundEntry(
                number=r.number,
                discharged=list(r.discharged),
                class_terms=[str(t) for t in r.class_terms],
                note=r.note,
            )
            for r in model.rounds
        ]
        report.classes = model.describe_classes()
        report.attached = list(model.attached)
        report.warnings = list(model.warnings)

    def _world_rows(self) -> tuple[list[WorldRow], str]:
        n = self.base.n_atoms
        if n > WORLD_TABLE_ATOMS:
            return [], f"{2**n} worlds over {n} atoms; table omitted"
        strat = self.reasoner.stratification
        ranking = strat.ranking
        terms = {
            world: term
            for term, worlds in violation_terms(self.base).items()
            for world in worlds
        }
        vocab = self.base.vocabulary
        return [
            WorldRow(
                world=vocab.describe(world, n),
                term=str(terms[world]),
                rank=ranking.rank(world),
                penalty=penalty_cost(strat, world),
            )
            for world in self.base.universe()
        ], ""

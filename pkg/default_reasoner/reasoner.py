"""
DefaultReasoner: one knowledge base bound to every entailment engine.

ENGINE REGISTRY:
  p        preferential entailment (tolerance reduction)
  z        System Z ranks
  lcd      Dempster combination of per-rule simple support functions
  penalty  stratum-index costs
  lex      lexicographic stratum counts
  brewka   preferred subtheories

Compiled artefacts (stratification, LC chain, LCD model) are built lazily on
first use and never change afterwards, so once ``compile`` has run, queries
can be answered from several threads.  Query parsing registers new atoms and
must happen before fanning out.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property
from typing import Any

from default_reasoner.engines.lcd import LcdModel, compile_lcd, preferred_models, query_lcd
from default_reasoner.engines.magnitude import OrderVerdict
from default_reasoner.engines.strata_orders import (
    brewka_preferred,
    entails_brewka,
    entails_lex,
    entails_penalty,
)
from default_reasoner.engines.system_z import (
    ConsonantEbf,
    Stratification,
    entails_p,
    entails_z,
    lc_build,
    minimal_models,
    stratify,
    z_rank,
)
from default_reasoner.log_setup import get_logger
from default_reasoner.logic import DefaultBase, Formula, WorldSet, conjoin, models, negate, to_text
from default_reasoner.parser import parse_formula
from default_reasoner.reports import CompareReport, QueryResult, Verdict

logger = get_logger(__name__)

WITNESS_LIMIT = 8

EngineFn = Callable[["DefaultReasoner", Formula, Formula], tuple[Verdict, dict[str, Any]]]


def _verdict(entailed: bool) -> Verdict:
    return Verdict.ENTAILED if entailed else Verdict.NOT_ENTAILED


class DefaultReasoner:
    """
    Usage:
        reasoner = DefaultReasoner(load_fixture("penguin"), source="penguin")
        result = reasoner.entail("lcd", "b & p", "!f")
    """

    def __init__(self, base: DefaultBase, source: str = "<kb>") -> None:
        self.base = base
        self.source = source

    # ------------------------------------------------------------------
    # Compiled artefacts
    # ------------------------------------------------------------------

    @cached_property
    def stratification(self) -> Stratification:
        strat = stratify(self.base)
        logger.info("%s: %d strata, consistent=%s", self.source, len(strat), strat.is_consistent)
        return strat

    def require_consistent(self) -> Stratification:
        return self.stratification.require_consistent()

    @cached_property
    def chain(self) -> ConsonantEbf:
        self.require_consistent()
        return lc_build(self.base)

    @cached_property
    def lcd_model(self) -> LcdModel:
        self.require_consistent()
        return compile_lcd(self.base)

    def compile(self, engines: Iterable[str] = ()) -> None:
        """Build everything the given engines need, failing early on an inconsistent base."""
        engines = set(engines)
        self.require_consistent()
        _ = self.stratification.ranking
        if "lcd" in engines:
            _ = self.lcd_model

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def parse_query(self, alpha: str | Formula, beta: str | Formula) -> tuple[Formula, Formula]:
        vocab = self.base.vocabulary
        if isinstance(alpha, str):
            alpha = parse_formula(alpha, vocab)
        if isinstance(beta, str):
            beta = parse_formula(beta, vocab)
        return alpha, beta

    def describe(self, worlds: WorldSet) -> list[str]:
        vocab = self.base.vocabulary
        shown = [vocab.describe(w, worlds.n_atoms) for _, w in zip(range(WITNESS_LIMIT), worlds)]
        if len(worlds) > WITNESS_LIMIT:
            shown.append(f"... {len(worlds) - WITNESS_LIMIT} more")
        return shown

    def entail(self, engine: str, alpha: str | Formula, beta: str | Formula) -> QueryResult:
        if engine not in ENGINES:
            raise KeyError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
        alpha, beta = self.parse_query(alpha, beta)
        self.require_consistent()
        verdict, diagnostics = ENGINES[engine](self, alpha, beta)
        logger.debug("%s %s ~> %s: %s", engine, alpha, beta, verdict.value)
        return QueryResult(
            engine=engine,
            alpha=to_text(alpha),
            beta=to_text(beta),
            verdict=verdict,
            diagnostics=diagnostics,
        )

    def compare(
        self, alpha: str | Formula, beta: str | Formula, parallel: bool = True
    ) -> CompareReport:
        alpha, beta = self.parse_query(alpha, beta)
        self.compile(ENGINES)
        if parallel:
            with ThreadPoolExecutor(max_workers=len(ENGINES)) as pool:
                results = list(pool.map(lambda e: self.entail(e, alpha, beta), ENGINES))
        else:
            results = [self.entail(e, alpha, beta) for e in ENGINES]
        return CompareReport(kb=self.source, alpha=to_text(alpha), beta=to_text(beta), results=results)


# ---------------------------------------------------------------------------
# Engine adapters
# ---------------------------------------------------------------------------


def _strata(reasoner: DefaultReasoner) -> list[list[int]]:
    return [list(s) for s in reasoner.stratification.strata]


def _run_p(reasoner: DefaultReasoner, alpha: Formula, beta: Formula):
    entailed = entails_p(reasoner.base, alpha, beta, reasoner.stratification)
    return _verdict(entailed), {"strata": _strata(reasoner)}


def _run_z(reasoner: DefaultReasoner, alpha: Formula, beta: Formula):
    strat = reasoner.stratification
    entailed = entails_z(reasoner.base, alpha, beta, strat)
    diagnostics = {
        "strata": _strata(reasoner),
        "z_confirming": z_rank(strat, conjoin(alpha, beta)),
        "z_refuting": z_rank(strat, conjoin(alpha, negate(beta))),
    }
    diagnostics["witnesses"] = reasoner.describe(minimal_models(strat, alpha))
    return _verdict(entailed), diagnostics


def _run_lcd(reasoner: DefaultReasoner, alpha: Formula, beta: Formula):
    model = reasoner.lcd_model
    answer = query_lcd(model, alpha, beta)
    if answer.entailed:
        verdict = Verdict.ENTAILED
    elif answer.verdict is OrderVerdict.SAME_ORDER:
        verdict = Verdict.AMBIGUOUS
    elif answer.verdict is OrderVerdict.INCOMPARABLE:
        verdict = Verdict.INCOMPARABLE
    else:
        verdict = Verdict.NOT_ENTAILED
    diagnostics: dict[str, Any] = {
        "classes": model.describe_classes(),
        "confirming": [str(t) for t in answer.confirming],
        "refuting": [str(t) for t in answer.refuting],
        "order": answer.verdict.value if answer.verdict else None,
    }
    if not models(alpha, reasoner.base.vocabulary).is_empty():
        diagnostics["witnesses"] = reasoner.describe(preferred_models(model, alpha))
    return verdict, diagnostics


def _run_penalty(reasoner: DefaultReasoner, alpha: Formula, beta: Formula):
    entailed = entails_penalty(reasoner.base, alpha, beta, reasoner.stratification)
    return _verdict(entailed), {"strata": _strata(reasoner)}


def _run_lex(reasoner: DefaultReasoner, alpha: Formula, beta: Formula):
    entailed = entails_lex(reasoner.base, alpha, beta, reasoner.stratification)
    return _verdict(entailed), {"strata": _strata(reasoner)}


def _run_brewka(reasoner: DefaultReasoner, alpha: Formula, beta: Formula):
    strat = reasoner.stratification
    entailed = entails_brewka(reasoner.base, alpha, beta, strat)
    return _verdict(entailed), {
        "strata": _strata(reasoner),
        "witnesses": reasoner.describe(brewka_preferred(strat, alpha)),
    }


ENGINES: dict[str, EngineFn] = {
    "p": _run_p,
    "z": _run_z,
    "lcd": _run_lcd,
    "penalty": _run_penalty,
    "lex": _run_lex,
    "brewka": _run_brewka,
}

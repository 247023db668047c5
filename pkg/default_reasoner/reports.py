"""
Result and report models for the command-line surface.

Every model serialises with ``model_dump_json`` and reads back with
``model_validate_json``; the text renderers lay tables out with pandas.
"""

from __future__ import annotations

from enum import Enum
from typing import Any

import pandas as pd
from pydantic import BaseModel, Field


class Verdict(str, Enum):
    ENTAILED = "entailed"
    NOT_ENTAILED = "not-entailed"
    AMBIGUOUS = "not-entailed-ambiguous"          # same order on both sides (LCD only)
    INCOMPARABLE = "not-entailed-incomparable"    # no order on the cone (LCD only)

    @property
    def entailed(self) -> bool:
        return self is Verdict.ENTAILED


# ---------------------------------------------------------------------------
# Request / Response models
# ---------------------------------------------------------------------------


class QueryResult(BaseModel):
    engine: str
    alpha: str
    beta: str
    verdict: Verdict
    diagnostics: dict[str, Any] = Field(default_factory=dict)


class CompareReport(BaseModel):
    kb: str
    alpha: str
    beta: str
    results: list[QueryResult]

    def verdict_for(self, engine: str) -> Verdict:
        return next(r.verdict for r in self.results if r.engine == engine)


class ChainEntry(BaseModel):
    iteration: int
    mass: str
    focal_size: int
    satisfied: list[int]


class RoundEntry(BaseModel):
    number: int
    discharged: list[int]
    class_terms: list[str]
    note: str = ""


class WorldRow(BaseModel):
    world: str
    term: str
    rank: int | None = None
    penalty: int | None = None


class AnalysisReport(BaseModel):
    kb: str
    atoms: list[str]
    rules: list[str]
    consistent: bool
    strata: list[list[int]]
    residue: list[int] = Field(default_factory=list)
    chain: list[ChainEntry] = Field(default_factory=list)
    constraints: list[str] = Field(default_factory=list)
    rounds: list[RoundEntry] = Field(default_factory=list)
    classes: str = ""
    attached: list[int] = Field(default_factory=list)
    lcd_error: str | None = None
    warnings: list[str] = Field(default_factory=list)
    worlds: list[WorldRow] = Field(default_factory=list)
    worlds_note: str = ""


class RungEntry(BaseModel):
    eps: str
    ratio_error: str
    ratio_bound: str
    belief_gap: str
    belief_bound: str
    confirmed: int
    refuted: list[str] = Field(default_factory=list)
    error: str | None = None
    ok: bool


class OracleCase(BaseModel):
    case_id: str
    degrees: dict[str, int] = Field(default_factory=dict)
    rungs: list[RungEntry] = Field(default_factory=list)
    same_order: list[str] = Field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rungs)


class OracleReport(BaseModel):
    source: str
    cases: list[OracleCase]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def skipped(self) -> list[str]:
        return [c.case_id for c in self.cases if c.error]


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------


def _table(rows: list[dict[str, Any]]) -> str:
    if not rows:
        return "  (none)"
    return pd.DataFrame(rows).to_string(index=False)


def render_query(result: QueryResult) -> str:
    lines = [f"{result.engine}: {result.alpha} ~> {result.beta}  =>  {result.verdict.value}"]
    for key, value in result.diagnostics.items():
        lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def render_compare(report: CompareReport) -> str:
    header = f"{report.kb}: {report.alpha} ~> {report.beta}"
    rows = [{"engine": r.engine, "verdict": r.verdict.value} for r in report.results]
    return f"{header}\n{_table(rows)}"


def render_analysis(report: AnalysisReport) -> str:
    out = [f"knowledge base {report.kb}", f"atoms: {' '.join(report.atoms) or '(none)'}", "rules:"]
    out += [f"  {rule}" for rule in report.rules] or ["  (none)"]

    if not report.consistent:
        out.append(f"INCONSISTENT: no rule among {report.residue} is tolerated")
        if report.strata:
            out.append(f"strata found before the stall: {report.strata}")
        return "\n".join(out)

    out.append("Z-strata:")
    out += [f"  D{i} = {stratum}" for i, stratum in enumerate(report.strata, start=1)] or ["  (empty)"]

    out.append("LC chain:")
    out.append(_table([entry.model_dump() for entry in report.chain]))

    out.append("LCD constraints:")
    out += [f"  {c}" for c in report.constraints] or ["  (none)"]
    if report.lcd_error:
        out.append(f"LCD solver failed: {report.lcd_error}")
    else:
        out.append("solver rounds:")
        out.append(
            _table(
                [
                    {
                        "round": r.number,
                        "discharged": r.discharged,
                        "class": ", ".join(r.class_terms),
                        "note": r.note,
                    }
                    for r in report.rounds
                ]
            )
        )
        out.append(f"classes: {report.classes or '(none)'}")
        if report.attached:
            out.append(f"attached to the final class: {report.attached}")
    out += [f"warning: {w}" for w in report.warnings]

    out.append("worlds:")
    if report.worlds_note:
        out.append(f"  {report.worlds_note}")
    else:
        out.append(_table([row.model_dump() for row in report.worlds]))
    return "\n".join(out)


def render_oracle(report: OracleReport) -> str:
    out = [f"oracle over {report.source}"]
    for case in report.cases:
        if case.error:
            out.append(f"{case.case_id}: skipped ({case.error})")
            continue
        status = "ok" if case.ok else "FAILED"
        out.append(f"{case.case_id}: {status}  degrees {case.degrees}")
        out.append(
            _table(
                [
                    {
                        "eps": r.eps,
                        "ratio error": r.ratio_error,
                        "bound": r.ratio_bound,
                        "1 - bel": r.belief_gap,
                        "belief bound": r.belief_bound,
                        "confirmed": r.confirmed,
                        "refuted": len(r.refuted),
                        "ok": r.ok,
                    }
                    for r in case.rungs
                ]
            )
        )
        out += [f"  {pair}" for pair in case.same_order]
    out.append("PASS" if report.ok else "FAIL")
    return "\n".join(out)

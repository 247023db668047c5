"""
Exception hierarchy for the default reasoner.

Library code raises these; only the command-line layer turns them into exit
codes.  Stratification inconsistency is reported as a value by
``system_z.stratify`` and only becomes ``InconsistentBaseError`` where an
operation needs a consistent base.
"""

from __future__ import annotations

from collections.abc import Sequence


class ReasonerError(Exception):
    """Base class for every error raised by the reasoner."""


# ---------------------------------------------------------------------------
# Language and input
# ---------------------------------------------------------------------------


class FormulaSyntaxError(ReasonerError):
    """A formula did not match the grammar."""

    def __init__(self, text: str, position: int, message: str) -> None:
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class VocabularyError(ReasonerError):
    """Invalid atom name or vocabulary capacity exceeded."""


class UnsatisfiableQueryError(ReasonerError):
    """A query formula with no models where at least one is needed."""


class KnowledgeBaseSyntaxError(ReasonerError):
    """A knowledge-base file line could not be read."""

    def __init__(self, source: str, line: int, message: str) -> None:
        self.source = source
        self.line = line
        super().__init__(f"{source}:{line}: {message}")


# ---------------------------------------------------------------------------
# Belief-function kernel
# ---------------------------------------------------------------------------


class MassAssignmentError(ReasonerError):
    """Masses are negative, do not sum to one, or sit on the empty set."""


class ConditioningError(ReasonerError):
    """Conditioning on an event of zero plausibility."""


class TotalConflictError(ReasonerError):
    """Dempster combination of totally conflicting assignments."""


# ---------------------------------------------------------------------------
# Order-of-magnitude algebra
# ---------------------------------------------------------------------------


class InfeasibleSystemError(ReasonerError):
    """The degree system admits no positive assignment."""


class UnknownSymbolError(ReasonerError):
    """A term mentions an epsilon symbol the degree system does not know."""


class EmptyOperandError(ReasonerError):
    """compare_max was handed an empty term set."""


# ---------------------------------------------------------------------------
# Compilation
# ---------------------------------------------------------------------------


class InconsistentBaseError(ReasonerError):
    """The base has no tolerance stratification."""

    def __init__(self, residue: Sequence[int]) -> None:
        self.residue = tuple(residue)
        super().__init__(
            f"default base is inconsistent: no rule among {list(self.residue)} is tolerated"
        )


class LcdConstraintError(ReasonerError):
    """A rule whose antecedent and consequent are jointly unsatisfiable."""

    def __init__(self, rule_id: int) -> None:
        self.rule_id = rule_id
        super().__init__(f"rule {rule_id}: antecedent and consequent are jointly unsatisfiable")


class LcdSolveError(ReasonerError):
    """The class-partition solver stopped with active constraints left."""

    def __init__(self, message: str, active: Sequence[int] = ()) -> None:
        self.active = tuple(active)
        super().__init__(message)


class LcdVerificationError(LcdSolveError):
    """A solved model fails to satisfy one of its own constraints."""

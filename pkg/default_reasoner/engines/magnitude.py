"""
Order-of-magnitude algebra over products of per-rule infinitesimals.

DEGREE MODEL:
  Each rule id d owns a symbol e_d read as t^x_d for a base infinitesimal t and
  an unknown degree x_d > 0.  A term (a product of symbols, the empty product
  being 1) has as degree the sum of its symbols' degrees.  One term is
  infinitely larger than another iff its degree is strictly smaller, and of
  the same order iff the degrees are equal.

  A DegreeSystem carves the admissible degrees out of the positive orthant:
  equal-degree classes of terms, a strictly increasing chain between class
  representatives, plus free equalities and orderings.  ``compare`` and
  ``compare_max`` quantify over every point of that cone, each negation query
  being one exact feasibility check.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Collection, Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm

from default_reasoner.engines.feasibility import (
    LinearConstraint,
    Relation,
    feasible,
    feasible_point,
    sample_points,
)
from default_reasoner.errors import EmptyOperandError, InfeasibleSystemError, UnknownSymbolError

_SAMPLE_WITNESSES = 8


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class EpsTerm:
    """A multiset of rule ids, kept as a sorted tuple; ``()`` is the unit term 1."""

    factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.factors))
        if ordered != self.factors:
            object.__setattr__(self, "factors", ordered)

    @classmethod
    def of(cls, *rule_ids: int) -> EpsTerm:
        return cls(tuple(rule_ids))

    @property
    def is_unit(self) -> bool:
        return not self.factors

    @property
    def symbols(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.factors)))

    @cached_property
    def counts(self) -> Counter[int]:
        return Counter(self.factors)

    def divides(self, other: EpsTerm) -> bool:
        """Multiset inclusion: every factor of self occurs in other at least as often."""
        return all(other.counts[s] >= k for s, k in self.counts.items())

    def __mul__(self, other: EpsTerm) -> EpsTerm:
        return EpsTerm(self.factors + other.factors)

    def degree(self, assignment: Mapping[int, Fraction]) -> Fraction:
        return sum((assignment[s] for s in self.factors), Fraction(0))

    def __str__(self) -> str:
        return "1" if self.is_unit else "*".join(f"e{s}" for s in self.factors)


UNIT = EpsTerm()


def prune_dominated(terms: Iterable[EpsTerm]) -> tuple[EpsTerm, ...]:
    """Drop duplicates and every term that is a proper multiset-superset of another."""
    unique = sorted(set(terms))
    return tuple(
        t for t in unique if not any(u != t and u.divides(t) for u in unique)
    )


class OrderVerdict(Enum):
    GREATER = "greater"
    SMALLER = "smaller"
    SAME_ORDER = "same-order"
    INCOMPARABLE = "incomparable"

    @property
    def flipped(self) -> OrderVerdict:
        return {
            OrderVerdict.GREATER: OrderVerdict.SMALLER,
            OrderVerdict.SMALLER: OrderVerdict.GREATER,
        }.get(self, self)


# ---------------------------------------------------------------------------
# Degree system
# ---------------------------------------------------------------------------


def _gap(high: EpsTerm, low: EpsTerm) -> dict[int, int]:
    """Linear form of deg(high) - deg(low)."""
    form: Counter[int] = Counter(high.factors)
    form.subtract(low.factors)
    return {s: c for s, c in form.items() if c}


@dataclass(frozen=True)
class DegreeSystem:
    symbols: tuple[int, ...]
    classes: tuple[tuple[EpsTerm, ...], ...] = ()
    equalities: tuple[tuple[EpsTerm, EpsTerm], ...] = ()
    orderings: tuple[tuple[EpsTerm, EpsTerm], ...] = ()    # (larger, smaller) magnitude
    unconstrained: tuple[int, ...] = ()

    @cached_property
    def constraints(self) -> tuple[LinearConstraint, ...]:
        rows: list[LinearConstraint] = []
        for a, b in self.equalities:
            rows.append(LinearConstraint.build(_gap(a, b), Relation.EQ))
        for cls in self.classes:
            for term in cls[1:]:
                rows.append(LinearConstraint.build(_gap(term, cls[0]), Relation.EQ))
        for lower, upper in zip(self.classes, self.classes[1:]):
            rows.append(LinearConstraint.build(_gap(upper[0], lower[0]), Relation.GT))
        for larger, smaller in self.orderings:
            rows.append(LinearConstraint.build(_gap(smaller, larger), Relation.GT))
        return tuple(rows)

    @cached_property
    def is_feasible(self) -> bool:
        return feasible(self.constraints, self.symbols)

    @cached_property
    def witnesses(self) -> tuple[dict[int, Fraction], ...]:
        """A few seeded points of the cone, used to refute negation queries cheaply."""
        return tuple(
            sample_points(self.constraints, self.symbols, count=_SAMPLE_WITNESSES, seed=0)
        )

    def with_orderings(self, pairs: Iterable[tuple[EpsTerm, EpsTerm]]) -> DegreeSystem:
        return DegreeSystem(
            self.symbols,
            self.classes,
            self.equalities,
            self.orderings + tuple(pairs),
            self.unconstrained,
        )

    def sample(self, count: int = 50, seed: int = 0) -> list[dict[int, Fraction]]:
        return sample_points(self.constraints, self.symbols, count=count, seed=seed)

    def integer_degrees(self) -> dict[int, int]:
        """A point of the cone scaled to integers (the cone is homogeneous)."""
        point = feasible_point(self.constraints, self.symbols)
        if point is None:
            raise InfeasibleSystemError("degree system has no positive solution")
        scale = lcm(*(v.denominator for v in point.values())) if point else 1
        return {s: int(v * scale) for s, v in point.items()}

    def class_index(self, term: EpsTerm) -> int | None:
        for k, cls in enumerate(self.classes):
            if term in cls:
                return k
        return None

    def describe_classes(self) -> str:
        return "; ".join(
            f"ξ{k} = {{{', '.join(str(t) for t in cls)}}}" for k, cls in enumerate(self.classes)
        )


# ---------------------------------------------------------------------------
# Comparisons
# ---------------------------------------------------------------------------


def _ready(system: DegreeSystem, terms: Iterable[EpsTerm]) -> None:
    known = set(system.symbols)
    for term in terms:
        missing = set(term.factors) - known
        if missing:
            raise UnknownSymbolError(f"term {term} uses unknown symbols {sorted(missing)}")
    if not system.is_feasible:
        raise InfeasibleSystemError("degree system has no positive solution")


def _satisfiable(system: DegreeSystem, extra: list[LinearConstraint]) -> bool:
    """Is there a cone point satisfying every extra constraint?"""
    for point in system.witnesses:
        if all(c.holds_at(point) for c in extra):
            return True
    return feasible(system.constraints + tuple(extra), system.symbols)


def _at_least(high: EpsTerm, low: EpsTerm, strict: bool = False) -> LinearConstraint:
    """deg(high) >= deg(low), or > when strict."""
    return LinearConstraint.build(_gap(high, low), Relation.GT if strict else Relation.GE)


@lru_cache(maxsize=65536)
def compare(system: DegreeSystem, t1: EpsTerm, t2: EpsTerm) -> OrderVerdict:
    """Order of t1 against t2, valid at every point of the cone."""
    _ready(system, (t1, t2))
    if t1 == t2:
        return OrderVerdict.SAME_ORDER
    if not _satisfiable(system, [_at_least(t1, t2)]):
        return OrderVerdict.GREATER
    if not _satisfiable(system, [_at_least(t2, t1)]):
        return OrderVerdict.SMALLER
    if not _satisfiable(system, [_at_least(t1, t2, strict=True)]) and not _satisfiable(
        system, [_at_least(t2, t1, strict=True)]
    ):
        return OrderVerdict.SAME_ORDER
    return OrderVerdict.INCOMPARABLE


def compare_max(
    system: DegreeSystem, s1: Collection[EpsTerm], s2: Collection[EpsTerm]
) -> OrderVerdict:
    """
    Order of max(s1) against max(s2), the max of a set being its member of
    least degree at each point of the cone.
    """
    if not s1 or not s2:
        raise EmptyOperandError("compare_max needs two nonempty term sets")
    return _compare_max(system, frozenset(s1), frozenset(s2))


@lru_cache(maxsize=65536)
def _compare_max(
    system: DegreeSystem, s1: frozenset[EpsTerm], s2: frozenset[EpsTerm]
) -> OrderVerdict:
    _ready(system, s1 | s2)
    p1, p2 = prune_dominated(s1), prune_dominated(s2)
    if set(p1) == set(p2):
        return OrderVerdict.SAME_ORDER
    if UNIT in p1 or UNIT in p2:
        # the unit term divides everything, so pruning leaves it alone on its side
        return OrderVerdict.GREATER if UNIT in p1 else OrderVerdict.SMALLER
    if any(all(a != b and a.divides(b) for b in p2) for a in p1):
        return OrderVerdict.GREATER
    if any(all(b != a and b.divides(a) for a in p1) for b in p2):
        return OrderVerdict.SMALLER

    if not _min_can_reach(system, p1, p2):
        return OrderVerdict.GREATER
    if not _min_can_reach(system, p2, p1):
        return OrderVerdict.SMALLER
    if not _min_can_undercut(system, p1, p2) and not _min_can_undercut(system, p2, p1):
        return OrderVerdict.SAME_ORDER
    return OrderVerdict.INCOMPARABLE


def _min_can_reach(system: DegreeSystem, a: tuple[EpsTerm, ...], b: tuple[EpsTerm, ...]) -> bool:
    """Some cone point has min-degree(a) >= min-degree(b)."""
    return any(_satisfiable(system, [_at_least(t, witness) for t in a]) for witness in b)


def _min_can_undercut(
    system: DegreeSystem, a: tuple[EpsTerm, ...], b: tuple[EpsTerm, ...]
) -> bool:
    """Some cone point has min-degree(a) < min-degree(b)."""
    return any(
        _satisfiable(system, [_at_least(t, witness, strict=True) for t in b]) for witness in a
    )

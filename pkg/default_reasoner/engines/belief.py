"""
Belief-function kernel: exact rational masses, belief, plausibility,
Dempster conditioning and combination.

EXACTNESS PRINCIPLE:
  Every mass is a ``fractions.Fraction``.  Floats are rejected at the door:
  the numeric limit checks run at epsilon = 10^-6 with products of several
  factors, far past the point where doubles can tell 1 - e from 1.

Focal elements are ``WorldSet`` bitsets kept in a sparse map (absent means
zero mass), so a combination of n simple support functions carries at most
2^n focal elements.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from numbers import Rational

from default_reasoner.errors import ConditioningError, MassAssignmentError, TotalConflictError
from default_reasoner.logic import WorldSet

MassLike = Rational | int


def _exact(value: object) -> Fraction:
    if isinstance(value, float) or not isinstance(value, Rational):
        raise MassAssignmentError(f"mass {value!r} is not an exact rational")
    return Fraction(value)


# ---------------------------------------------------------------------------
# Mass assignment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MassAssignment:
    """
    A normalised basic belief assignment over the worlds of ``n_atoms`` atoms.

    ``entries`` holds (focal element, mass) pairs sorted by bitset so that two
    equal assignments compare equal.
    """

    n_atoms: int
    entries: tuple[tuple[WorldSet, Fraction], ...]

    def __post_init__(self) -> None:
        total = Fraction(0)
        for focal, mass in self.entries:
            if focal.n_atoms != self.n_atoms:
                raise MassAssignmentError("focal element over a different universe")
            if focal.is_empty():
                raise MassAssignmentError("the empty set cannot carry mass")
            if mass <= 0:
                raise MassAssignmentError(f"non-positive mass {mass} kept as focal element")
            total += mass
        if total != 1:
            raise MassAssignmentError(f"masses sum to {total}, not 1")

    @classmethod
    def from_masses(
        cls,
        n_atoms: int,
        masses: Mapping[WorldSet, MassLike] | Iterable[tuple[WorldSet, MassLike]],
    ) -> MassAssignment:
        """Build from possibly repeated keys: repeats add up, zero masses vanish."""
        items = masses.items() if isinstance(masses, Mapping) else masses
        merged: dict[WorldSet, Fraction] = defaultdict(Fraction)
        for focal, value in items:
            mass = _exact(value)
            if mass < 0:
                raise MassAssignmentError(f"negative mass {mass}")
            if mass and focal.is_empty():
                raise MassAssignmentError("the empty set cannot carry mass")
            merged[focal] += mass
        entries = tuple(
            sorted(((f, m) for f, m in merged.items() if m), key=lambda item: item[0].bits)
        )
        return cls(n_atoms, entries)

    @cached_property
    def focal(self) -> dict[WorldSet, Fraction]:
        return dict(self.entries)

    @property
    def focal_elements(self) -> list[WorldSet]:
        return [focal for focal, _ in self.entries]

    def mass(self, focal: WorldSet) -> Fraction:
        return self.focal.get(focal, Fraction(0))

    @property
    def universe(self) -> WorldSet:
        return WorldSet.full(self.n_atoms)


def vacuous(n_atoms: int) -> MassAssignment:
    """Total ignorance: all mass on the full universe."""
    return MassAssignment.from_masses(n_atoms, {WorldSet.full(n_atoms): 1})


def simple_support(focus: WorldSet, e: MassLike) -> MassAssignment:
    """Mass 1 - e on ``focus`` and e on the universe (merged when focus is the universe)."""
    e = _exact(e)
    if not 0 < e < 1:
        raise MassAssignmentError(f"simple support parameter {e} is not in (0, 1)")
    if focus.is_empty():
        raise MassAssignmentError("simple support on the empty set")
    universe = WorldSet.full(focus.n_atoms)
    return MassAssignment.from_masses(focus.n_atoms, [(focus, 1 - e), (universe, e)])


# ---------------------------------------------------------------------------
# Belief and plausibility
# ---------------------------------------------------------------------------


def _check_universe(m: MassAssignment, event: WorldSet) -> None:
    if event.n_atoms != m.n_atoms:
        raise MassAssignmentError(
            f"event over {event.n_atoms} atoms, assignment over {m.n_atoms}"
        )


def belief(m: MassAssignment, event: WorldSet) -> Fraction:
    _check_universe(m, event)
    return sum((mass for focal, mass in m.entries if focal.issubset(event)), Fraction(0))


def plausibility(m: MassAssignment, event: WorldSet) -> Fraction:
    _check_universe(m, event)
    return sum((mass for focal, mass in m.entries if not focal.isdisjoint(event)), Fraction(0))


def singleton_plausibility(m: MassAssignment, world: int) -> Fraction:
    return plausibility(m, WorldSet.of(m.n_atoms, [world]))


def is_consonant(m: MassAssignment) -> bool:
    """True iff the focal elements form a chain under inclusion."""
    chain = sorted(m.focal_elements, key=len)
    return all(inner.issubset(outer) for inner, outer in zip(chain, chain[1:]))


# ---------------------------------------------------------------------------
# Dempster conditioning
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionalBelief:
    """X -> bel(X | given), by the Dempster conditioning formula."""

    assignment: MassAssignment
    given: WorldSet
    outside_belief: Fraction       # bel of the complement of `given`

    def __call__(self, event: WorldSet) -> Fraction:
        outside = ~self.given
        return (belief(self.assignment, event | outside) - self.outside_belief) / (
            1 - self.outside_belief
        )

    def plausibility(self, event: WorldSet) -> Fraction:
        return 1 - self(~event)


def condition(m: MassAssignment, given: WorldSet) -> ConditionalBelief:
    _check_universe(m, given)
    if plausibility(m, given) == 0:
        raise ConditioningError("conditioning event has zero plausibility")
    return ConditionalBelief(m, given, belief(m, ~given))


# ---------------------------------------------------------------------------
# Dempster combination
# ---------------------------------------------------------------------------


def _conjunctive(m1: MassAssignment, m2: MassAssignment) -> dict[int, Fraction]:
    if m1.n_atoms != m2.n_atoms:
        raise MassAssignmentError("cannot combine assignments over different universes")
    products: dict[int, Fraction] = defaultdict(Fraction)
    for focal1, mass1 in m1.entries:
        for focal2, mass2 in m2.entries:
            products[focal1.bits & focal2.bits] += mass1 * mass2
    return products


def conflict(m1: MassAssignment, m2: MassAssignment) -> Fraction:
    """Mass the unnormalised combination puts on the empty set."""
    return _conjunctive(m1, m2).get(0, Fraction(0))


def combine(m1: MassAssignment, m2: MassAssignment) -> MassAssignment:
    """Dempster's rule, normalised."""
    products = _conjunctive(m1, m2)
    k = products.pop(0, Fraction(0))
    if k == 1:
        raise TotalConflictError("assignments are totally conflicting")
    scale = 1 - k
    return MassAssignment.from_masses(
        m1.n_atoms, [(WorldSet(m1.n_atoms, bits), mass / scale) for bits, mass in products.items()]
    )


def combine_all(assignments: Iterable[MassAssignment], n_atoms: int) -> MassAssignment:
    """Left fold of :func:`combine`, starting from the vacuous assignment."""
    return reduce(combine, assignments, vacuous(n_atoms))

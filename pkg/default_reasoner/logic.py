"""
Propositional core: vocabulary, formulas, worlds and default bases.

SEMANTICS PRINCIPLE:
  Every model computation is exhaustive enumeration over the 2^n worlds of a
  vocabulary.  A world is an integer whose bit i is the truth value of atom i,
  and a set of worlds is a Python int used as a bitset, so conjunction is
  ``&``, disjunction ``|`` and negation a masked ``~``.

Atoms are append-only: registering a new atom never renumbers an old one.
A world over a larger vocabulary therefore projects onto a smaller one by
masking its low bits, which is how compiled bases answer queries that mention
atoms registered after compilation.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TypeVar

from default_reasoner.errors import VocabularyError

DEFAULT_CAPACITY = 24
ATOM_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED_WORDS = frozenset({"true", "false"})

T = TypeVar("T")


# ---------------------------------------------------------------------------
# Worlds and world sets
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1024)
def _atom_mask(index: int, n_atoms: int) -> int:
    """Bitset of the worlds (over ``n_atoms``) where atom ``index`` is true."""
    half = 1 << index
    mask = ((1 << half) - 1) << half
    width = half << 1
    total = 1 << n_atoms
    while width < total:
        mask |= mask << width
        width <<= 1
    return mask


def _full_bits(n_atoms: int) -> int:
    return (1 << (1 << n_atoms)) - 1


@dataclass(frozen=True, slots=True)
class WorldSet:
    """A subset of the 2^n_atoms worlds, stored as an int bitset."""

    n_atoms: int
    bits: int = 0

    @classmethod
    def full(cls, n_atoms: int) -> WorldSet:
        return cls(n_atoms, _full_bits(n_atoms))

    @classmethod
    def empty(cls, n_atoms: int) -> WorldSet:
        return cls(n_atoms, 0)

    @classmethod
    def of(cls, n_atoms: int, worlds: Iterable[int]) -> WorldSet:
        bits = 0
        for world in worlds:
            if not 0 <= world < (1 << n_atoms):
                raise ValueError(f"world {world} outside a {n_atoms}-atom universe")
            bits |= 1 << world
        return cls(n_atoms, bits)

    # -- set algebra ---------------------------------------------------------

    def _check(self, other: WorldSet) -> None:
        if self.n_atoms != other.n_atoms:
            raise ValueError(
                f"world sets over {self.n_atoms} and {other.n_atoms} atoms cannot be mixed"
            )

    def __and__(self, other: WorldSet) -> WorldSet:
        self._check(other)
        return WorldSet(self.n_atoms, self.bits & other.bits)

    def __or__(self, other: WorldSet) -> WorldSet:
        self._check(other)
        return WorldSet(self.n_atoms, self.bits | other.bits)

    def __sub__(self, other: WorldSet) -> WorldSet:
        self._check(other)
        return WorldSet(self.n_atoms, self.bits & ~other.bits)

    def __invert__(self) -> WorldSet:
        return WorldSet(self.n_atoms, _full_bits(self.n_atoms) & ~self.bits)

    def complement(self) -> WorldSet:
        return ~self

    def issubset(self, other: WorldSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: WorldSet) -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def is_empty(self) -> bool:
        return self.bits == 0

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, world: int) -> bool:
        return world >= 0 and (self.bits >> world) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    # -- universe changes ----------------------------------------------------

    def project(self, n_atoms: int) -> WorldSet:
        """Image under forgetting every atom with index >= ``n_atoms``."""
        if n_atoms > self.n_atoms:
            raise ValueError("projection target is larger than the source universe")
        bits = self.bits
        width = 1 << self.n_atoms
        target = 1 << n_atoms
        while width > target:
            half = width >> 1
            bits = (bits & ((1 << half) - 1)) | (bits >> half)
            width = half
        return WorldSet(n_atoms, bits)

    def lift(self, n_atoms: int) -> WorldSet:
        """Preimage of :meth:`project`: every extension of every member world."""
        if n_atoms < self.n_atoms:
            raise ValueError("lift target is smaller than the source universe")
        bits = self.bits
        width = 1 << self.n_atoms
        target = 1 << n_atoms
        while width < target:
            bits |= bits << width
            width <<= 1
        return WorldSet(n_atoms, bits)


# ---------------------------------------------------------------------------
# Vocabulary
# ---------------------------------------------------------------------------


class Vocabulary:
    """
    Ordered, append-only registry of atom names.

    Index i of an atom is bit i of a world.  Registration is the only
    mutation and it never moves an existing atom; everything compiled over the
    first n atoms stays valid when more atoms arrive.
    """

    def __init__(self, atoms: Iterable[str] = (), capacity: int = DEFAULT_CAPACITY) -> None:
        if capacity < 1:
            raise VocabularyError(f"capacity must be positive, got {capacity}")
        self.capacity = capacity
        self._atoms: list[str] = []
        self._index: dict[str, int] = {}
        self.register_all(atoms)

    @property
    def atoms(self) -> tuple[str, ...]:
        return tuple(self._atoms)

    def __len__(self) -> int:
        return len(self._atoms)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(tuple(self._atoms))

    def __repr__(self) -> str:
        return f"Vocabulary({self._atoms!r}, capacity={self.capacity})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise VocabularyError(f"unknown atom {name!r}") from None

    def register(self, name: str) -> int:
        return self.register_all([name])[0]

    def register_all(self, names: Iterable[str]) -> list[int]:
        """Register names in order; fails before registering anything if capacity is hit."""
        names = list(names)
        fresh: list[str] = []
        for name in names:
            if not ATOM_NAME.match(name) or name in RESERVED_WORDS:
                raise VocabularyError(f"invalid atom name {name!r}")
            if name not in self._index and name not in fresh:
                fresh.append(name)
        if len(self._atoms) + len(fresh) > self.capacity:
            raise VocabularyError(
                f"vocabulary capacity {self.capacity} exceeded "
                f"({len(self._atoms)} registered, {len(fresh)} new)"
            )
        for name in fresh:
            self._index[name] = len(self._atoms)
            self._atoms.append(name)
        return [self._index[name] for name in names]

    def universe(self, n_atoms: int | None = None) -> WorldSet:
        return WorldSet.full(len(self) if n_atoms is None else n_atoms)

    def describe(self, world: int, n_atoms: int | None = None) -> str:
        """Literal rendering of a world, e.g. ``b !f p``."""
        n = len(self) if n_atoms is None else n_atoms
        if n == 0:
            return "(empty)"
        return " ".join(
            name if (world >> i) & 1 else f"!{name}" for i, name in enumerate(self._atoms[:n])
        )


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


class Formula:
    """Base of the propositional syntax tree."""

    __slots__ = ()

    def atoms(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        _collect_atoms(self, seen)
        return tuple(seen)

    def __and__(self, other: Formula) -> Formula:
        return And((self, other))

    def __or__(self, other: Formula) -> Formula:
        return Or((self, other))

    def __invert__(self) -> Formula:
        return Not(self)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    operands: tuple[Formula, ...]


@dataclass(frozen=True, slots=True)
class Or(Formula):
    operands: tuple[Formula, ...]


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


TRUE = Top()
FALSE = Bottom()


def _collect_atoms(f: Formula, seen: dict[str, None]) -> None:
    match f:
        case Atom(name):
            seen.setdefault(name)
        case Not(operand):
            _collect_atoms(operand, seen)
        case And(operands) | Or(operands):
            for operand in operands:
                _collect_atoms(operand, seen)
        case Implies(left, right) | Iff(left, right):
            _collect_atoms(left, seen)
            _collect_atoms(right, seen)


def models(f: Formula, vocab: Vocabulary, n_atoms: int | None = None) -> WorldSet:
    """[f] over the first ``n_atoms`` atoms of ``vocab`` (all of them by default)."""
    n = len(vocab) if n_atoms is None else n_atoms
    return WorldSet(n, _evaluate(f, vocab, n, _full_bits(n)))


def _evaluate(f: Formula, vocab: Vocabulary, n: int, full: int) -> int:
    match f:
        case Atom(name):
            index = vocab.index(name)
            if index >= n:
                raise VocabularyError(f"atom {name!r} is outside the first {n} atoms")
            return _atom_mask(index, n)
        case Top():
            return full
        case Bottom():
            return 0
        case Not(operand):
            return full & ~_evaluate(operand, vocab, n, full)
        case And(operands):
            bits = full
            for operand in operands:
                bits &= _evaluate(operand, vocab, n, full)
            return bits
        case Or(operands):
            bits = 0
            for operand in operands:
                bits |= _evaluate(operand, vocab, n, full)
            return bits
        case Implies(antecedent, consequent):
            return (full & ~_evaluate(antecedent, vocab, n, full)) | _evaluate(
                consequent, vocab, n, full
            )
        case Iff(left, right):
            return full & ~(_evaluate(left, vocab, n, full) ^ _evaluate(right, vocab, n, full))
    raise TypeError(f"not a formula: {f!r}")


def conjoin(*formulas: Formula) -> Formula:
    if not formulas:
        return TRUE
    if len(formulas) == 1:
        return formulas[0]
    return And(tuple(formulas))


def negate(f: Formula) -> Formula:
    return Not(f)


# -- canonical printer -------------------------------------------------------

_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_NOT, _PREC_LEAF = range(1, 7)


def _precedence(f: Formula) -> int:
    match f:
        case Iff():
            return _PREC_IFF
        case Implies():
            return _PREC_IMP
        case Or():
            return _PREC_OR
        case And():
            return _PREC_AND
        case Not():
            return _PREC_NOT
    return _PREC_LEAF


def _wrap(f: Formula, strictly_above: int) -> str:
    text = to_text(f)
    return text if _precedence(f) > strictly_above else f"({text})"


def to_text(f: Formula) -> str:
    """Canonical text: parsing the result gives back an equal tree."""
    match f:
        case Atom(name):
            return name
        case Top():
            return "true"
        case Bottom():
            return "false"
        case Not(operand):
            return "!" + _wrap(operand, _PREC_NOT - 1)
        case And(operands):
            return " & ".join(_wrap(o, _PREC_AND) for o in operands)
        case Or(operands):
            return " | ".join(_wrap(o, _PREC_OR) for o in operands)
        case Implies(antecedent, consequent):
            # right-associative
            return f"{_wrap(antecedent, _PREC_IMP)} -> {_wrap(consequent, _PREC_IMP - 1)}"
        case Iff(left, right):
            # left-associative
            return f"{_wrap(left, _PREC_IFF - 1)} <-> {_wrap(right, _PREC_IFF)}"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Default rules and bases
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class DefaultRule:
    id: int
    antecedent: Formula
    consequent: Formula

    @property
    def material(self) -> Formula:
        return material(self)

    def __str__(self) -> str:
        return f"{to_text(self.antecedent)} ~> {to_text(self.consequent)}"


def material(rule: DefaultRule) -> Formula:
    """The material counterpart !antecedent | consequent."""
    return Or((Not(rule.antecedent), rule.consequent))


@dataclass(frozen=True)
class DefaultBase:
    """
    Ordered multiset of default rules sharing one vocabulary.

    ``n_atoms`` freezes the universe the base was built over; the vocabulary
    may grow afterwards without touching anything compiled from the base.
    """

    rules: tuple[DefaultRule, ...]
    vocabulary: Vocabulary
    n_atoms: int = field(default=-1)

    def __post_init__(self) -> None:
        if self.n_atoms < 0:
            object.__setattr__(self, "n_atoms", len(self.vocabulary))
        for position, rule in enumerate(self.rules, start=1):
            if rule.id != position:
                raise ValueError(f"rule ids must be 1..n in order; got {rule.id} at {position}")
            for name in rule.antecedent.atoms() + rule.consequent.atoms():
                if self.vocabulary.index(name) >= self.n_atoms:
                    raise VocabularyError(f"rule {rule.id} uses atom {name!r} outside the base")

    @classmethod
    def build(
        cls, pairs: Iterable[tuple[Formula, Formula]], vocabulary: Vocabulary
    ) -> DefaultBase:
        rules = tuple(
            DefaultRule(i, antecedent, consequent)
            for i, (antecedent, consequent) in enumerate(pairs, start=1)
        )
        return cls(rules, vocabulary)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[DefaultRule]:
        return iter(self.rules)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(rule.id for rule in self.rules)

    def rule(self, rule_id: int) -> DefaultRule:
        if not 1 <= rule_id <= len(self.rules):
            raise KeyError(rule_id)
        return self.rules[rule_id - 1]

    def universe(self) -> WorldSet:
        return WorldSet.full(self.n_atoms)

    def models(self, f: Formula) -> WorldSet:
        return models(f, self.vocabulary, self.n_atoms)

    def with_rule(self, antecedent: Formula, consequent: Formula) -> DefaultBase:
        """A copy with one more rule, over the vocabulary as it stands now."""
        rules = self.rules + (DefaultRule(len(self.rules) + 1, antecedent, consequent),)
        return DefaultBase(rules, self.vocabulary, len(self.vocabulary))

    def reordered(self, order: Sequence[int]) -> DefaultBase:
        """Rules listed in ``order`` (old ids), renumbered 1..n."""
        if sorted(order) != list(self.ids):
            raise ValueError("order must be a permutation of the rule ids")
        pairs = [(self.rule(i).antecedent, self.rule(i).consequent) for i in order]
        rules = tuple(DefaultRule(k, a, c) for k, (a, c) in enumerate(pairs, start=1))
        return DefaultBase(rules, self.vocabulary, self.n_atoms)

    def violations(self) -> dict[int, WorldSet]:
        """Per rule id, the worlds of the base universe falsifying its material counterpart."""
        return {rule.id: ~self.models(material(rule)) for rule in self.rules}


# ---------------------------------------------------------------------------
# Preferred-world selection
# ---------------------------------------------------------------------------


def non_dominated(candidates: Iterable[T], better: Callable[[T, T], bool]) -> list[T]:
    """Candidates (worlds, or terms standing for them) no other candidate strictly beats."""
    pool = list(dict.fromkeys(candidates))
    return [c for c in pool if not any(better(other, c) for other in pool if other != c)]

"""
Seeded random default bases and queries.

Shared by the property tests and by ``oracle --seed``.  Every generated rule
is non-trivial: its antecedent is satisfiable together with the consequent
and together with the negated consequent, so each rule both can be confirmed
and can be refuted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from default_reasoner.engines.system_z import stratify
from default_reasoner.logic import (
    And,
    Atom,
    DefaultBase,
    Formula,
    Not,
    Or,
    Vocabulary,
    conjoin,
    models,
)

# ---------------------------------------------------------------------------
# Data model
# ---------------------------------------------------------------------------

ATOM_NAMES = ("a", "b", "c", "d", "e", "g")

Query = tuple[Formula, Formula]


@dataclass
class RandomCase:
    case_id: str
    seed: int
    base: DefaultBase
    queries: list[Query] = field(default_factory=list)


# Relative weights of the formula shapes the generator draws from
SHAPE_WEIGHTS: dict[str, int] = {
    "literal":     5,
    "conjunction": 4,
    "disjunction": 2,
}


def random_literal(rng: random.Random, atoms: tuple[str, ...]) -> Formula:
    atom = Atom(rng.choice(atoms))
    return atom if rng.random() < 0.5 else Not(atom)


def random_formula(rng: random.Random, atoms: tuple[str, ...]) -> Formula:
    shape = rng.choices(list(SHAPE_WEIGHTS), weights=list(SHAPE_WEIGHTS.values()))[0]
    if shape == "literal" or len(atoms) < 2:
        return random_literal(rng, atoms)
    names = rng.sample(atoms, k=min(len(atoms), rng.choice((2, 2, 3))))
    literals = tuple(
        Atom(name) if rng.random() < 0.5 else Not(Atom(name)) for name in names
    )
    return And(literals) if shape == "conjunction" else Or(literals)


def _non_trivial(base_vocab: Vocabulary, antecedent: Formula, consequent: Formula) -> bool:
    return bool(models(conjoin(antecedent, consequent), base_vocab)) and bool(
        models(conjoin(antecedent, Not(consequent)), base_vocab)
    )


def generate_base(seed: int, max_rules: int = 5, max_atoms: int = 4) -> DefaultBase:
    """A base of 1..max_rules non-trivial rules over 2..max_atoms atoms."""
    rng = random.Random(seed)
    vocab = Vocabulary(ATOM_NAMES[: rng.randint(2, max_atoms)])
    atoms = vocab.atoms
    pairs: list[Query] = []
    target = rng.randint(1, max_rules)
    while len(pairs) < target:
        antecedent = random_formula(rng, atoms)
        consequent = random_literal(rng, atoms) if rng.random() < 0.7 else random_formula(rng, atoms)
        if _non_trivial(vocab, antecedent, consequent):
            pairs.append((antecedent, consequent))
    return DefaultBase.build(pairs, vocab)


def generate_queries(base: DefaultBase, seed: int, count: int = 10) -> list[Query]:
    """Queries over the base's atoms with satisfiable antecedents."""
    rng = random.Random(seed)
    atoms = base.vocabulary.atoms[: base.n_atoms]
    queries: list[Query] = []
    while len(queries) < count:
        antecedent = random_formula(rng, atoms)
        if rng.random() < 0.3:
            antecedent = conjoin(antecedent, random_literal(rng, atoms))
        if base.models(antecedent).is_empty():
            continue
        consequent = random_literal(rng, atoms) if rng.random() < 0.6 else random_formula(rng, atoms)
        queries.append((antecedent, consequent))
    return queries


def generate_suite(
    seed: int = 7,
    size: int = 200,
    max_rules: int = 5,
    max_atoms: int = 4,
    queries: int = 10,
    consistent_only: bool = True,
) -> list[RandomCase]:
    """
    ``size`` cases drawn deterministically from ``seed``.  With
    ``consistent_only`` bases without a tolerance stratification are skipped
    and drawing continues until the suite is full.
    """
    cases: list[RandomCase] = []
    draw = 0
    while len(cases) < size:
        case_seed = seed * 1_000_003 + draw
        draw += 1
        base = generate_base(case_seed, max_rules=max_rules, max_atoms=max_atoms)
        if consistent_only and not stratify(base).is_consistent:
            continue
        cases.append(
            RandomCase(
                case_id=f"RB_{seed}_{len(cases):04d}",
                seed=case_seed,
                base=base,
                queries=generate_queries(base, case_seed, queries),
            )
        )
    return cases

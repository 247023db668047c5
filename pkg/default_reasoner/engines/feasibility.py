"""
Exact linear feasibility over the open positive orthant.

Decides whether a finite system of linear equalities, strict and non-strict
inequalities with rational coefficients has a solution with every variable
strictly positive.  Equalities are removed first by exact substitution, the
remaining variables by Fourier–Motzkin elimination.  Rows are kept as
primitive integer vectors, so no rounding ever happens, and every row carries
a strictness flag: a combination is strict as soon as one parent is.

A feasible point is rebuilt by back-substitution through the recorded
elimination stages, which also gives seeded random samples of the cone.
"""

from __future__ import annotations

import random
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational

# sum(coefficients[i] * x_i) + constant, then (> 0) if strict else (>= 0)
_Row = tuple[tuple[int, ...], int, bool]


class Relation(Enum):
    EQ = "="
    GT = ">"
    GE = ">="


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(c * x) + constant  <relation>  0``."""

    coefficients: tuple[tuple[Hashable, Fraction], ...]
    relation: Relation
    constant: Fraction = Fraction(0)

    @classmethod
    def build(
        cls,
        coefficients: Mapping[Hashable, Rational | int],
        relation: Relation,
        constant: Rational | int = 0,
    ) -> LinearConstraint:
        kept = tuple((var, Fraction(c)) for var, c in coefficients.items() if c != 0)
        return cls(kept, relation, Fraction(constant))

    @property
    def variables(self) -> tuple[Hashable, ...]:
        return tuple(var for var, _ in self.coefficients)

    def holds_at(self, point: Mapping[Hashable, Fraction]) -> bool:
        value = self.constant + sum(c * point[var] for var, c in self.coefficients)
        if self.relation is Relation.EQ:
            return value == 0
        if self.relation is Relation.GT:
            return value > 0
        return value >= 0


# ---------------------------------------------------------------------------
# Integer row helpers
# ---------------------------------------------------------------------------


def _primitive(values: list[int]) -> tuple[int, ...]:
    g = gcd(*values)
    if g > 1:
        return tuple(v // g for v in values)
    return tuple(values)


def _integer_vector(values: list[Fraction]) -> list[int]:
    scale = lcm(*(v.denominator for v in values)) if values else 1
    return [int(v * scale) for v in values]


def _trivial_violation(row: _Row) -> bool | None:
    """None if the row still mentions a variable, else whether it is violated."""
    coeffs, const, strict = row
    if any(coeffs):
        return None
    return const <= 0 if strict else const < 0


def _deduplicate(rows: Iterable[_Row]) -> list[_Row]:
    """Keep only the tightest row per coefficient vector."""
    tightest: dict[tuple[int, ...], tuple[int, bool]] = {}
    for coeffs, const, strict in rows:
        held = tightest.get(coeffs)
        if held is None or const < held[0] or (const == held[0] and strict and not held[1]):
            tightest[coeffs] = (const, strict)
    return [(coeffs, const, strict) for coeffs, (const, strict) in tightest.items()]


def _normalised(coeffs: list[int], const: int, strict: bool) -> _Row:
    vector = _primitive(coeffs + [const])
    return vector[:-1], vector[-1], strict


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Elimination:
    """Trace of a successful elimination, enough to rebuild a point."""

    variables: tuple[Hashable, ...]
    substitutions: tuple[tuple[int, tuple[int, ...]], ...]   # (pivot, equality incl. constant)
    stages: tuple[tuple[int, tuple[_Row, ...]], ...]          # (variable, rows bounding it)


def _prepare(
    constraints: tuple[LinearConstraint, ...], variables: tuple[Hashable, ...]
) -> tuple[tuple[Hashable, ...], list[list[int]], list[_Row]]:
    order: dict[Hashable, None] = dict.fromkeys(variables)
    for constraint in constraints:
        order.update(dict.fromkeys(constraint.variables))
    names = tuple(order)
    index = {var: i for i, var in enumerate(names)}
    n = len(names)

    equalities: list[list[int]] = []
    rows: list[_Row] = []
    for constraint in constraints:
        vector = [Fraction(0)] * n + [constraint.constant]
        for var, c in constraint.coefficients:
            vector[index[var]] += c
        ints = _integer_vector(vector)
        if constraint.relation is Relation.EQ:
            equalities.append(ints)
        else:
            rows.append(_normalised(ints[:-1], ints[-1], constraint.relation is Relation.GT))
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        rows.append((tuple(unit), 0, True))
    return names, equalities, rows


@lru_cache(maxsize=8192)
def _eliminate(
    constraints: tuple[LinearConstraint, ...], variables: tuple[Hashable, ...]
) -> _Elimination | None:
    names, equalities, rows = _prepare(constraints, variables)
    n = len(names)
    substitutions: list[tuple[int, tuple[int, ...]]] = []

    pending = equalities
    while pending:
        eq = pending.pop()
        pivot = next((i for i in range(n) if eq[i]), None)
        if pivot is None:
            if eq[n] != 0:
                return None
            continue
        a = eq[pivot]
        substitutions.append((pivot, tuple(eq)))
        pending = [[a * e[i] - e[pivot] * eq[i] for i in range(n + 1)] for e in pending]
        sign = 1 if a > 0 else -1
        substituted = []
        for coeffs, const, strict in rows:
            r_p = coeffs[pivot]
            if r_p == 0:
                substituted.append((coeffs, const, strict))
                continue
            new = [abs(a) * coeffs[i] - sign * r_p * eq[i] for i in range(n)]
            substituted.append(_normalised(new, abs(a) * const - sign * r_p * eq[n], strict))
        rows = substituted

    live: list[_Row] = []
    for row in _deduplicate(rows):
        verdict = _trivial_violation(row)
        if verdict is True:
            return None
        if verdict is None:
            live.append(row)

    remaining = set(range(n)) - {pivot for pivot, _ in substitutions}
    stages: list[tuple[int, tuple[_Row, ...]]] = []
    while remaining:
        v = min(remaining, key=lambda i: (_pair_cost(live, i), i))
        remaining.discard(v)
        pos = [r for r in live if r[0][v] > 0]
        neg = [r for r in live if r[0][v] < 0]
        rest = [r for r in live if r[0][v] == 0]
        stages.append((v, tuple(pos + neg)))
        combined = list(rest)
        for p_coeffs, p_const, p_strict in pos:
            for q_coeffs, q_const, q_strict in neg:
                mp, mq = -q_coeffs[v], p_coeffs[v]
                row = _normalised(
                    [mp * p_coeffs[i] + mq * q_coeffs[i] for i in range(n)],
                    mp * p_const + mq * q_const,
                    p_strict or q_strict,
                )
                verdict = _trivial_violation(row)
                if verdict is True:
                    return None
                if verdict is None:
                    combined.append(row)
        live = _deduplicate(combined)

    return _Elimination(names, tuple(substitutions), tuple(stages))


def _pair_cost(rows: list[_Row], v: int) -> int:
    pos = sum(1 for r in rows if r[0][v] > 0)
    neg = sum(1 for r in rows if r[0][v] < 0)
    return pos * neg - pos - neg


# ---------------------------------------------------------------------------
# Back-substitution
# ---------------------------------------------------------------------------


def _pick(
    lower: Fraction | None, upper: Fraction | None, rng: random.Random | None
) -> Fraction:
    if lower is None and upper is None:
        return Fraction(1) if rng is None else Fraction(rng.randint(1, 1000), 100)
    if upper is None:
        step = Fraction(1) if rng is None else Fraction(rng.randint(1, 1000), 100)
        return lower + step
    if lower is None:
        step = Fraction(1) if rng is None else Fraction(rng.randint(1, 1000), 100)
        return upper - step
    if lower == upper:
        return lower
    t = Fraction(1, 2) if rng is None else Fraction(rng.randint(1, 999), 1000)
    return lower + (upper - lower) * t


def _rebuild(trace: _Elimination, rng: random.Random | None) -> dict[Hashable, Fraction]:
    values: dict[int, Fraction] = {}
    for v, rows in reversed(trace.stages):
        lower: Fraction | None = None
        upper: Fraction | None = None
        for coeffs, const, _strict in rows:
            rest = const + sum(
                c * values.get(i, Fraction(0)) for i, c in enumerate(coeffs) if i != v and c
            )
            bound = Fraction(-rest, coeffs[v])
            if coeffs[v] > 0:
                lower = bound if lower is None else max(lower, bound)
            else:
                upper = bound if upper is None else min(upper, bound)
        values[v] = _pick(lower, upper, rng)
    n = len(trace.variables)
    for pivot, eq in reversed(trace.substitutions):
        rest = eq[n] + sum(c * values[i] for i, c in enumerate(eq[:n]) if i != pivot and c)
        values[pivot] = Fraction(-rest, eq[pivot])
    return {trace.variables[i]: values[i] for i in range(n)}


# ---------------------------------------------------------------------------
# Public interface
# ---------------------------------------------------------------------------


def feasible(constraints: Iterable[LinearConstraint], variables: Iterable[Hashable] = ()) -> bool:
    """True iff some point with every variable > 0 satisfies all constraints."""
    return _eliminate(tuple(constraints), tuple(variables)) is not None


def feasible_point(
    constraints: Iterable[LinearConstraint], variables: Iterable[Hashable] = ()
) -> dict[Hashable, Fraction] | None:
    """A deterministic witness point, or None when infeasible."""
    trace = _eliminate(tuple(constraints), tuple(variables))
    return None if trace is None else _rebuild(trace, None)


def sample_points(
    constraints: Iterable[LinearConstraint],
    variables: Iterable[Hashable] = (),
    count: int = 50,
    seed: int = 0,
) -> list[dict[Hashable, Fraction]]:
    """``count`` seeded rational points of the feasible region (empty if infeasible)."""
    trace = _eliminate(tuple(constraints), tuple(variables))
    if trace is None:
        return []
    rng = random.Random(seed)
    return [_rebuild(trace, rng) for _ in range(count)]

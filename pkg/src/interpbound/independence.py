"""Exact checks of (d, S)-independence and of monomial expectation gaps.

Everything here is exhaustive over a uniform family and uses
:class:`fractions.Fraction`; no floating point is involved.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence, Union

from .errors import BudgetExceededError, TrivialPropertyError
from .field import Family, FieldPoly, FunctionTable, evaluate

VALUE_BIT = "value-bit"
COEFFICIENT_BIT = "coefficient-bit"
PARITY = "parity-of-subset"
KINDS = (VALUE_BIT, COEFFICIENT_BIT, PARITY)

TUPLE_BUDGET = 10**6
MONOMIAL_BUDGET = 2 * 10**5


@dataclass(frozen=True)
class PropertySpec:
    """A single-bit property of a function.

    value-bit: ``[f(point) in accept]``; coefficient-bit: ``[coeff_j(f) in accept]``;
    parity-of-subset: XOR of f over ``subset`` (Boolean range only).
    """

    kind: str
    point: int | None = None
    index: int | None = None
    accept: frozenset[int] = frozenset()
    subset: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown property kind {self.kind!r}")
        if self.kind == VALUE_BIT and self.point is None:
            raise ValueError("value-bit property needs a point")
        if self.kind == COEFFICIENT_BIT and (self.index is None or self.index < 1):
            raise ValueError("coefficient-bit property needs a coefficient index j >= 1")
        if self.kind in (VALUE_BIT, COEFFICIENT_BIT) and not self.accept:
            raise ValueError("acceptance subset must be nonempty")
        if self.kind == PARITY and not self.subset:
            raise ValueError("parity property needs a nonempty subset")

    @classmethod
    def value_bit(cls, z: int, accept: Iterable[int]) -> "PropertySpec":
        return cls(VALUE_BIT, point=z, accept=frozenset(accept))

    @classmethod
    def coefficient_bit(cls, j: int, accept: Iterable[int]) -> "PropertySpec":
        return cls(COEFFICIENT_BIT, index=j, accept=frozenset(accept))

    @classmethod
    def parity(cls, subset: Iterable[int]) -> "PropertySpec":
        return cls(PARITY, subset=tuple(subset))

    def check_field(self, p: int) -> None:
        if self.kind == PARITY:
            if p != 2:
                raise ValueError(f"parity property needs Boolean range, got GF({p})")
            return
        bad = [a for a in self.accept if not 0 <= a < p]
        if bad:
            raise ValueError(f"acceptance values {sorted(bad)} outside GF({p})")
        if len(self.accept) >= p:
            raise ValueError("acceptance subset must be a proper subset of the field")


def property_value(spec: PropertySpec, f: Union[FieldPoly, FunctionTable]) -> int:
    if isinstance(f, FieldPoly):
        spec.check_field(f.modulus)
        if spec.kind == VALUE_BIT:
            return int(evaluate(f, spec.point).value in spec.accept)
        if spec.kind == COEFFICIENT_BIT:
            return int(f.coefficient(spec.index) in spec.accept)
        table = {x: evaluate(f, x).value for x in spec.subset}
        return sum(table.values()) % 2

    spec.check_field(f.modulus)
    lookup = f.as_dict()
    if spec.kind == COEFFICIENT_BIT:
        raise ValueError("coefficient-bit property needs a polynomial, not a value table")
    if spec.kind == VALUE_BIT:
        if spec.point not in lookup:
            raise ValueError(f"point {spec.point} is outside the table's domain")
        return int(lookup[spec.point] in spec.accept)
    missing = [u for u in spec.subset if u not in lookup]
    if missing:
        raise ValueError(f"parity subset points {missing} outside the table's domain")
    return sum(lookup[u] for u in spec.subset) % 2


def family_labels(family: Family, spec: PropertySpec) -> tuple[int, ...]:
    """Property bit of every family member; rejects properties constant on the family."""
    if family.polys is not None:
        labels = tuple(property_value(spec, f) for f in family.polys)
    else:
        labels = tuple(property_value(spec, t) for t in family.members)
    if not labels:
        raise ValueError("family is empty")
    if all(labels) or not any(labels):
        raise TrivialPropertyError(f"property is constant ({labels[0]}) on the family")
    return labels


@dataclass(frozen=True)
class IndependenceWitness:
    z_tuple: tuple[int, ...]
    exceptional: tuple[int, ...]
    conditions: tuple[tuple, tuple]
    distributions: tuple[dict, dict]


@dataclass(frozen=True)
class IndependenceReport:
    holds: bool
    budget_checked: int
    witness: IndependenceWitness | None = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("witness must be present exactly when independence fails")


def _conditional(joint: Counter, cond_counts: Counter, c) -> dict:
    return {t: Fraction(n, cond_counts[c]) for (cc, t), n in sorted(joint.items()) if cc == c}


def _independence_witness(members, labels, s_points, t_points):
    """None if the target values are independent of (S-values, label), else the
    two conditioning events with the first differing conditional distributions."""
    joint: Counter = Counter()
    cond_counts: Counter = Counter()
    targ_counts: Counter = Counter()
    for table, bit in zip(members, labels):
        lookup = table.as_dict()
        c = (tuple(lookup[x] for x in s_points), bit)
        t = tuple(lookup[x] for x in t_points)
        joint[c, t] += 1
        cond_counts[c] += 1
        targ_counts[t] += 1
    n = len(members)
    conds = sorted(cond_counts)
    for c in conds:
        for t in targ_counts:
            if joint[c, t] * n != cond_counts[c] * targ_counts[t]:
                base = _conditional(joint, cond_counts, c)
                for other in conds:
                    dist = _conditional(joint, cond_counts, other)
                    if dist != base:
                        return (c, other), (base, dist)
    return None


def _tuples(domain: Sequence[int], d: int, distinct: bool) -> tuple[Iterator, int]:
    if distinct:
        size = min(d, len(domain))
        count = 1
        for i in range(size):
            count *= len(domain) - i
        return itertools.permutations(domain, size), count
    return itertools.product(domain, repeat=d), len(domain) ** d


def check_independence(
    family: Family,
    spec: PropertySpec,
    d: int,
    S: Iterable[int] = (),
    *,
    distinct: bool = False,
    budget: int = TUPLE_BUDGET,
) -> IndependenceReport:
    """Exhaustively test whether ``spec`` is (d, S)-independent on ``family``.

    For each z-tuple the S-entries are split off; the values of f at the rest
    must be independent of (f at the S-entries, P(f)) under uniform f.  With
    ``distinct=True`` only tuples of pairwise-distinct points are examined
    (of length min(d, |D|)).
    """
    S = tuple(dict.fromkeys(S))
    domain = family.domain
    outside = [s for s in S if s not in domain]
    if outside:
        raise ValueError(f"exception points {outside} are not in the domain")
    labels = family_labels(family, spec)
    tuples, count = _tuples(domain, d, distinct)
    if count > budget:
        raise BudgetExceededError("independence check z-tuples", count, budget)

    S_set = set(S)
    seen: dict = {}
    checked = 0
    for zs in tuples:
        checked += 1
        s_part = tuple(z for z in zs if z in S_set)
        t_part = tuple(z for z in zs if z not in S_set)
        key = (tuple(sorted(set(s_part))), tuple(sorted(set(t_part))))
        if key not in seen:
            seen[key] = _independence_witness(family.members, labels, *key)
        found = seen[key]
        if found is not None:
            conditions, dists = found
            witness = IndependenceWitness(s_part + t_part, s_part, conditions, dists)
            return IndependenceReport(False, checked, witness)
    return IndependenceReport(True, checked)


@dataclass(frozen=True, order=True)
class DeltaMonomial:
    """Product of indicators [f(x) = y], one factor per distinct x, sorted by x."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        factors = tuple(sorted(self.factors))
        xs = [x for x, _ in factors]
        if len(set(xs)) != len(xs):
            raise ValueError(f"monomial repeats an x-coordinate: {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def degree(self) -> int:
        return len(self.factors)

    def sort_key(self):
        return (self.degree, self.factors)

    def __call__(self, table: Union[FunctionTable, dict]) -> int:
        lookup = table.as_dict() if isinstance(table, FunctionTable) else table
        return int(all(lookup[x] == y for x, y in self.factors))

    def __repr__(self):
        if not self.factors:
            return "1"
        return "*".join(f"d[{x},{y}]" for x, y in self.factors)


def monomial_gap(family: Family, spec: PropertySpec, m: DeltaMonomial) -> Fraction:
    """E[m | P = 1] - E[m | P = 0] over the uniform family."""
    domain = set(family.domain)
    missing = [x for x, _ in m.factors if x not in domain]
    if missing:
        raise ValueError(f"monomial points {missing} are outside the family domain")
    labels = family_labels(family, spec)
    hits = [0, 0]
    sizes = [0, 0]
    for table, bit in zip(family.members, labels):
        sizes[bit] += 1
        hits[bit] += m(table)
    return Fraction(hits[1], sizes[1]) - Fraction(hits[0], sizes[0])


def count_monomials(domain_size: int, range_size: int, T: int) -> int:
    return sum(comb(domain_size, t) * range_size**t for t in range(min(T, domain_size) + 1))


@dataclass(frozen=True)
class GapRecord:
    max_gap: Fraction
    monomial: DeltaMonomial
    signed_gap: Fraction
    examined: int


def max_gap_up_to_degree(
    family: Family, spec: PropertySpec, T: int, *, budget: int = MONOMIAL_BUDGET
) -> GapRecord:
    """Largest |monomial_gap| over all monomials of degree <= T on the domain.

    Monomials are scanned by degree then lexicographically; the first maximiser wins.
    """
    labels = family_labels(family, spec)
    R = family.range_size
    pts = sorted(family.domain)
    total = count_monomials(len(pts), R, T)
    if total > budget:
        raise BudgetExceededError("monomials", total, budget)

    n1 = sum(labels)
    n0 = len(labels) - n1
    best = GapRecord(Fraction(0), DeltaMonomial(), Fraction(0), 0)
    examined = 0
    lookups = [t.as_dict() for t in family.members]
    for t in range(min(T, len(pts)) + 1):
        for xs in itertools.combinations(pts, t):
            counts = (Counter(), Counter())
            for lookup, bit in zip(lookups, labels):
                counts[bit][tuple(lookup[x] for x in xs)] += 1
            for ys in itertools.product(range(R), repeat=t):
                examined += 1
                gap = Fraction(counts[1][ys], n1) - Fraction(counts[0][ys], n0)
                if abs(gap) > best.max_gap:
                    best = GapRecord(abs(gap), DeltaMonomial(tuple(zip(xs, ys))), gap, 0)
    return GapRecord(best.max_gap, best.monomial, best.signed_gap, examined)

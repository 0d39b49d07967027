"""Canonical form of constraint rows."""
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from shared.schemas.constraint import ConstraintRow, ConstraintSystem, Provenance, Relation
from shared.utils.exceptions import ValidationError
from shared.utils.helpers import gcd_of, lcm_of_denominators

SparseRow = Dict[int, int]


def canonical_coefficients(
    coefficients: Mapping[int, Union[int, Fraction]], equality: bool = False
) -> SparseRow:
    """
    Integer, gcd-1 coefficients of a row.

    Inequalities keep their orientation. Equalities are signed so that the
    coefficient of the lowest coordinate is positive.
    """
    items = {k: Fraction(c) for k, c in coefficients.items() if c}
    if not items:
        raise ValidationError("Cannot canonicalize a zero row")
    scale = lcm_of_denominators(items.values())
    ints = {k: int(c * scale) for k, c in items.items()}
    g = gcd_of(ints.values())
    if equality and ints[min(ints)] < 0:
        g = -g
    return {k: ints[k] // g for k in sorted(ints)}


def canonicalize(row: ConstraintRow) -> ConstraintRow:
    """Canonical integer form of a row; provenance is kept."""
    coefficients = canonical_coefficients(row.as_dict(), row.is_equality)
    return ConstraintRow(
        coefficients=coefficients, relation=row.relation, provenance=row.provenance
    )


def row_key(coefficients: SparseRow, equality: bool) -> Tuple:
    return (equality, tuple(sorted(coefficients.items())))


def dedupe_rows(rows: Iterable[ConstraintRow]) -> List[ConstraintRow]:
    """
    Canonicalize and drop repeats, keeping the first provenance seen.

    An inequality whose equality counterpart is already present is dropped.
    Output is sorted by canonical key.
    """
    seen: Dict[Tuple, ConstraintRow] = {}
    for row in rows:
        canon = canonicalize(row)
        seen.setdefault(canon.key, canon)
    kept = []
    equalities = {r.coefficients for r in seen.values() if r.is_equality}
    for key in sorted(seen, key=_sort_key):
        row = seen[key]
        if not row.is_equality:
            negated = canonical_coefficients({k: -c for k, c in row.coefficients}, True)
            positive = canonical_coefficients(dict(row.coefficients), True)
            if tuple(negated.items()) in equalities or tuple(positive.items()) in equalities:
                continue
        kept.append(row)
    return kept


def _sort_key(key: Tuple) -> Tuple:
    relation, coefficients = key
    return (relation != Relation.EQ_ZERO.value, [(k, -c) for k, c in coefficients])


def canonical_system(system: ConstraintSystem) -> ConstraintSystem:
    return system.with_rows(dedupe_rows(system.rows))


def to_row(coefficients: SparseRow, equality: bool = False, provenance: Provenance = Provenance.PROJECTION) -> ConstraintRow:
    relation = Relation.EQ_ZERO if equality else Relation.GEQ_ZERO
    return ConstraintRow(coefficients=coefficients, relation=relation, provenance=provenance)

"""Entropic expressions, candidates and validity certificates."""
import enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from pydantic import Field, field_validator

from shared.schemas.common import BaseSchema, to_fraction
from shared.schemas.constraint import Relation
from shared.schemas.polyhedron import Ray
from shared.utils.helpers import format_rational, join_names


def _key(subset: FrozenSet[str]) -> Tuple[int, Tuple[str, ...]]:
    return (len(subset), tuple(sorted(subset)))


class LinearExpression(BaseSchema):
    """sum_S c_S H(S) over named subsets; H(empty) is zero and never stored."""

    terms: Tuple[Tuple[FrozenSet[str], Fraction], ...] = ()

    @field_validator("terms", mode="before")
    @classmethod
    def normalize_terms(cls, v):
        if isinstance(v, Mapping):
            v = v.items()
        acc: Dict[FrozenSet[str], Fraction] = {}
        for subset, coef in v:
            subset = frozenset(subset)
            if not subset:
                continue
            acc[subset] = acc.get(subset, Fraction(0)) + to_fraction(coef)
        return tuple(sorted(((s, c) for s, c in acc.items() if c != 0), key=lambda t: _key(t[0])))

    @classmethod
    def entropy(cls, subset: Iterable[str], coef=1) -> "LinearExpression":
        """coef * H(S)."""
        return cls(terms=[(frozenset(subset), coef)])

    @classmethod
    def conditional_entropy(cls, subset: Iterable[str], given: Iterable[str]) -> "LinearExpression":
        """H(S|T) = H(ST) - H(T)."""
        s, t = frozenset(subset), frozenset(given)
        return cls(terms=[(s | t, 1), (t, -1)])

    @classmethod
    def mutual_information(
        cls,
        left: Iterable[str],
        right: Iterable[str],
        given: Iterable[str] = (),
    ) -> "LinearExpression":
        """I(S:T|U) = H(SU) + H(TU) - H(STU) - H(U)."""
        s, t, u = frozenset(left), frozenset(right), frozenset(given)
        return cls(terms=[(s | u, 1), (t | u, 1), (s | t | u, -1), (u, -1)])

    @classmethod
    def triple_information(cls, a: Iterable[str], b: Iterable[str], c: Iterable[str]) -> "LinearExpression":
        """I(A:B:C) = I(A:B) - I(A:B|C)."""
        return cls.mutual_information(a, b) - cls.mutual_information(a, b, c)

    @classmethod
    def zero(cls) -> "LinearExpression":
        return cls(terms=())

    def as_dict(self) -> Dict[FrozenSet[str], Fraction]:
        return dict(self.terms)

    def variables(self) -> FrozenSet[str]:
        out = frozenset()
        for subset, _ in self.terms:
            out |= subset
        return out

    def __add__(self, other: "LinearExpression") -> "LinearExpression":
        return LinearExpression(terms=list(self.terms) + list(other.terms))

    def __sub__(self, other: "LinearExpression") -> "LinearExpression":
        return self + other.scale(-1)

    def __neg__(self) -> "LinearExpression":
        return self.scale(-1)

    def scale(self, factor) -> "LinearExpression":
        factor = to_fraction(factor)
        return LinearExpression(terms=[(s, c * factor) for s, c in self.terms])

    def rename(self, mapping: Mapping[str, str]) -> "LinearExpression":
        return LinearExpression(
            terms=[(frozenset(mapping.get(n, n) for n in s), c) for s, c in self.terms]
        )

    def to_text(self, order=None) -> str:
        """Readable `2 H(A,B) - H(A)` form."""
        if not self.terms:
            return "0"
        parts = []
        for subset, coef in self.terms:
            names = sorted(subset, key=order) if order else sorted(subset)
            mag = abs(coef)
            head = "" if mag == 1 else f"{format_rational(mag)} "
            sign = "-" if coef < 0 else "+"
            parts.append((sign, f"{head}H({join_names(names)})"))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


class Candidate(BaseSchema):
    """A candidate entropic inequality `expression >= 0` (or `= 0`)."""

    expression: LinearExpression
    relation: Relation = Relation.GEQ_ZERO
    name: Optional[str] = None
    text: Optional[str] = None

    @classmethod
    def less_equal(cls, lhs: LinearExpression, rhs: LinearExpression, **kwargs) -> "Candidate":
        """lhs <= rhs, stored as rhs - lhs >= 0."""
        return cls(expression=rhs - lhs, **kwargs)

    @property
    def is_equality(self) -> bool:
        return self.relation == Relation.EQ_ZERO

    def rename(self, mapping: Mapping[str, str]) -> "Candidate":
        return self.model_copy(update={"expression": self.expression.rename(mapping)})

    def to_text(self) -> str:
        rel = "=" if self.is_equality else ">="
        return f"{self.expression.to_text()} {rel} 0"


class Verdict(str, enum.Enum):
    """Outcome of an implication check."""
    VALID = "valid"
    NOT_IMPLIED = "not_implied"


class Certificate(BaseSchema):
    """
    Replayable evidence for a verdict.

    valid: multipliers y (aligned with the system rows; equality rows may be
    negative) with y^T M = c, plus reverse multipliers for -c when the
    candidate is an equality. not_implied: a ray h with M h >= 0 (equalities
    = 0) and c . h < 0, or c . h != 0 for an equality candidate.
    """

    verdict: Verdict
    candidate: Tuple[Fraction, ...] = Field(..., description="Candidate vector c over the index")
    equality: bool = False
    multipliers: Optional[Tuple[Fraction, ...]] = None
    reverse_multipliers: Optional[Tuple[Fraction, ...]] = None
    witness: Optional[Ray] = None

    @property
    def valid(self) -> bool:
        return self.verdict == Verdict.VALID


class ProjectionCertificate(BaseSchema):
    """
    Evidence for projection membership of a marginal point.

    member: `lift` is a full coordinate vector satisfying every row whose
    marginal part equals the point (up to positive scaling). Otherwise
    `separator` is an implied inequality over the kept coordinates that the
    point violates, with `multipliers` deriving it from the system.
    """

    member: bool
    point: Tuple[Fraction, ...]
    lift: Optional[Tuple[Fraction, ...]] = None
    separator: Optional[Tuple[Fraction, ...]] = None
    multipliers: Optional[Tuple[Fraction, ...]] = None

"""Finite distribution, box and entropy vector schemas."""
import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import Field, field_validator, model_validator

from shared.schemas.common import BaseSchema, to_fraction
from shared.schemas.constraint import SubsetIndex
from shared.utils.exceptions import NotFoundError

Outcome = Tuple[int, ...]


class JointDistribution(BaseSchema):
    """
    Exact finite distribution over named variables.

    Only the support is stored: `probabilities` maps an outcome tuple (in the
    order of `variables`) to its positive probability.
    """

    variables: Tuple[Tuple[str, int], ...]
    probabilities: Dict[Outcome, Fraction]

    @field_validator("variables")
    @classmethod
    def check_variables(cls, v):
        names = [name for name, _ in v]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for name, card in v:
            if card < 1:
                raise ValueError(f"variable {name} needs cardinality >= 1")
        return v

    @field_validator("probabilities", mode="before")
    @classmethod
    def coerce_probabilities(cls, v):
        out = {}
        for outcome, p in dict(v).items():
            p = to_fraction(p)
            if p < 0:
                raise ValueError(f"negative probability at {outcome}")
            if p:
                out[tuple(int(x) for x in outcome)] = p
        return out

    @model_validator(mode="after")
    def check_table(self):
        cards = self.cardinalities()
        for outcome in self.probabilities:
            if len(outcome) != len(cards) or any(
                not 0 <= x < c for x, c in zip(outcome, cards)
            ):
                raise ValueError(f"outcome {outcome} outside the variable ranges")
        if sum(self.probabilities.values(), Fraction(0)) != 1:
            raise ValueError("probabilities must sum to exactly 1")
        return self

    @classmethod
    def from_table(
        cls, variables: Sequence[Tuple[str, int]], table: Sequence
    ) -> "JointDistribution":
        """Build from a flat row-major table (last variable fastest)."""
        variables = tuple((str(n), int(c)) for n, c in variables)
        outcomes = list(itertools.product(*(range(c) for _, c in variables)))
        if len(table) != len(outcomes):
            raise ValueError(
                f"table has {len(table)} entries, expected {len(outcomes)}"
            )
        return cls(variables=variables, probabilities=dict(zip(outcomes, table)))

    @classmethod
    def uniform_on(
        cls, variables: Sequence[Tuple[str, int]], support: Iterable[Outcome]
    ) -> "JointDistribution":
        support = list(support)
        weight = Fraction(1, len(support))
        return cls(variables=tuple(variables), probabilities={s: weight for s in support})

    def names(self) -> List[str]:
        return [name for name, _ in self.variables]

    def cardinalities(self) -> List[int]:
        return [card for _, card in self.variables]

    def positions(self, names: Iterable[str]) -> List[int]:
        lookup = {name: k for k, (name, _) in enumerate(self.variables)}
        out = []
        for name in names:
            if name not in lookup:
                raise NotFoundError("Variable", name)
            out.append(lookup[name])
        return out

    def marginal(self, names: Iterable[str]) -> Dict[Outcome, Fraction]:
        """Exact marginal table over `names` (support only)."""
        positions = self.positions(names)
        out: Dict[Outcome, Fraction] = {}
        for outcome, p in self.probabilities.items():
            key = tuple(outcome[k] for k in positions)
            out[key] = out.get(key, Fraction(0)) + p
        return out

    def marginal_distribution(self, names: Sequence[str]) -> "JointDistribution":
        cards = dict(self.variables)
        return JointDistribution(
            variables=tuple((n, cards[n]) for n in names),
            probabilities=self.marginal(names),
        )

    def dense(self) -> List[Fraction]:
        """Flat row-major table including zeros."""
        return [
            self.probabilities.get(o, Fraction(0))
            for o in itertools.product(*(range(c) for c in self.cardinalities()))
        ]


def _box_position(a: int, b: int, x: int, y: int) -> int:
    return ((x * 2 + y) * 2 + a) * 2 + b


class Box(BaseSchema):
    """Bipartite binary box p(a,b|x,y), normalized and nonsignalling."""

    entries: Tuple[Fraction, ...] = Field(..., min_length=16, max_length=16)

    @field_validator("entries", mode="before")
    @classmethod
    def coerce_entries(cls, v):
        return tuple(to_fraction(p) for p in v)

    @model_validator(mode="after")
    def check_box(self):
        if any(p < 0 for p in self.entries):
            raise ValueError("box entries must be nonnegative")
        for x, y in itertools.product((0, 1), repeat=2):
            total = sum(self.p(a, b, x, y) for a in (0, 1) for b in (0, 1))
            if total != 1:
                raise ValueError(f"box not normalized for x={x}, y={y}")
        for x, a in itertools.product((0, 1), repeat=2):
            if self.alice_marginal(a, x, 0) != self.alice_marginal(a, x, 1):
                raise ValueError("box signals from Bob to Alice")
        for y, b in itertools.product((0, 1), repeat=2):
            if self.bob_marginal(b, 0, y) != self.bob_marginal(b, 1, y):
                raise ValueError("box signals from Alice to Bob")
        return self

    @classmethod
    def from_function(cls, fn) -> "Box":
        """Build from a callable fn(a, b, x, y) -> rational."""
        entries = [Fraction(0)] * 16
        for a, b, x, y in itertools.product((0, 1), repeat=4):
            entries[_box_position(a, b, x, y)] = to_fraction(fn(a, b, x, y))
        return cls(entries=tuple(entries))

    def p(self, a: int, b: int, x: int, y: int) -> Fraction:
        return self.entries[_box_position(a, b, x, y)]

    def alice_marginal(self, a: int, x: int, y: int) -> Fraction:
        return self.p(a, 0, x, y) + self.p(a, 1, x, y)

    def bob_marginal(self, b: int, x: int, y: int) -> Fraction:
        return self.p(0, b, x, y) + self.p(1, b, x, y)

    def mix(self, other: "Box", weight) -> "Box":
        """(1 - weight) * self + weight * other."""
        w = to_fraction(weight)
        return Box(entries=tuple((1 - w) * p + w * q for p, q in zip(self.entries, other.entries)))


class EntropyVector(BaseSchema):
    """Entropies in bits over a SubsetIndex."""

    index: SubsetIndex
    values: Tuple[float, ...]

    @model_validator(mode="after")
    def check_length(self):
        if len(self.values) != len(self.index):
            raise ValueError("entropy vector length does not match index")
        return self

    def value(self, names: Iterable[str]) -> float:
        mask = self.index.mask_of(names)
        if mask == 0:
            return 0.0
        return self.values[self.index.position(mask)]

    def as_dict(self) -> Dict[Tuple[str, ...], float]:
        return {
            self.index.names_of(m): v for m, v in zip(self.index.masks, self.values)
        }


class ScanRow(BaseSchema):
    """One grid point of a boundary scan; gamma_star None means no violation."""

    epsilon: Fraction
    gamma_star: Optional[Fraction] = None


class ScanResult(BaseSchema):
    """Boundary scan of one inequality over the box section."""

    candidate: str
    protocol: str = "van-dam"
    step: Fraction
    resolution: float
    rows: Tuple[ScanRow, ...] = ()

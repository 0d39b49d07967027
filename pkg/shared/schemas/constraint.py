"""Entropy coordinates and linear constraint schemas."""
import enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pydantic import Field, PrivateAttr, field_validator, model_validator

from shared.schemas.common import BaseSchema, to_fraction
from shared.utils.exceptions import CoordinateError, NotFoundError
from shared.utils.helpers import join_names


class SubsetIndex(BaseSchema):
    """
    Dense index of entropy coordinates.

    Each coordinate is a nonempty subset of `names`, stored as a bit mask in
    which the first name is the highest bit. Masks are kept in increasing
    order, so for names (A, B, C) the coordinates read
    H(C), H(B), H(B,C), H(A), H(A,C), H(A,B), H(A,B,C).
    """

    names: Tuple[str, ...]
    masks: Tuple[int, ...]

    _position: Dict[int, int] = PrivateAttr(default_factory=dict)
    _bit: Dict[str, int] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def check_masks(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate names in index")
        full = (1 << len(self.names)) - 1
        if list(self.masks) != sorted(set(self.masks)):
            raise ValueError("masks must be strictly increasing")
        for m in self.masks:
            if m <= 0 or m & ~full:
                raise ValueError(f"invalid subset mask {m}")
        return self

    def model_post_init(self, __context) -> None:
        n = len(self.names)
        self._bit = {name: 1 << (n - 1 - k) for k, name in enumerate(self.names)}
        self._position = {m: i for i, m in enumerate(self.masks)}

    @classmethod
    def from_masks(cls, names: Iterable[str], masks: Iterable[int]) -> "SubsetIndex":
        return cls(names=tuple(names), masks=tuple(sorted(set(masks))))

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, mask: int) -> bool:
        return mask in self._position

    def bit(self, name: str) -> int:
        """Bit of a single system name."""
        try:
            return self._bit[name]
        except KeyError:
            raise NotFoundError("Variable", name)

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= self.bit(name)
        return mask

    def names_of(self, mask: int) -> Tuple[str, ...]:
        """Names of a mask in index order."""
        return tuple(name for name in self.names if self._bit[name] & mask)

    def position(self, mask: int) -> int:
        """Dense position of a coordinate mask."""
        try:
            return self._position[mask]
        except KeyError:
            subset = self.names_of(mask)
            raise CoordinateError(
                f"No coordinate for subset {{{join_names(subset)}}} (non-coexisting)",
                subset=subset,
            )

    def position_of(self, names: Iterable[str]) -> int:
        return self.position(self.mask_of(names))

    def subset(self, position: int) -> FrozenSet[str]:
        return frozenset(self.names_of(self.masks[position]))

    def label(self, position: int) -> str:
        """`H(A,B)` style label of a coordinate."""
        return f"H({join_names(self.names_of(self.masks[position]))})"

    def restrict(self, positions: Iterable[int]) -> "SubsetIndex":
        """Index over a subset of the coordinates (same name order)."""
        return SubsetIndex.from_masks(self.names, (self.masks[p] for p in positions))


class Relation(str, enum.Enum):
    """Row relation against zero."""
    GEQ_ZERO = "geq_zero"
    EQ_ZERO = "eq_zero"


class Provenance(str, enum.Enum):
    """Where a row came from."""
    SUBMODULARITY = "submodularity"
    MONOTONICITY = "monotonicity"
    WEAK_MONOTONICITY = "weak_monotonicity"
    CONDITIONAL_INDEPENDENCE = "conditional_independence"
    DATA_PROCESSING = "data_processing"
    USER = "user"
    PROJECTION = "projection"
    FACET = "facet"


class ConstraintRow(BaseSchema):
    """A homogeneous linear constraint sum_i c_i h_i (>= | =) 0."""

    coefficients: Tuple[Tuple[int, Fraction], ...]
    relation: Relation = Relation.GEQ_ZERO
    provenance: Provenance = Provenance.USER

    @field_validator("coefficients", mode="before")
    @classmethod
    def coerce_coefficients(cls, v):
        if isinstance(v, dict):
            v = v.items()
        items = [(int(k), to_fraction(c)) for k, c in v]
        items = [(k, c) for k, c in sorted(items) if c != 0]
        if len({k for k, _ in items}) != len(items):
            raise ValueError("duplicate coordinate in row")
        if not items:
            raise ValueError("row has no nonzero coefficient")
        return tuple(items)

    @classmethod
    def from_dict(
        cls,
        coefficients: Dict[int, Fraction],
        relation: Relation = Relation.GEQ_ZERO,
        provenance: Provenance = Provenance.USER,
    ) -> "ConstraintRow":
        return cls(coefficients=coefficients, relation=relation, provenance=provenance)

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.coefficients)

    @property
    def is_equality(self) -> bool:
        return self.relation == Relation.EQ_ZERO

    @property
    def key(self) -> Tuple:
        """Identity of the row, ignoring provenance."""
        return (Relation(self.relation).value, self.coefficients)

    def dense(self, dimension: int) -> List[Fraction]:
        out = [Fraction(0)] * dimension
        for k, c in self.coefficients:
            out[k] = c
        return out


class ConstraintSystem(BaseSchema):
    """Rows over one SubsetIndex: the matrix M of M h >= 0 (plus equalities)."""

    index: SubsetIndex
    rows: Tuple[ConstraintRow, ...] = ()

    @model_validator(mode="after")
    def check_references(self):
        dimension = len(self.index)
        for row in self.rows:
            for k, _ in row.coefficients:
                if not 0 <= k < dimension:
                    raise ValueError(f"row references coordinate {k} outside index of size {dimension}")
        return self

    @property
    def dimension(self) -> int:
        return len(self.index)

    def inequalities(self) -> List[ConstraintRow]:
        return [r for r in self.rows if not r.is_equality]

    def equalities(self) -> List[ConstraintRow]:
        return [r for r in self.rows if r.is_equality]

    def with_rows(self, rows: Iterable[ConstraintRow]) -> "ConstraintSystem":
        return ConstraintSystem(index=self.index, rows=tuple(rows))

    def by_provenance(self, provenance: Provenance) -> List[ConstraintRow]:
        value = Provenance(provenance).value
        return [r for r in self.rows if Provenance(r.provenance).value == value]


class MarginalConeReport(BaseSchema):
    """Result of the three-step marginal pipeline."""

    system: ConstraintSystem
    trivial: Tuple[ConstraintRow, ...] = ()
    nontrivial: Tuple[ConstraintRow, ...] = ()
    eliminated: int = Field(0, description="Number of coordinates eliminated")
    notes: Optional[str] = None

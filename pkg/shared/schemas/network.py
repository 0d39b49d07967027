"""Classical network descriptions for G(n, m) structures."""
import itertools
from fractions import Fraction
from typing import Dict, List, Tuple

from pydantic import Field, field_validator, model_validator

from shared.schemas.common import BaseSchema, to_fraction


class SourceSpec(BaseSchema):
    """An independent classical source feeding a set of observable nodes."""

    name: str
    children: Tuple[int, ...] = Field(..., min_length=1)
    probabilities: Tuple[Fraction, ...] = Field(..., min_length=1)

    @field_validator("probabilities", mode="before")
    @classmethod
    def coerce_probabilities(cls, v):
        return tuple(to_fraction(p) for p in v)

    @model_validator(mode="after")
    def check_source(self):
        if any(p < 0 for p in self.probabilities):
            raise ValueError(f"source {self.name} has a negative probability")
        if sum(self.probabilities, Fraction(0)) != 1:
            raise ValueError(f"source {self.name} is not normalized")
        if len(set(self.children)) != len(self.children):
            raise ValueError(f"source {self.name} lists a child twice")
        return self

    @property
    def cardinality(self) -> int:
        return len(self.probabilities)


class ResponseSpec(BaseSchema):
    """
    Stochastic response of node V_i to its incident sources.

    `table` has one output distribution per joint source value, enumerated
    row-major over `sources` (last source fastest).
    """

    node: int = Field(..., ge=1)
    sources: Tuple[str, ...]
    cardinality: int = Field(..., ge=1)
    table: Tuple[Tuple[Fraction, ...], ...]

    @field_validator("table", mode="before")
    @classmethod
    def coerce_table(cls, v):
        return tuple(tuple(to_fraction(p) for p in row) for row in v)

    @model_validator(mode="after")
    def check_rows(self):
        for row in self.table:
            if len(row) != self.cardinality:
                raise ValueError(f"response of V{self.node} has a row of wrong length")
            if any(p < 0 for p in row) or sum(row, Fraction(0)) != 1:
                raise ValueError(f"response of V{self.node} has a non-stochastic row")
        return self


class NetworkSpec(BaseSchema):
    """Sources, node responses and the (n, m) shape they realize."""

    n: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    sources: Tuple[SourceSpec, ...]
    responses: Tuple[ResponseSpec, ...]

    @model_validator(mode="after")
    def check_wiring(self):
        by_name = {s.name: s for s in self.sources}
        if len(by_name) != len(self.sources):
            raise ValueError("duplicate source names")
        nodes = sorted(r.node for r in self.responses)
        if nodes != list(range(1, self.n + 1)):
            raise ValueError("need exactly one response per node 1..n")
        for response in self.responses:
            incident = [s.name for s in self.sources if response.node in s.children]
            if sorted(response.sources) != sorted(incident):
                raise ValueError(f"V{response.node} must list exactly its incident sources")
            expected = 1
            for name in response.sources:
                expected *= by_name[name].cardinality
            if len(response.table) != expected:
                raise ValueError(
                    f"response of V{response.node} needs {expected} rows, got {len(response.table)}"
                )
        return self

    def node_names(self) -> List[str]:
        return [f"V{i}" for i in range(1, self.n + 1)]

    def response(self, node: int) -> ResponseSpec:
        for r in self.responses:
            if r.node == node:
                return r
        raise KeyError(node)

    def source(self, name: str) -> SourceSpec:
        for s in self.sources:
            if s.name == name:
                return s
        raise KeyError(name)

    def row_lookup(self, node: int) -> Dict[Tuple[int, ...], Tuple[Fraction, ...]]:
        """Map joint incident-source values to the node's output distribution."""
        response = self.response(node)
        ranges = [range(self.source(name).cardinality) for name in response.sources]
        return dict(zip(itertools.product(*ranges), response.table))

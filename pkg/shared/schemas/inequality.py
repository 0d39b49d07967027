"""Named inequality schemas."""
import enum
from typing import Optional, Tuple

from shared.schemas.certificate import Candidate
from shared.schemas.common import BaseSchema
from shared.schemas.constraint import MarginalConeReport


class InequalityId(str, enum.Enum):
    """Families of built-in inequalities."""
    IC_ORIGINAL = "IC_original"
    IC_SAFI = "IC_safi"
    IC_TIGHT = "IC_tight"
    IC_TIGHT_N = "IC_tight_n"
    IC_DENSE_N = "IC_dense_n"
    MONOGAMY = "monogamy"
    NETWORK_BOUND = "network_bound"
    TRIANGLE_1 = "triangle_1"
    TRIANGLE_2 = "triangle_2"
    TRIANGLE_3 = "triangle_3"


class NamedInequality(BaseSchema):
    """A built-in inequality together with the scenario it is stated in."""

    id: InequalityId
    params: Tuple[int, ...] = ()
    scenario: str
    candidate: Candidate

    @property
    def name(self) -> str:
        value = InequalityId(self.id).value
        if not self.params:
            return value
        return f"{value}({','.join(str(p) for p in self.params)})"


class OrbitReport(BaseSchema):
    """Counts of the causal rows of a marginal cone, raw and per symmetry orbit."""

    scenario: str
    raw_count: int
    orbit_count: int
    expected_count: Optional[int] = None
    named_present: Tuple[str, ...] = ()
    cone: MarginalConeReport

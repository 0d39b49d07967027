"""Three-step marginal pipeline: constraints, elimination, classification."""
from typing import List, Optional

from shared.schemas.constraint import ConstraintRow, ConstraintSystem, MarginalConeReport, SubsetIndex
from shared.schemas.structure import CausalStructure, MarginalScenario, SystemKind
from shared.utils.logger import get_logger
from services.cone.services.cone_service import ConeService, elemental_rows
from services.model.services.structure_service import StructureService
from services.polyhedron.services.canonical_service import dedupe_rows
from services.polyhedron.services.fm_service import FourierMotzkin, fm_eliminate
from services.verify.services.verify_service import VerifyService

logger = get_logger(__name__)


def marginal_shannon(structure: CausalStructure, index: SubsetIndex, scenario: MarginalScenario) -> ConstraintSystem:
    """Elemental rows of the marginal scenario on its own contexts."""
    masks = sorted({index.mask_of(c) for c in scenario.contexts}, reverse=True)
    maximal = [m for m in masks if not any(m != o and m & ~o == 0 for o in masks)]

    def is_quantum(bit: int) -> bool:
        return structure.is_quantum(index.names_of(bit)[0])

    return ConstraintSystem(index=index, rows=tuple(dedupe_rows(elemental_rows(index, maximal, is_quantum))))


class PipelineService:
    """Service for the marginal entropy cone of a causal structure."""

    def __init__(
        self,
        structure: CausalStructure,
        scenario: Optional[MarginalScenario] = None,
        include_data_processing: Optional[bool] = None,
        engine: Optional[FourierMotzkin] = None,
    ):
        if scenario is not None:
            structure = structure.model_copy(update={"marginal_scenario": scenario})
        StructureService(structure).require_valid()
        self.structure = structure
        self.scenario = structure.marginal_scenario
        if include_data_processing is None:
            include_data_processing = any(
                SystemKind(s.kind) == SystemKind.QUANTUM for s in structure.systems
            )
        self.include_data_processing = include_data_processing
        self.engine = engine

    def full_system(self) -> ConstraintSystem:
        """Step 1: every constraint over the (merged) coordinate lattice."""
        merged = StructureService(self.structure).merge_classical_preparations()
        return ConeService(merged).assemble(include_data_processing=self.include_data_processing)

    def run(self) -> MarginalConeReport:
        system = self.full_system()
        full = system.index
        marginal = StructureService(self.structure).marginal_index(self.scenario)

        keep = sorted(full.position_of(marginal.names_of(m)) for m in marginal.masks)
        drop = [k for k in range(len(full)) if k not in set(keep)]
        logger.info(
            "Projecting onto marginal scenario",
            coordinates=len(full),
            keep=len(keep),
            drop=len(drop),
            rows=len(system.rows),
        )

        # Step 2: eliminate every coordinate outside the marginal scenario.
        projected = fm_eliminate(system, drop, self.engine)
        rows: List[ConstraintRow] = []
        for row in projected.rows:
            coefficients = {
                marginal.position_of(projected.index.names_of(projected.index.masks[k])): c
                for k, c in row.coefficients
            }
            rows.append(row.model_copy(update={"coefficients": tuple(sorted(coefficients.items()))}))
        result = ConstraintSystem(index=marginal, rows=tuple(dedupe_rows(rows)))

        # Step 3: rows implied by the marginal Shannon cone are trivial.
        shannon = VerifyService(marginal_shannon(self.structure, marginal, self.scenario))
        trivial, nontrivial = [], []
        for row in result.rows:
            certificate = shannon.is_valid_vector(row.dense(result.dimension), row.is_equality)
            (trivial if certificate.valid else nontrivial).append(row)
        logger.info(
            "Marginal cone computed",
            rows=len(result.rows),
            trivial=len(trivial),
            nontrivial=len(nontrivial),
        )
        return MarginalConeReport(
            system=result,
            trivial=tuple(trivial),
            nontrivial=tuple(nontrivial),
            eliminated=len(drop),
        )


def marginal_cone(
    structure: CausalStructure,
    scenario: Optional[MarginalScenario] = None,
    include_data_processing: Optional[bool] = None,
) -> MarginalConeReport:
    return PipelineService(structure, scenario, include_data_processing).run()

"""Entropic constraint generation for causal structures."""
import itertools
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from shared.schemas.constraint import (
    ConstraintRow,
    ConstraintSystem,
    Provenance,
    Relation,
    SubsetIndex,
)
from shared.schemas.structure import CausalStructure
from shared.utils.exceptions import CoordinateError
from shared.utils.helpers import iter_submasks, mask_bits
from shared.utils.logger import get_logger
from services.model.services.structure_service import StructureService
from services.polyhedron.services.canonical_service import dedupe_rows

logger = get_logger(__name__)

MaskTerms = Dict[int, int]


def _mutual_information(a: int, b: int, c: int = 0) -> MaskTerms:
    """I(a:b|c) over masks."""
    terms: MaskTerms = {}
    for mask, coef in ((a | c, 1), (b | c, 1), (a | b | c, -1), (c, -1)):
        if mask:
            terms[mask] = terms.get(mask, 0) + coef
    return terms


def _combine(*parts: Tuple[int, MaskTerms]) -> MaskTerms:
    out: MaskTerms = {}
    for factor, terms in parts:
        for mask, coef in terms.items():
            out[mask] = out.get(mask, 0) + factor * coef
    return {m: c for m, c in out.items() if c}


def elemental_rows(
    index: SubsetIndex,
    maximal_masks: Iterable[int],
    is_quantum: Callable[[int], bool],
) -> List[ConstraintRow]:
    """
    Elemental rows of every maximal mask over `index`.

    `is_quantum` receives a single-bit mask.
    """

    def row(terms: MaskTerms, provenance: Provenance) -> ConstraintRow:
        coefficients = {index.position(m): c for m, c in terms.items() if c}
        return ConstraintRow(coefficients=coefficients, relation=Relation.GEQ_ZERO, provenance=provenance)

    rows: List[ConstraintRow] = []
    for full in maximal_masks:
        bits = mask_bits(full)
        for i, j in itertools.combinations(bits, 2):
            for k in iter_submasks(full & ~(i | j)):
                rows.append(row(_mutual_information(i, j, k), Provenance.SUBMODULARITY))
        for bit in bits:
            rest = full & ~bit
            if not is_quantum(bit):
                terms = {full: 1}
                if rest:
                    terms[rest] = -1
                rows.append(row(terms, Provenance.MONOTONICITY))
                continue
            for w in iter_submasks(rest):
                w_prime = rest & ~w
                if w > w_prime:
                    continue
                terms = _combine(
                    (1, {bit | w: 1}), (1, {bit | w_prime: 1}),
                    (-1, {w: 1} if w else {}), (-1, {w_prime: 1} if w_prime else {}),
                )
                if terms:
                    rows.append(row(terms, Provenance.WEAK_MONOTONICITY))
    return rows


class ConeService:
    """Service for building the constraint system of a causal structure."""

    def __init__(self, structure: CausalStructure):
        self.structure = structure
        self.model = StructureService(structure)

    @cached_property
    def index(self) -> SubsetIndex:
        return self.model.subset_coordinates()

    @cached_property
    def maximal_masks(self) -> List[int]:
        return [self.model.mask_of(members) for members in self.model.coexisting_sets]

    def _coexists(self, mask: int) -> bool:
        return any(mask & ~t == 0 for t in self.maximal_masks)

    def _row(self, terms: MaskTerms, relation: Relation, provenance: Provenance) -> ConstraintRow:
        coefficients = {self.index.position(m): c for m, c in terms.items() if c}
        return ConstraintRow(coefficients=coefficients, relation=relation, provenance=provenance)

    def _system(self, rows: Iterable[ConstraintRow]) -> ConstraintSystem:
        return ConstraintSystem(index=self.index, rows=tuple(dedupe_rows(rows)))

    def _is_quantum(self, bit: int) -> bool:
        name = self.index.names_of(bit)[0]
        return self.structure.is_quantum(name)

    def _descendant_mask(self, mask: int) -> int:
        out = 0
        for name in self.index.names_of(mask):
            out |= self.model.mask_of(self.model.descendants(name))
        return out

    # ------------------------------------------------------------------
    # Elemental inequalities
    # ------------------------------------------------------------------

    def elemental_inequalities(self) -> ConstraintSystem:
        """
        Submodularity for all pairs, monotonicity for classical systems and
        weak monotonicity for quantum systems, per maximal coexisting set.
        """
        system = self._system(elemental_rows(self.index, self.maximal_masks, self._is_quantum))
        logger.debug("Elemental inequalities", rows=len(system.rows), coordinates=len(self.index))
        return system

    # ------------------------------------------------------------------
    # Conditional independencies
    # ------------------------------------------------------------------

    def _independence(self, a: int, b: int, c: int = 0) -> Optional[ConstraintRow]:
        if not a or not b or not self._coexists(a | b | c):
            return None
        terms = {m: v for m, v in _mutual_information(a, b, c).items() if v}
        if not terms:
            return None
        return self._row(terms, Relation.EQ_ZERO, Provenance.CONDITIONAL_INDEPENDENCE)

    def conditional_independencies(self) -> ConstraintSystem:
        """
        Local Markov statements and preparation independence, restricted to
        statements whose support coexists.
        """
        all_mask = (1 << len(self.index.names)) - 1
        rows: List[Optional[ConstraintRow]] = []

        prep_masks = [self.model.mask_of(p.systems) for p in self.structure.preparations]
        for prep in prep_masks:
            rest = all_mask & ~(prep | self._descendant_mask(prep))
            rows.append(self._independence(prep, rest))
        acc = 0
        for prep in prep_masks:
            if acc:
                rows.append(self._independence(acc, prep))
            acc |= prep

        for op in self.structure.operations:
            outputs = self.model.mask_of(op.outputs)
            parents = self.model.mask_of(op.inputs)
            rest = all_mask & ~(outputs | parents | self._descendant_mask(outputs))
            rows.append(self._independence(outputs, rest, parents))

        system = self._system(r for r in rows if r is not None)
        logger.debug("Conditional independencies", rows=len(system.rows))
        return system

    # ------------------------------------------------------------------
    # Data processing
    # ------------------------------------------------------------------

    def data_processing_inequalities(self) -> ConstraintSystem:
        """I(W : O Z) <= I(W : P Z) for every operation P -> O."""
        rows: List[ConstraintRow] = []
        for op in self.structure.operations:
            outputs = self.model.mask_of(op.outputs)
            parents = self.model.mask_of(op.inputs)
            downstream = self._descendant_mask(outputs)
            for full in self.maximal_masks:
                if outputs & ~full:
                    continue
                rest = full & ~outputs
                if not self._coexists(rest | parents):
                    continue
                free = rest & ~downstream
                for w in iter_submasks(free):
                    if not w:
                        continue
                    for z in iter_submasks(free & ~w):
                        terms = _combine(
                            (1, _mutual_information(w, parents | z)),
                            (-1, _mutual_information(w, outputs | z)),
                        )
                        if terms:
                            rows.append(self._row(terms, Relation.GEQ_ZERO, Provenance.DATA_PROCESSING))
        system = self._system(rows)
        logger.debug("Data processing inequalities", rows=len(system.rows))
        return system

    # ------------------------------------------------------------------
    # Assembly
    # ------------------------------------------------------------------

    def assemble(
        self,
        extra: Sequence[ConstraintRow] = (),
        include_data_processing: bool = True,
    ) -> ConstraintSystem:
        """Elemental, CI, DP and user rows over the full coordinate index."""
        dimension = len(self.index)
        for row in extra:
            for k, _ in row.coefficients:
                if not 0 <= k < dimension:
                    raise CoordinateError(f"Row references coordinate {k} outside index of size {dimension}")
        rows = list(self.elemental_inequalities().rows)
        rows += self.conditional_independencies().rows
        if include_data_processing:
            rows += self.data_processing_inequalities().rows
        rows += list(extra)
        system = self._system(rows)
        logger.info(
            "Assembled constraint system",
            coordinates=dimension,
            rows=len(system.rows),
            equalities=len(system.equalities()),
        )
        return system


def elemental_inequalities(structure: CausalStructure) -> ConstraintSystem:
    return ConeService(structure).elemental_inequalities()


def conditional_independencies(structure: CausalStructure) -> ConstraintSystem:
    return ConeService(structure).conditional_independencies()


def data_processing_inequalities(structure: CausalStructure) -> ConstraintSystem:
    return ConeService(structure).data_processing_inequalities()


def assemble(
    structure: CausalStructure,
    extra: Sequence[ConstraintRow] = (),
    include_data_processing: bool = True,
) -> ConstraintSystem:
    return ConeService(structure).assemble(extra, include_data_processing)

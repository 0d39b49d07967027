"""Validity of entropic inequalities with replayable certificates."""
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Union

from shared.schemas.certificate import Candidate, Certificate, ProjectionCertificate, Verdict
from shared.schemas.constraint import ConstraintRow, ConstraintSystem, SubsetIndex
from shared.schemas.polyhedron import Ray
from shared.utils.exceptions import DimensionMismatchError
from shared.utils.helpers import primitive_vector
from shared.utils.logger import get_logger
from services.verify.services.simplex_service import FarkasSolver

logger = get_logger(__name__)

Vector = Sequence[Fraction]


def expand(candidate: Candidate, index: SubsetIndex) -> List[Fraction]:
    """
    Dense coordinate vector of a candidate's expression.

    Raises NotFoundError for unknown names and CoordinateError for subsets
    without a coordinate.
    """
    vector = [Fraction(0)] * len(index)
    for subset, coef in candidate.expression.terms:
        vector[index.position(index.mask_of(subset))] += coef
    return vector


def _dot(row: ConstraintRow, vector: Vector) -> Fraction:
    return sum((c * vector[k] for k, c in row.coefficients), Fraction(0))


class VerifyService:
    """Service for LP questions against one constraint system."""

    def __init__(self, system: ConstraintSystem, solver: Optional[FarkasSolver] = None):
        self.system = system
        self.solver = solver or FarkasSolver()

    @cached_property
    def _columns(self) -> List[Dict[int, Fraction]]:
        return [row.as_dict() for row in self.system.rows]

    @cached_property
    def _free(self) -> List[bool]:
        return [row.is_equality for row in self.system.rows]

    def _check_dimension(self, vector: Vector) -> None:
        if len(vector) != self.system.dimension:
            raise DimensionMismatchError(self.system.dimension, len(vector))

    def implied(self, vector: Vector):
        """Raw Farkas answer for `vector . h >= 0`."""
        self._check_dimension(vector)
        return self.solver.solve(self._columns, vector, self._free)

    def is_valid_vector(self, vector: Vector, equality: bool = False) -> Certificate:
        """Certificate for `c . h >= 0` (both orientations if `equality`)."""
        vector = tuple(Fraction(v) for v in vector)
        forward = self.implied(vector)
        backward = None
        if forward.feasible and equality:
            backward = self.implied(tuple(-v for v in vector))
        for answer in (forward, backward):
            if answer is not None and not answer.feasible:
                return Certificate(
                    verdict=Verdict.NOT_IMPLIED,
                    candidate=vector,
                    equality=equality,
                    witness=Ray(coordinates=primitive_vector(answer.ray)),
                )
        return Certificate(
            verdict=Verdict.VALID,
            candidate=vector,
            equality=equality,
            multipliers=tuple(forward.multipliers),
            reverse_multipliers=tuple(backward.multipliers) if backward else None,
        )

    def is_valid(self, candidate: Candidate) -> Certificate:
        vector = expand(candidate, self.system.index)
        certificate = self.is_valid_vector(vector, candidate.is_equality)
        logger.info(
            "Candidate checked",
            candidate=candidate.name or candidate.to_text(),
            verdict=Verdict(certificate.verdict).value,
            rows=len(self.system.rows),
        )
        return certificate

    def replay(self, certificate: Certificate) -> bool:
        """Re-check a certificate with exact arithmetic only."""
        c = [Fraction(v) for v in certificate.candidate]
        if len(c) != self.system.dimension:
            return False
        if certificate.valid:
            if certificate.multipliers is None or not self._combines_to(certificate.multipliers, c):
                return False
            if certificate.equality:
                return certificate.reverse_multipliers is not None and self._combines_to(
                    certificate.reverse_multipliers, [-v for v in c]
                )
            return True
        if certificate.witness is None:
            return False
        h = [Fraction(x) for x in certificate.witness.coordinates]
        if len(h) != self.system.dimension:
            return False
        for row in self.system.rows:
            value = _dot(row, h)
            if value < 0 or (row.is_equality and value != 0):
                return False
        value = sum((ci * hi for ci, hi in zip(c, h)), Fraction(0))
        return value != 0 if certificate.equality else value < 0

    def _combines_to(self, multipliers: Sequence[Fraction], target: Vector) -> bool:
        if len(multipliers) != len(self.system.rows):
            return False
        total = [Fraction(0)] * self.system.dimension
        for y, row in zip(multipliers, self.system.rows):
            if y < 0 and not row.is_equality:
                return False
            if y:
                for k, coef in row.coefficients:
                    total[k] += y * coef
        return total == list(target)

    def in_projection(self, keep: Sequence[int], point: Vector) -> ProjectionCertificate:
        """
        Decide whether `point` (over the coordinates `keep`) lies in the
        projection of the system's cone.
        """
        keep = list(keep)
        point = [Fraction(p) for p in point]
        if len(point) != len(keep):
            raise DimensionMismatchError(len(keep), len(point))
        kept = set(keep)
        hidden = [k for k in range(self.system.dimension) if k not in kept]
        hidden_pos = {k: i for i, k in enumerate(hidden)}
        keep_pos = {k: i for i, k in enumerate(keep)}
        last = len(hidden)

        columns = []
        for row in self.system.rows:
            col: Dict[int, Fraction] = {}
            value = Fraction(0)
            for k, coef in row.coefficients:
                if k in hidden_pos:
                    col[hidden_pos[k]] = coef
                else:
                    value += coef * point[keep_pos[k]]
            if value:
                col[last] = value
            columns.append(col)
        target = [Fraction(0)] * last + [Fraction(-1)]
        result = self.solver.solve(columns, target, self._free)

        if result.feasible:
            separator = [Fraction(0)] * len(keep)
            for y, row in zip(result.multipliers, self.system.rows):
                if y:
                    for k, coef in row.coefficients:
                        if k in keep_pos:
                            separator[keep_pos[k]] += y * coef
            return ProjectionCertificate(
                member=False,
                point=tuple(point),
                separator=tuple(Fraction(v) for v in primitive_vector(separator)),
                multipliers=tuple(result.multipliers),
            )

        t = result.ray[last]
        lift = [Fraction(0)] * self.system.dimension
        for k, i in hidden_pos.items():
            lift[k] = result.ray[i] / t
        for k, i in keep_pos.items():
            lift[k] = point[i]
        return ProjectionCertificate(member=True, point=tuple(point), lift=tuple(lift))

    def implies(self, other: ConstraintSystem) -> bool:
        """Every row of `other` is implied (equalities in both directions)."""
        return not self.unimplied_rows(other)

    def unimplied_rows(self, other: ConstraintSystem) -> List[ConstraintRow]:
        if other.dimension != self.system.dimension:
            raise DimensionMismatchError(self.system.dimension, other.dimension)
        missing = []
        for row in other.rows:
            certificate = self.is_valid_vector(row.dense(other.dimension), row.is_equality)
            if not certificate.valid:
                missing.append(row)
        return missing


def is_valid(system: ConstraintSystem, candidate: Union[Candidate, Vector]) -> Certificate:
    service = VerifyService(system)
    if isinstance(candidate, Candidate):
        return service.is_valid(candidate)
    return service.is_valid_vector(candidate)


def replay(system: ConstraintSystem, certificate: Certificate) -> bool:
    return VerifyService(system).replay(certificate)


def in_projection(system: ConstraintSystem, keep: Sequence[int], point: Vector) -> ProjectionCertificate:
    return VerifyService(system).in_projection(keep, point)


def implies(a: ConstraintSystem, b: ConstraintSystem) -> bool:
    return VerifyService(a).implies(b)


def equivalent(a: ConstraintSystem, b: ConstraintSystem) -> bool:
    return implies(a, b) and implies(b, a)


def check_lift(system: ConstraintSystem, certificate: ProjectionCertificate) -> bool:
    """Replay a membership certificate: the lift satisfies every row."""
    if not certificate.member or certificate.lift is None:
        return False
    for row in system.rows:
        value = _dot(row, certificate.lift)
        if value < 0 or (row.is_equality and value != 0):
            return False
    return True

"""Double-description conversion between facet and ray descriptions of cones."""
from fractions import Fraction
from typing import FrozenSet, List, NamedTuple, Sequence, Tuple

from shared.schemas.constraint import ConstraintRow, ConstraintSystem, Provenance, Relation, SubsetIndex
from shared.schemas.polyhedron import ConeVRep, Ray
from shared.utils.helpers import lcm_of_denominators, primitive_vector
from shared.utils.linalg import combine, dot, inverse, null_space, rank, row_space
from shared.utils.logger import get_logger
from services.polyhedron.services.canonical_service import dedupe_rows

logger = get_logger(__name__)

IntVector = Tuple[int, ...]


class _Ray(NamedTuple):
    vector: IntVector
    zeros: FrozenSet[int]


def _integer_rows(matrix: Sequence[Sequence[Fraction]]) -> List[IntVector]:
    """Scale each row to integers by a positive factor."""
    out = []
    for row in matrix:
        scale = lcm_of_denominators(row)
        out.append(tuple(int(v * scale) for v in row))
    return out


def _idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _lineality_basis(vectors: Sequence[Sequence[Fraction]], dimension: int) -> List[IntVector]:
    """Primitive RREF basis, so equal spaces print identically."""
    return [primitive_vector(row) for row in row_space(vectors, dimension)]


class DoubleDescription:
    """
    Extreme rays of {h : A h >= 0, E h = 0}.

    The cone is first written in coordinates of the null space of E and
    split into its lineality space and a pointed, full-dimensional part.
    Rows are then added one at a time to the simplicial cone of an
    initial row basis, keeping rays whose zero sets witness adjacency.
    """

    def __init__(self, system: ConstraintSystem):
        self.system = system
        self.dimension = system.dimension

    def run(self) -> ConeVRep:
        d = self.dimension
        inequalities = [row.dense(d) for row in self.system.inequalities()]
        equalities = [row.dense(d) for row in self.system.equalities()]

        basis = null_space(equalities, d)
        k = len(basis)
        if k == 0:
            return ConeVRep(index=self.system.index)
        reduced = [[dot(a, b) for b in basis] for a in inequalities]

        lineality = [combine(z, basis, d) for z in null_space(reduced, k)]
        complement = row_space(reduced, k)
        r = len(complement)

        rays: List[IntVector] = []
        if r:
            generators = _integer_rows([[dot(b, c) for c in complement] for b in reduced])
            for u in self._enumerate(generators, r):
                z = combine(u, complement, k)
                rays.append(primitive_vector(combine(z, basis, d)))

        vrep = ConeVRep(
            index=self.system.index,
            rays=tuple(Ray(coordinates=v) for v in sorted(set(rays))),
            lineality=tuple(Ray(coordinates=v) for v in _lineality_basis(lineality, d)),
        )
        logger.debug(
            "Double description finished",
            rows=len(self.system.rows),
            rays=len(vrep.rays),
            lineality=len(vrep.lineality),
        )
        return vrep

    def _initial_rows(self, generators: Sequence[IntVector], r: int) -> List[int]:
        chosen: List[int] = []
        for i in range(len(generators)):
            if rank([generators[j] for j in chosen + [i]], r) > len(chosen):
                chosen.append(i)
                if len(chosen) == r:
                    break
        return chosen

    def _enumerate(self, generators: Sequence[IntVector], r: int) -> List[IntVector]:
        initial = self._initial_rows(generators, r)
        columns = inverse([generators[i] for i in initial])
        rays: List[_Ray] = []
        for j in range(r):
            vector = primitive_vector([columns[i][j] for i in range(r)])
            zeros = frozenset(initial[i] for i in range(r) if i != j)
            rays.append(_Ray(vector, zeros))

        done = set(initial)
        for row_id, g in enumerate(generators):
            if row_id in done:
                continue
            done.add(row_id)
            values = [_idot(g, ray.vector) for ray in rays]
            pos = [ray for ray, v in zip(rays, values) if v > 0]
            neg = [ray for ray, v in zip(rays, values) if v < 0]
            zero = [ray._replace(zeros=ray.zeros | {row_id}) for ray, v in zip(rays, values) if v == 0]
            if not neg:
                rays = pos + zero
                continue

            created: List[_Ray] = []
            for p in pos:
                a_p = _idot(g, p.vector)
                for n in neg:
                    common = p.zeros & n.zeros
                    if len(common) < r - 2:
                        continue
                    if any(
                        q is not p and q is not n and common <= q.zeros
                        for q in rays
                    ):
                        continue
                    a_n = _idot(g, n.vector)
                    vector = tuple(a_p * x - a_n * y for x, y in zip(n.vector, p.vector))
                    if any(vector):
                        created.append(_Ray(primitive_vector(vector), common | {row_id}))
            rays = pos + zero + created
            logger.debug("Added row", row=row_id, pos=len(pos), neg=len(neg), zero=len(zero), rays=len(rays))
        return [ray.vector for ray in rays]


def extreme_rays(system: ConstraintSystem) -> ConeVRep:
    """V-representation of the cone of `system`."""
    return DoubleDescription(system).run()


def _facets(index: SubsetIndex, generators: Sequence[Sequence[int]], lineality: Sequence[Sequence[int]]) -> ConstraintSystem:
    """H-representation of cone(generators) + span(lineality) via the polar cone."""
    rows = [
        ConstraintRow(coefficients=dict(enumerate(g)), relation=Relation.GEQ_ZERO, provenance=Provenance.FACET)
        for g in generators if any(g)
    ]
    rows += [
        ConstraintRow(coefficients=dict(enumerate(v)), relation=Relation.EQ_ZERO, provenance=Provenance.FACET)
        for v in lineality if any(v)
    ]
    polar = extreme_rays(ConstraintSystem(index=index, rows=tuple(dedupe_rows(rows))))
    out = [
        ConstraintRow(coefficients=dict(enumerate(ray.coordinates)), relation=Relation.GEQ_ZERO,
                      provenance=Provenance.FACET)
        for ray in polar.rays
    ]
    out += [
        ConstraintRow(coefficients=dict(enumerate(v.coordinates)), relation=Relation.EQ_ZERO,
                      provenance=Provenance.FACET)
        for v in polar.lineality
    ]
    return ConstraintSystem(index=index, rows=tuple(dedupe_rows(out)))


def facets_from_rays(vrep: ConeVRep) -> ConstraintSystem:
    """Facets (and implicit equalities) of the cone generated by `vrep`."""
    return _facets(
        vrep.index,
        [r.coordinates for r in vrep.rays],
        [r.coordinates for r in vrep.lineality],
    )


def project_rays(vrep: ConeVRep, keep: Sequence[int]) -> ConeVRep:
    """Coordinate projection of a V-representation, re-reduced to extreme rays."""
    keep = list(keep)
    index = vrep.index.restrict(keep)
    generators = [tuple(r.coordinates[k] for k in keep) for r in vrep.rays]
    lineality = [tuple(r.coordinates[k] for k in keep) for r in vrep.lineality]
    return extreme_rays(_facets(index, generators, lineality))

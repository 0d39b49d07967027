"""Fourier-Motzkin projection and redundancy removal."""
from fractions import Fraction

import numpy as np
import pytest

from shared.schemas.constraint import ConstraintRow, ConstraintSystem, Relation, SubsetIndex
from shared.schemas.polyhedron import ConeVRep, Ray
from shared.utils.exceptions import EntropicException
from shared.utils.helpers import primitive_vector
from shared.utils.linalg import rank
from services.cone.services.cone_service import ConeService
from services.cone.services.pipeline_service import marginal_shannon
from services.model.services.structure_service import StructureService
from services.polyhedron.services.dd_service import extreme_rays, facets_from_rays, project_rays
from services.polyhedron.services.fm_service import FourierMotzkin, fm_eliminate, remove_redundant
from services.scenarios.services.builders_service import get_scenario
from services.scenarios.services.inequalities_service import (
    candidate_row,
    get_inequality,
    permute,
    triangle_symmetries,
)
from services.verify.services.verify_service import equivalent

XY = SubsetIndex.from_masks(("A", "B"), [1, 2])


def _system(index, *rows):
    return ConstraintSystem(index=index, rows=tuple(rows))


def test_eliminate_single_coordinate():
    """x - y >= 0 and y >= 0 project to x >= 0."""
    system = _system(XY, ConstraintRow(coefficients={0: 1, 1: -1}), ConstraintRow(coefficients={1: 1}))
    projected = fm_eliminate(system, [1])
    assert projected.index == XY.restrict([0])
    assert [r.coefficients for r in projected.rows] == [((0, 1),)]


def test_equalities_are_substituted():
    """x - y = 0 and y >= 0 project to x >= 0."""
    system = _system(
        XY,
        ConstraintRow(coefficients={0: 1, 1: -1}, relation=Relation.EQ_ZERO),
        ConstraintRow(coefficients={1: 1}),
    )
    projected = fm_eliminate(system, [1])
    assert [(r.coefficients, r.is_equality) for r in projected.rows] == [(((0, 1),), False)]


def test_eliminating_nothing_only_dedupes():
    system = _system(XY, ConstraintRow(coefficients={0: 2}), ConstraintRow(coefficients={0: 1}))
    assert len(fm_eliminate(system, []).rows) == 1


def test_unbounded_coordinate_drops_its_rows():
    """A coordinate with only positive occurrences leaves nothing behind."""
    system = _system(XY, ConstraintRow(coefficients={0: 1, 1: 1}), ConstraintRow(coefficients={1: 1}))
    assert fm_eliminate(system, [1]).rows == ()


def test_remove_redundant():
    """x + y >= 0 follows from x >= 0 and y >= 0."""
    system = _system(
        XY,
        ConstraintRow(coefficients={0: 1}),
        ConstraintRow(coefficients={1: 1}),
        ConstraintRow(coefficients={0: 1, 1: 1}),
    )
    reduced = remove_redundant(system)
    assert len(reduced.rows) == 2
    assert equivalent(reduced, system)


def test_row_limit():
    """Exceeding the row limit aborts the elimination."""
    index = SubsetIndex.from_masks(("A", "B", "C"), [1, 2, 3, 4])
    rows = [ConstraintRow(coefficients={0: 1, 3: s, k: 1}) for s in (1, -1) for k in (1, 2)]
    engine = FourierMotzkin(max_rows=1, redundancy_every_step=False)
    with pytest.raises(EntropicException) as err:
        fm_eliminate(_system(index, *rows), [3], engine)
    assert err.value.code == "FM_ROW_LIMIT"


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("redundancy_every_step", [True, False])
def test_projection_matches_projected_rays(seed, redundancy_every_step):
    """Projecting facets and projecting generators describe the same cone."""
    rng = np.random.default_rng(seed)
    index = SubsetIndex.from_masks(("A", "B", "C"), [1, 2, 3, 4])
    rays = set()
    while len(rays) < 6:
        vector = rng.integers(0, 4, size=4)
        if vector.any():
            rays.add(primitive_vector([int(v) for v in vector]))
    vrep = ConeVRep(index=index, rays=tuple(Ray(coordinates=r) for r in sorted(rays)))
    system = facets_from_rays(vrep)
    engine = FourierMotzkin(redundancy_every_step=redundancy_every_step)
    projected = fm_eliminate(system, [3], engine)
    expected = facets_from_rays(project_rays(vrep, [0, 1, 2]))
    assert projected.index == expected.index
    assert equivalent(projected, expected)


def _value(row, point):
    return sum((c * point[k] for k, c in row.coefficients), Fraction(0))


def test_projection_holds_on_sampled_lifted_points(chain, rng):
    """Points of the chain cone, projected onto {X, Z}, satisfy every projected row."""
    system = ConeService(chain).assemble()
    index = system.index
    drop = [k for k in range(len(index)) if "Y" in index.names_of(index.masks[k])]
    keep = [k for k in range(len(index)) if k not in set(drop)]
    projected = fm_eliminate(system, drop)
    vrep = extreme_rays(system)
    generators = [list(ray.coordinates) for ray in vrep.rays]
    for _ in range(1000):
        weights = rng.integers(0, 5, size=len(generators))
        point = [sum((int(w) * g[k] for w, g in zip(weights, generators)), Fraction(0)) for k in range(len(index))]
        for direction in vrep.lineality:
            t = int(rng.integers(-3, 4))
            point = [p + t * Fraction(d) for p, d in zip(point, direction)]
        shadow = [point[k] for k in keep]
        for row in projected.rows:
            value = _value(row, shadow)
            assert value == 0 if row.is_equality else value >= 0


def test_remove_redundant_leaves_triangle_facets():
    """Every row kept for the triangle marginal cone is tight on dim - 1 independent rays."""
    structure = get_scenario("triangle_classical")
    scenario = structure.marginal_scenario
    index = StructureService(structure).marginal_index(scenario)
    rows = list(marginal_shannon(structure, index, scenario).rows)
    for k in (1, 2, 3):
        candidate = get_inequality(f"triangle_{k}").candidate
        rows += [candidate_row(permute(candidate, mapping), index) for mapping in triangle_symmetries()]
    first, second = rows[0].dense(len(index)), rows[-1].dense(len(index))
    rows.append(ConstraintRow(coefficients={k: a + b for k, (a, b) in enumerate(zip(first, second)) if a + b}))
    system = ConstraintSystem(index=index, rows=tuple(rows))

    reduced = remove_redundant(system)
    assert len(reduced.rows) < len(system.rows)
    assert equivalent(reduced, system)
    vrep = extreme_rays(reduced)
    assert vrep.lineality == ()
    dimension = len(index)
    for row in reduced.rows:
        tight = [list(ray.coordinates) for ray in vrep.rays if _value(row, ray.coordinates) == 0]
        assert rank(tight, dimension) == dimension - 1

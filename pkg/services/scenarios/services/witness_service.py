"""Distributions populating the extreme rays of the triangle marginal cone."""
import itertools
from typing import Dict, List, Tuple

from shared.schemas.constraint import SubsetIndex
from shared.schemas.distribution import JointDistribution
from shared.schemas.polyhedron import Ray
from services.scenarios.services.inequalities_service import triangle_symmetries

TRIANGLE_NAMES = ("A", "B", "C")

# Over (H_C, H_B, H_BC, H_A, H_AC, H_AB, H_ABC).
RAY_TYPES: Dict[int, Tuple[int, ...]] = {
    1: (0, 0, 0, 1, 1, 1, 1),
    2: (0, 1, 1, 1, 1, 1, 1),
    3: (1, 1, 2, 1, 2, 2, 2),
    4: (3, 3, 5, 2, 4, 4, 6),
}


def triangle_index() -> SubsetIndex:
    return SubsetIndex.from_masks(TRIANGLE_NAMES, range(1, 8))


def _p1() -> JointDistribution:
    """A is a fair bit, B and C are constant."""
    return JointDistribution.uniform_on(
        (("A", 2), ("B", 2), ("C", 2)), [(0, 0, 0), (1, 0, 0)]
    )


def _p2() -> JointDistribution:
    """A = B is a fair bit, C is constant."""
    return JointDistribution.uniform_on(
        (("A", 2), ("B", 2), ("C", 2)), [(0, 0, 0), (1, 1, 0)]
    )


def _p3() -> JointDistribution:
    """Uniform on even-parity triples."""
    support = [t for t in itertools.product((0, 1), repeat=3) if sum(t) % 2 == 0]
    return JointDistribution.uniform_on((("A", 2), ("B", 2), ("C", 2)), support)


def _p4() -> JointDistribution:
    """
    A = (s, t), B = (s, u, v), C = (s, w, z) for six fair bits.

    One bit is shared by all three parties and the other five are private.
    """
    support = []
    for s, t, u, v, w, z in itertools.product((0, 1), repeat=6):
        support.append((2 * s + t, 4 * s + 2 * u + v, 4 * s + 2 * w + z))
    return JointDistribution.uniform_on((("A", 4), ("B", 8), ("C", 8)), support)


def witness_distributions() -> Dict[int, JointDistribution]:
    """Exact distribution for each ray type, keyed 1..4."""
    return {1: _p1(), 2: _p2(), 3: _p3(), 4: _p4()}


def triangle_rays() -> List[Ray]:
    """Every relabeling of the four ray types, sorted and without repeats."""
    index = triangle_index()
    seen = set()
    for ray in RAY_TYPES.values():
        values = dict(zip(index.masks, ray))
        for mapping in triangle_symmetries():
            image = []
            for mask in index.masks:
                names = [mapping[n] for n in index.names_of(mask)]
                image.append(values[index.mask_of(names)])
            seen.add(tuple(image))
    return [Ray(coordinates=c) for c in sorted(seen)]

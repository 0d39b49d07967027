"""Random distributions compatible with classical structures."""
import pytest

from shared.utils.exceptions import ValidationError
from services.dist.services.sampling_service import sample_structure_distribution
from services.scenarios.services.builders_service import build_ic


def test_sample_covers_every_system(chain, rng):
    dist = sample_structure_distribution(chain, rng)
    assert dist.names() == ["X", "Y", "Z"]
    assert sum(dist.probabilities.values()) == 1


def test_sample_respects_cardinality_cap(rng):
    structure, _ = build_ic(2, shared_resource="classical")
    dist = sample_structure_distribution(structure, rng, max_cardinality=2)
    assert dist.cardinalities() == [2] * len(structure.systems)


def test_sample_rejects_quantum_structures(ic, rng):
    with pytest.raises(ValidationError):
        sample_structure_distribution(ic, rng)


def test_independent_preparations(rng):
    """Inputs and the classical resource are sampled independently."""
    structure, _ = build_ic(2, shared_resource="classical")
    dist = sample_structure_distribution(structure, rng, max_cardinality=2)
    joint = dist.marginal(["X1", "X2", "L"])
    inputs, resource = dist.marginal(["X1", "X2"]), dist.marginal(["L"])
    for (x1, x2, lam), p in joint.items():
        assert p == inputs[(x1, x2)] * resource[(lam,)]

"""Built-in structures, named inequalities and symmetry handling."""
import pytest

from shared.schemas.structure import SystemKind
from shared.utils.exceptions import NotFoundError, ValidationError
from services.cone.services.cone_service import ConeService
from services.model.services.dsl_service import parse_structure
from services.model.services.structure_service import StructureService
from services.scenarios.services.builders_service import (
    build_ic,
    build_monogamy_star,
    build_network,
    emit_scenario,
    get_scenario,
)
from services.scenarios.services.inequalities_service import (
    INEQUALITY_NAMES,
    candidate_row,
    get_inequality,
    group_orbits,
    ic_symmetries,
    is_named_inequality,
    orbit_key,
    permute,
    triangle_symmetries,
)
from services.scenarios.services.witness_service import RAY_TYPES, triangle_rays, witness_distributions
from services.verify.services.verify_service import expand

SCENARIOS = [
    "triangle",
    "triangle_classical",
    "ic2",
    "ic3",
    "ic2_dense",
    "ic2_classical",
    "ic2_classical_restricted",
    "ic2_classical_restricted_inputs",
    "network3_2",
    "network4_2",
    "network4_3",
    "star4",
    "star3_classical",
]

NAMED = [
    "IC_original",
    "IC_original(3)",
    "IC_safi",
    "IC_tight",
    "IC_tight_n(3)",
    "IC_dense_n(2)",
    "monogamy(3,1)",
    "monogamy(4,2)",
    "network_bound(3)",
    "triangle_1",
    "triangle_2",
    "triangle_3",
]


@pytest.mark.parametrize("name", SCENARIOS)
def test_builtin_scenarios_validate(name):
    assert StructureService(get_scenario(name)).validate().ok


def test_unknown_scenario():
    with pytest.raises(NotFoundError):
        get_scenario("pentagon")


@pytest.mark.parametrize("name", ["triangle", "ic2_dense", "network4_3"])
def test_emitted_scenario_parses_back(name):
    assert parse_structure(emit_scenario(name)) == get_scenario(name)


def test_ic_names_and_decoder_exclusivity():
    structure, scenario = build_ic(3)
    assert structure.system_names() == ["X1", "X2", "X3", "A", "B", "M", "Y1", "Y2", "Y3"]
    assert len(structure.exclusivity_groups) == 1
    assert frozenset({"X1", "X2", "X3", "M", "Y1"}) in scenario.contexts


def test_classical_ic_has_no_exclusivity():
    structure, _ = build_ic(2, shared_resource="classical")
    assert "L" in structure.system_names()
    assert structure.exclusivity_groups == ()
    assert all(SystemKind(s.kind) == SystemKind.CLASSICAL for s in structure.systems)


def test_dense_coding_splits_contexts():
    """A quantum message never coexists with a guess."""
    _, scenario = build_ic(2, quantum_message=True)
    assert frozenset({"X1", "X2", "M"}) in scenario.contexts
    assert frozenset({"X1", "X2", "Y1"}) in scenario.contexts


@pytest.mark.parametrize("kwargs", [{"n": 1}, {"scenario": "partial"}, {"shared_resource": "box"}])
def test_ic_builder_rejects_bad_arguments(kwargs):
    with pytest.raises(ValidationError):
        build_ic(**kwargs)


@pytest.mark.parametrize("n,m,sources", [(4, 2, 6), (4, 3, 4), (5, 4, 5)])
def test_network_shape(n, m, sources):
    structure = build_network(n, m)
    assert len(structure.preparations) == sources
    assert len(structure.systems) == sources * m + n
    assert len(structure.operations) == n


def test_network_rejects_singleton_sources():
    with pytest.raises(ValidationError):
        build_network(3, 1)


def test_network3_2_is_the_triangle():
    """Both builders list systems in parallel order, so their rows coincide."""
    network = ConeService(get_scenario("network3_2")).assemble()
    triangle = ConeService(get_scenario("triangle")).assemble()
    assert sorted(r.key for r in network.rows) == sorted(r.key for r in triangle.rows)


def test_star_wiring():
    structure = build_monogamy_star(4)
    service = StructureService(structure)
    assert structure.operation("measure_V1").inputs == frozenset({"Q2a", "Q3a", "Q4a"})
    assert service.is_coexisting(["V1", "V2", "V3", "V4"])


def test_witness_supports():
    witnesses = witness_distributions()
    assert len(witnesses[1].probabilities) == 2
    assert len(witnesses[3].probabilities) == 4
    assert len(witnesses[4].probabilities) == 64
    assert witnesses[4].cardinalities() == [4, 8, 8]


def test_triangle_rays_are_relabelings():
    rays = {r.coordinates for r in triangle_rays()}
    assert len(rays) == 10
    assert all(tuple(ray) in rays for ray in RAY_TYPES.values())
    assert (1, 1, 2, 1, 2, 2, 2) in rays


@pytest.mark.parametrize("name", NAMED)
def test_named_inequality_lives_on_its_scenario(name):
    """Every term of a named inequality is a coordinate of its home scenario."""
    named = get_inequality(name)
    index = StructureService(get_scenario(named.scenario)).marginal_index()
    assert any(expand(named.candidate, index))
    assert named.candidate.name == named.name


def test_named_inequality_lookup_errors():
    with pytest.raises(NotFoundError):
        get_inequality("IC_loose")
    with pytest.raises(ValidationError):
        get_inequality("IC_tight(2)")
    with pytest.raises(ValidationError):
        get_inequality("monogamy(3)")
    with pytest.raises(ValidationError):
        get_inequality("monogamy(3,4)")


def test_is_named_inequality():
    assert is_named_inequality("IC_tight_n(4)")
    assert is_named_inequality(" triangle_2 ")
    assert not is_named_inequality("H(A) >= 0")
    assert not is_named_inequality("foo(2)")
    assert len(INEQUALITY_NAMES) == 10


def test_network_bound_home():
    assert get_inequality("network_bound(4)").scenario == "network5_4"
    assert get_inequality("monogamy(5,3)").scenario == "network5_2"


def test_permute_swaps_inputs():
    tight = get_inequality("IC_tight").candidate
    swapped = permute(tight, {"X1": "X2", "X2": "X1", "Y1": "Y2", "Y2": "Y1"})
    assert swapped != tight
    assert permute(swapped, {"X1": "X2", "X2": "X1", "Y1": "Y2", "Y2": "Y1"}).expression == tight.expression


def test_orbit_key_identifies_relabelings():
    """A candidate and its relabeled image land in one orbit."""
    index = StructureService(get_scenario("ic2")).marginal_index()
    symmetries = ic_symmetries(2)
    tight = get_inequality("IC_tight").candidate
    image = permute(tight, symmetries[1])
    rows = [candidate_row(tight, index), candidate_row(image, index)]
    assert rows[0].key != rows[1].key
    assert orbit_key(rows[0], index, symmetries) == orbit_key(rows[1], index, symmetries)
    assert len(group_orbits(rows, index, symmetries)) == 1


def test_triangle_inequalities_are_distinct_orbits():
    index = StructureService(get_scenario("triangle")).marginal_index()
    symmetries = triangle_symmetries()
    keys = {
        orbit_key(candidate_row(get_inequality(f"triangle_{k}").candidate, index), index, symmetries)
        for k in (1, 2, 3)
    }
    assert len(keys) == 3

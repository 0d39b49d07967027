"""Structure validation, coexistence and the coordinate lattice."""
import itertools

import pytest

from shared.schemas.structure import SystemKind
from services.model.services.dsl_service import parse_structure
from services.model.services.structure_service import (
    StructureService,
    coexisting_sets,
    marginal_index,
    merge_classical_preparations,
    subset_coordinates,
    validate,
)
from shared.utils.exceptions import CoordinateError, ValidationError


def _brute_force_maximal(structure):
    """Maximal coexisting sets by enumerating every subset."""
    service = StructureService(structure)
    names = service.names
    good = [
        frozenset(c)
        for r in range(1, len(names) + 1)
        for c in itertools.combinations(names, r)
        if service.is_coexisting(c)
    ]
    return {s for s in good if not any(s < t for t in good)}


def test_triangle_is_valid(triangle):
    """The quantum triangle passes every structural rule."""
    assert validate(triangle).ok


def test_triangle_coexisting_sets(triangle):
    """Each observer either keeps its two shares or their measurement: eight sets."""
    sets = coexisting_sets(triangle)
    assert len(sets) == 8
    assert sets[0] == ("A1", "B1", "A2", "C1", "B2", "C2")
    assert sets[-1] == ("A", "B", "C")
    assert ("B1", "C1", "B2", "C2", "A") in sets


def test_ic_coexisting_sets(ic):
    """The IC game has the four jointly existing sets of inputs, shares, message and guesses."""
    assert coexisting_sets(ic) == [
        ("X1", "X2", "A", "B"),
        ("X1", "X2", "B", "M"),
        ("X1", "X2", "M", "Y1"),
        ("X1", "X2", "M", "Y2"),
    ]


@pytest.mark.parametrize("fixture", ["triangle", "ic", "classical_triangle", "chain"])
def test_coexisting_sets_match_brute_force(fixture, request):
    """Clique enumeration agrees with checking every subset."""
    structure = request.getfixturevalue(fixture)
    cliques = {frozenset(s) for s in coexisting_sets(structure)}
    assert cliques == _brute_force_maximal(structure)


def test_classical_chain_single_coexisting_set():
    """Classical variables coexist with their descendants."""
    structure = parse_structure(
        "system X classical\nsystem Y classical\nprepare {X}\nop f in {X} out {Y}\n"
    )
    assert coexisting_sets(structure) == [("X", "Y")]


def test_three_classical_variables_give_seven_coordinates():
    """A fully coexisting triple has the 2^3 - 1 nonempty subsets."""
    structure = parse_structure(
        "system A classical\nsystem B classical\nsystem C classical\nprepare {A, B, C}\n"
    )
    index = subset_coordinates(structure)
    assert len(index) == 7
    assert [index.label(k) for k in range(3)] == ["H(C)", "H(B)", "H(B,C)"]


def test_ic_lattice_is_smaller_than_power_set(ic):
    """Quantum shares remove coordinates such as {A, M} and {B, Y1}."""
    index = subset_coordinates(ic)
    assert len(index) < 2 ** 7 - 1
    assert index.mask_of(["A", "M"]) not in index
    assert index.mask_of(["B", "Y1"]) not in index
    assert index.mask_of(["Y1", "Y2"]) not in index
    with pytest.raises(CoordinateError):
        index.position_of(["Y1", "Y2"])


def test_classical_triangle_full_lattice(classical_triangle):
    """Without quantum systems every subset coexists."""
    assert len(subset_coordinates(classical_triangle)) == 2 ** 9 - 1


def test_no_cloning_violation():
    """A quantum system may not feed two non-exclusive operations."""
    structure = parse_structure(
        "system B quantum\nsystem Y classical\nsystem Z classical\n"
        "prepare {B}\nop f in {B} out {Y}\nop g in {B} out {Z}\n"
    )
    report = validate(structure)
    assert not report.ok
    assert "no-cloning" in report.kinds()


def test_exclusive_consumers_allowed():
    """Alternative measurements of one quantum system are fine."""
    structure = parse_structure(
        "system B quantum\nsystem Y classical\nsystem Z classical\n"
        "prepare {B}\nop f in {B} out {Y}\nop g in {B} out {Z}\nexclusive {f, g}\n"
    )
    assert validate(structure).ok
    assert coexisting_sets(structure) == [("B",), ("Y",), ("Z",)]


def test_cycle_violation():
    """An operation output feeding back into its own ancestor is a cycle."""
    structure = parse_structure(
        "system X classical\nsystem Y classical\nsystem Z classical\n"
        "prepare {X}\nop f in {X, Z} out {Y}\nop g in {Y} out {Z}\n"
    )
    assert validate(structure).kinds() == ["cycle"]


def test_undeclared_and_unproduced_systems():
    """Every referenced system is declared and every declared one produced."""
    structure = parse_structure("system X classical\nsystem Y classical\nprepare {X}\nop f in {X} out {W}\n")
    kinds = validate(structure).kinds()
    assert "undeclared_system" in kinds
    assert "unproduced_system" in kinds


def test_non_coexisting_marginal_context(ic):
    """A context mixing a share with the message is rejected."""
    broken = ic.model_copy(update={"marginal_scenario": ic.marginal_scenario.model_copy(
        update={"contexts": (frozenset({"A", "M"}),)}
    )})
    assert "non_coexisting_context" in validate(broken).kinds()
    with pytest.raises(CoordinateError):
        marginal_index(broken)
    with pytest.raises(ValidationError):
        StructureService(broken).require_valid()


def test_marginal_index_uses_context_power_sets(chain):
    """Marginal coordinates are the nonempty subsets of each context."""
    index = marginal_index(chain)
    assert index.names == ("X", "Z")
    assert len(index) == 3


def test_merge_classical_preparations(classical_triangle):
    """Unobserved classical sources collapse into one system each."""
    merged = merge_classical_preparations(classical_triangle)
    assert merged.system_names() == ["A1_B1", "A2_C1", "B2_C2", "A", "B", "C"]
    assert len(subset_coordinates(merged)) == 63
    assert merged.operation("measure_A").inputs == frozenset({"A1_B1", "A2_C1"})
    assert all(SystemKind(s.kind) == SystemKind.CLASSICAL for s in merged.systems)


def test_merge_keeps_quantum_preparations(triangle):
    """Quantum sources cannot be merged."""
    assert merge_classical_preparations(triangle) == triangle

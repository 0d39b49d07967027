"""Constraint generation: elemental rows, independencies, data processing."""
import pytest

from shared.schemas.certificate import Candidate, LinearExpression
from shared.schemas.constraint import ConstraintRow, Provenance, Relation
from shared.utils.exceptions import CoordinateError, ValidationError
from services.cone.services.cone_service import (
    ConeService,
    assemble,
    conditional_independencies,
    data_processing_inequalities,
    elemental_inequalities,
)
from services.cone.services.dseparation_service import d_separated
from services.dist.services.entropy_service import entropy_vector
from services.dist.services.sampling_service import sample_structure_distribution
from services.model.services.dsl_service import parse_structure
from services.polyhedron.services.canonical_service import canonical_coefficients
from services.scenarios.services.builders_service import build_ic, build_network, build_triangle
from services.verify.services.verify_service import VerifyService, expand

H = LinearExpression.entropy
I = LinearExpression.mutual_information


def _key(index, expression, equality=False):
    relation = Relation.EQ_ZERO if equality else Relation.GEQ_ZERO
    vector = expand(Candidate(expression=expression, relation=relation), index)
    coefficients = canonical_coefficients({k: v for k, v in enumerate(vector) if v}, equality)
    return (relation.value, tuple(coefficients.items()))


def _keys(system):
    return {row.key for row in system.rows}


def _holds(row, values, tol=1e-9):
    value = sum(float(c) * values[k] for k, c in row.coefficients)
    return abs(value) <= tol if row.is_equality else value >= -tol


def test_elemental_rows_for_three_classical_variables():
    """Three coexisting classical variables give the nine elemental Shannon rows."""
    structure = parse_structure(
        "system A classical\nsystem B classical\nsystem C classical\nprepare {A, B, C}\n"
    )
    system = elemental_inequalities(structure)
    assert len(system.rows) == 9
    assert all(not row.is_equality for row in system.rows)


def test_single_variable_has_one_row():
    """H(X) >= 0 is all there is for one variable."""
    system = elemental_inequalities(parse_structure("system X classical\nprepare {X}\n"))
    assert [row.coefficients for row in system.rows] == [((0, 1),)]


def test_quantum_message_uses_weak_monotonicity():
    """A quantum message gets weak monotonicity in place of monotonicity."""
    structure, _ = build_ic(2, quantum_message=True)
    system = elemental_inequalities(structure)
    index = system.index
    weak = H(["X1", "X2", "M", "B"]) + H(["M"]) - H(["X1", "X2", "B"])
    mono = H(["X1", "X2", "M", "B"]) - H(["X1", "X2", "B"])
    assert _key(index, weak) in _keys(system)
    assert _key(index, mono) not in _keys(system)
    assert system.by_provenance(Provenance.WEAK_MONOTONICITY)


def test_d_separation_chain(chain):
    """A chain is blocked by its middle node only."""
    assert d_separated(chain, {"X"}, {"Z"}, {"Y"})
    assert not d_separated(chain, {"X"}, {"Z"})


def test_d_separation_collider():
    """Conditioning on a collider opens the path."""
    structure = parse_structure(
        "system X classical\nsystem Y classical\nsystem Z classical\n"
        "prepare {X}\nprepare {Y}\nop f in {X, Y} out {Z}\n"
    )
    assert d_separated(structure, {"X"}, {"Y"})
    assert not d_separated(structure, {"X"}, {"Y"}, {"Z"})


def test_d_separation_collapsed_preparations(ic):
    """Inputs are independent of the shared resource but not of each other."""
    assert d_separated(ic, {"X1", "X2"}, {"A", "B"})
    assert not d_separated(ic, {"X1"}, {"X2"})


def test_d_separation_rejects_overlap(chain):
    with pytest.raises(ValidationError):
        d_separated(chain, {"X"}, {"X", "Z"})


def test_ic_input_independence(ic):
    """The inputs are independent of the shared state."""
    system = conditional_independencies(ic)
    row = I(["X1", "X2"], ["A", "B"])
    assert _key(system.index, row, equality=True) in _keys(system)


def test_triangle_sources_factorize(triangle):
    """Joint independence of the three sources follows from the CI rows alone."""
    system = conditional_independencies(triangle)
    index = system.index
    roots = ["A1", "B1", "A2", "C1", "B2", "C2"]
    factor = H(["A1", "B1"]) + H(["A2", "C1"]) + H(["B2", "C2"]) - H(roots)
    vector = expand(Candidate(expression=factor, relation=Relation.EQ_ZERO), index)
    assert VerifyService(system).is_valid_vector(vector, equality=True).valid


def test_lone_preparation_has_no_independencies():
    system = conditional_independencies(parse_structure("system X classical\nprepare {X}\n"))
    assert system.rows == ()


def test_chain_markov_condition(chain):
    """Z is independent of X given Y."""
    system = assemble(chain)
    assert _key(system.index, I(["X"], ["Z"], ["Y"]), equality=True) in _keys(system)


def test_ic_data_processing(ic):
    """Decoding the message and Bob's share cannot increase information about the inputs."""
    system = data_processing_inequalities(ic)
    row = I(["X1", "X2"], ["M", "B"]) - I(["X1", "X2"], ["Y1", "M"])
    assert _key(system.index, row) in _keys(system)


def test_triangle_data_processing(triangle):
    """Measuring A1 A2 into A loses information about the other shares."""
    system = data_processing_inequalities(triangle)
    row = I(["B2"], ["A1", "A2", "B1"]) - I(["B2"], ["A", "B1"])
    assert _key(system.index, row) in _keys(system)


def test_assemble_rejects_unknown_coordinate(chain):
    """User rows must stay inside the coordinate index."""
    service = ConeService(chain)
    extra = ConstraintRow(coefficients={len(service.index): 1})
    with pytest.raises(CoordinateError):
        service.assemble(extra=[extra])


def test_assemble_keeps_user_rows(chain):
    service = ConeService(chain)
    extra = ConstraintRow(coefficients={0: 1, 1: -1})
    system = service.assemble(extra=[extra])
    assert extra.key in _keys(system)


def test_assemble_without_data_processing(ic):
    """Data processing rows are optional."""
    with_dp = ConeService(ic).assemble()
    without = ConeService(ic).assemble(include_data_processing=False)
    assert len(without.rows) < len(with_dp.rows)
    assert not without.by_provenance(Provenance.DATA_PROCESSING)


@pytest.mark.parametrize(
    "structure",
    [
        build_ic(2, shared_resource="classical")[0],
        parse_structure(
            "system X classical\nsystem Y classical\nsystem Z classical\n"
            "prepare {X}\nop f in {X} out {Y}\nop g in {Y} out {Z}\n"
        ),
    ],
    ids=["ic_classical", "chain"],
)
def test_rows_hold_on_sampled_distributions(structure, rng):
    """Every generated row holds on random distributions compatible with the structure."""
    service = ConeService(structure)
    system = service.assemble()
    for _ in range(100):
        dist = sample_structure_distribution(structure, rng, max_cardinality=2)
        values = entropy_vector(dist, service.index).values
        broken = [row for row in system.rows if not _holds(row, values)]
        assert not broken


@pytest.mark.parametrize(
    "quantum,classical",
    [
        (build_triangle(quantum=True)[0], build_triangle(quantum=False)[0]),
        (build_network(3, 2, quantum=True), build_network(3, 2, quantum=False)),
    ],
    ids=["triangle", "network3_2"],
)
def test_quantum_rows_hold_on_classical_twins(quantum, classical, rng):
    """Weak monotonicity and data processing rows hold when every source is classical."""
    service = ConeService(quantum)
    system = service.assemble()
    assert system.by_provenance(Provenance.WEAK_MONOTONICITY)
    assert system.by_provenance(Provenance.DATA_PROCESSING)
    for _ in range(100):
        dist = sample_structure_distribution(classical, rng, max_cardinality=2)
        values = entropy_vector(dist, service.index).values
        broken = [row for row in system.rows if not _holds(row, values)]
        assert not broken

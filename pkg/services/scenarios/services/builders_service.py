"""Built-in causal structures and the scenario name registry."""
import itertools
import re
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from shared.schemas.structure import (
    CausalStructure,
    ExclusivityGroup,
    MarginalScenario,
    Operation,
    Preparation,
    System,
    SystemKind,
)
from shared.utils.exceptions import NotFoundError, ValidationError
from shared.utils.logger import get_logger
from services.model.services.dsl_service import emit_structure
from services.model.services.structure_service import StructureService

logger = get_logger(__name__)

IC_SCENARIOS = ("full", "restricted", "restricted_inputs")
SHARED_RESOURCES = ("quantum", "classical")

Built = Tuple[CausalStructure, MarginalScenario]


def _kind(quantum: bool) -> SystemKind:
    return SystemKind.QUANTUM if quantum else SystemKind.CLASSICAL


def _scenario(contexts: Iterable[Iterable[str]]) -> MarginalScenario:
    return MarginalScenario(contexts=tuple(frozenset(c) for c in contexts))


def _op(name: str, inputs: Iterable[str], outputs: Iterable[str]) -> Operation:
    return Operation(name=name, inputs=frozenset(inputs), outputs=frozenset(outputs))


def build_triangle(quantum: bool = True) -> Built:
    """
    Three bipartite sources shared pairwise between observers A, B and C.

    The roots are quantum by default; with `quantum=False` every system is
    classical and the full lattice coexists.
    """
    root = _kind(quantum)
    roots = ("A1", "B1", "A2", "C1", "B2", "C2")
    systems = [System(name=n, kind=root) for n in roots]
    systems += [System(name=n, kind=SystemKind.CLASSICAL) for n in ("A", "B", "C")]
    scenario = _scenario([("A", "B", "C")])
    structure = CausalStructure(
        systems=tuple(systems),
        preparations=(
            Preparation(systems=frozenset({"A1", "B1"})),
            Preparation(systems=frozenset({"A2", "C1"})),
            Preparation(systems=frozenset({"B2", "C2"})),
        ),
        operations=(
            _op("measure_A", ("A1", "A2"), ("A",)),
            _op("measure_B", ("B1", "B2"), ("B",)),
            _op("measure_C", ("C1", "C2"), ("C",)),
        ),
        marginal_scenario=scenario,
    )
    return structure, scenario


def build_ic(
    n: int = 2,
    quantum_message: bool = False,
    shared_resource: str = "quantum",
    scenario: str = "full",
) -> Built:
    """
    Information causality game with n input bits.

    Alice encodes X1..Xn and her share of the resource into M; decoder s
    reads M and Bob's share and outputs the guess Y_s. Decoders form an
    exclusivity group whenever one of their inputs is quantum.

    Scenarios:
        full: {X1..Xn, M, Y_s} per s (split into {X1..Xn, M} and
            {X1..Xn, Y_s} when M is quantum)
        restricted: {X_s, Y_s} per s and {M}
        restricted_inputs: restricted plus {X1..Xn}
    """
    if n < 2:
        raise ValidationError(f"The IC game needs n >= 2, got {n}", field="n")
    if scenario not in IC_SCENARIOS:
        raise ValidationError(f"Unknown IC scenario '{scenario}'", field="scenario")
    if shared_resource not in SHARED_RESOURCES:
        raise ValidationError(f"Unknown shared resource '{shared_resource}'", field="shared_resource")

    xs = [f"X{i}" for i in range(1, n + 1)]
    ys = [f"Y{i}" for i in range(1, n + 1)]
    if shared_resource == "quantum":
        alice, bob = "A", "B"
        resource = [System(name="A", kind=SystemKind.QUANTUM), System(name="B", kind=SystemKind.QUANTUM)]
    else:
        alice = bob = "L"
        resource = [System(name="L", kind=SystemKind.CLASSICAL)]

    systems = [System(name=x, kind=SystemKind.CLASSICAL) for x in xs]
    systems += resource
    systems.append(System(name="M", kind=_kind(quantum_message)))
    systems += [System(name=y, kind=SystemKind.CLASSICAL) for y in ys]

    decoders = [_op(f"decode{s}", ("M", bob), (y,)) for s, y in enumerate(ys, start=1)]
    groups: Tuple[ExclusivityGroup, ...] = ()
    if quantum_message or shared_resource == "quantum":
        groups = (ExclusivityGroup(operations=frozenset(op.name for op in decoders)),)

    if scenario == "full":
        if quantum_message:
            contexts = [xs + ["M"]] + [xs + [y] for y in ys]
        else:
            contexts = [xs + ["M", y] for y in ys]
    else:
        contexts = [[x, y] for x, y in zip(xs, ys)] + [["M"]]
        if scenario == "restricted_inputs":
            contexts.append(xs)
    marginal = _scenario(contexts)

    structure = CausalStructure(
        systems=tuple(systems),
        preparations=(
            Preparation(systems=frozenset(xs)),
            Preparation(systems=frozenset({alice, bob})),
        ),
        operations=tuple([_op("encode", xs + [alice], ("M",))] + decoders),
        exclusivity_groups=groups,
        marginal_scenario=marginal,
    )
    return structure, marginal


def build_network(n: int, m: int, quantum: bool = True) -> CausalStructure:
    """
    One source per m-subset of the observers V1..Vn.

    Source k hands the system `R{k}_{i}` to every observer i it touches and
    V_i is measured from all its incident systems.
    """
    if not 2 <= m <= n:
        raise ValidationError(f"Need 2 <= m <= n, got n={n}, m={m}", field="m")
    root = _kind(quantum)
    roots: List[System] = []
    preparations: List[Preparation] = []
    incident: Dict[int, List[str]] = {i: [] for i in range(1, n + 1)}
    for k, members in enumerate(itertools.combinations(range(1, n + 1), m), start=1):
        names = [f"R{k}_{i}" for i in members]
        roots += [System(name=name, kind=root) for name in names]
        preparations.append(Preparation(systems=frozenset(names)))
        for i, name in zip(members, names):
            incident[i].append(name)
    nodes = [f"V{i}" for i in range(1, n + 1)]
    return CausalStructure(
        systems=tuple(roots + [System(name=v, kind=SystemKind.CLASSICAL) for v in nodes]),
        preparations=tuple(preparations),
        operations=tuple(_op(f"measure_V{i}", incident[i], (f"V{i}",)) for i in range(1, n + 1)),
        marginal_scenario=_scenario([nodes]),
    )


def build_monogamy_star(n: int, quantum: bool = True) -> CausalStructure:
    """
    V1 shares one bipartite source with each of V2..Vn and nothing else.

    Every marginal (V1, V_i) of a network with pairwise sources is realized
    here, so a relation among those marginals holds on the network iff it
    holds on the star.
    """
    if n < 2:
        raise ValidationError(f"The star needs n >= 2, got {n}", field="n")
    root = _kind(quantum)
    roots: List[System] = []
    preparations: List[Preparation] = []
    for i in range(2, n + 1):
        roots += [System(name=f"Q{i}a", kind=root), System(name=f"Q{i}b", kind=root)]
        preparations.append(Preparation(systems=frozenset({f"Q{i}a", f"Q{i}b"})))
    nodes = [f"V{i}" for i in range(1, n + 1)]
    operations = [_op("measure_V1", [f"Q{i}a" for i in range(2, n + 1)], ("V1",))]
    operations += [_op(f"measure_V{i}", (f"Q{i}b",), (f"V{i}",)) for i in range(2, n + 1)]
    return CausalStructure(
        systems=tuple(roots + [System(name=v, kind=SystemKind.CLASSICAL) for v in nodes]),
        preparations=tuple(preparations),
        operations=tuple(operations),
        marginal_scenario=_scenario([nodes]),
    )


# ----------------------------------------------------------------------
# Registry
# ----------------------------------------------------------------------

_IC_RE = re.compile(r"^ic(\d+)(_dense)?(_classical)?(_restricted_inputs|_restricted)?$")
_NETWORK_RE = re.compile(r"^network(\d+)_(\d+)(_classical)?$")
_STAR_RE = re.compile(r"^star(\d+)(_classical)?$")

SCENARIO_NAMES: Sequence[str] = (
    "triangle",
    "triangle_classical",
    "ic<n>[_dense][_classical][_restricted|_restricted_inputs]",
    "network<n>_<m>[_classical]",
    "star<n>[_classical]",
)


def _ic_from_match(match: "re.Match") -> CausalStructure:
    n = int(match.group(1))
    scenario = (match.group(4) or "_full")[1:]
    structure, _ = build_ic(
        n,
        quantum_message=bool(match.group(2)),
        shared_resource="classical" if match.group(3) else "quantum",
        scenario=scenario,
    )
    return structure


_BUILDERS: Sequence[Tuple["re.Pattern", Callable[["re.Match"], CausalStructure]]] = (
    (re.compile(r"^triangle$"), lambda m: build_triangle(quantum=True)[0]),
    (re.compile(r"^triangle_classical$"), lambda m: build_triangle(quantum=False)[0]),
    (_IC_RE, _ic_from_match),
    (_NETWORK_RE, lambda m: build_network(int(m.group(1)), int(m.group(2)), quantum=not m.group(3))),
    (_STAR_RE, lambda m: build_monogamy_star(int(m.group(1)), quantum=not m.group(2))),
)


def get_scenario(name: str) -> CausalStructure:
    """
    Built-in structure by name, e.g. `triangle`, `ic2`, `ic3_dense`,
    `ic2_classical_restricted_inputs`, `network4_2`, `star4`.
    """
    key = name.strip()
    for pattern, builder in _BUILDERS:
        match = pattern.match(key)
        if match:
            structure = builder(match)
            StructureService(structure).require_valid()
            logger.debug("Built scenario", name=key, systems=len(structure.systems))
            return structure
    raise NotFoundError("Scenario", name)


def emit_scenario(name: str) -> str:
    """DSL text of a built-in structure."""
    return emit_structure(get_scenario(name))

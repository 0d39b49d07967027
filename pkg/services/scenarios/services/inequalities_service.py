"""Named entropic inequalities, symmetries and orbit grouping."""
import itertools
import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from shared.schemas.certificate import Candidate, LinearExpression
from shared.schemas.constraint import ConstraintRow, Relation, SubsetIndex
from shared.schemas.distribution import EntropyVector
from shared.schemas.inequality import InequalityId, NamedInequality
from shared.utils.exceptions import NotFoundError, ValidationError
from shared.utils.logger import get_logger
from services.dist.services.entropy_service import evaluate
from services.dist.services.network_service import network_bound_coefficients
from services.polyhedron.services.canonical_service import canonicalize
from services.verify.services.verify_service import expand

logger = get_logger(__name__)

H = LinearExpression.entropy
I = LinearExpression.mutual_information


def _total(parts: Iterable[LinearExpression]) -> LinearExpression:
    out = LinearExpression.zero()
    for part in parts:
        out = out + part
    return out


def _named(
    ineq_id: InequalityId,
    params: Tuple[int, ...],
    scenario: str,
    lhs: LinearExpression,
    rhs: LinearExpression,
) -> NamedInequality:
    named = NamedInequality(
        id=ineq_id,
        params=params,
        scenario=scenario,
        candidate=Candidate.less_equal(lhs, rhs),
    )
    candidate = named.candidate.model_copy(update={"name": named.name})
    return named.model_copy(update={"candidate": candidate})


def _inputs(n: int) -> List[str]:
    return [f"X{i}" for i in range(1, n + 1)]


def _input_dependence(n: int) -> LinearExpression:
    """sum_i H(X_i) - H(X1..Xn)."""
    xs = _inputs(n)
    return _total(H([x]) for x in xs) - H(xs)


def _check_n(n: int, least: int = 2) -> None:
    if n < least:
        raise ValidationError(f"Need n >= {least}, got {n}", field="n")


# ----------------------------------------------------------------------
# Information causality
# ----------------------------------------------------------------------

def ic_original(n: int = 2) -> NamedInequality:
    """sum_s I(X_s:Y_s) <= H(M)."""
    _check_n(n)
    lhs = _total(I([f"X{s}"], [f"Y{s}"]) for s in range(1, n + 1))
    params = () if n == 2 else (n,)
    return _named(InequalityId.IC_ORIGINAL, params, f"ic{n}", lhs, H(["M"]))


def ic_safi() -> NamedInequality:
    """I(X1:Y1) + I(X2:Y2) <= H(M) + I(X1:X2); inputs may be correlated."""
    lhs = I(["X1"], ["Y1"]) + I(["X2"], ["Y2"])
    rhs = H(["M"]) + I(["X1"], ["X2"])
    return _named(InequalityId.IC_SAFI, (), "ic2_classical_restricted_inputs", lhs, rhs)


def ic_tight() -> NamedInequality:
    """I(X1:Y1,M) + I(X2:Y2,M) + I(X1:X2|Y2,M) <= H(M) + I(X1:X2)."""
    lhs = I(["X1"], ["Y1", "M"]) + I(["X2"], ["Y2", "M"]) + I(["X1"], ["X2"], ["Y2", "M"])
    rhs = H(["M"]) + I(["X1"], ["X2"])
    return _named(InequalityId.IC_TIGHT, (), "ic2", lhs, rhs)


def ic_tight_n(n: int) -> NamedInequality:
    """The tight IC inequality for n input bits."""
    _check_n(n)
    lhs = _total(I([f"X{i}"], [f"Y{i}", "M"]) for i in range(1, n + 1))
    lhs = lhs + _total(I(["X1"], [f"X{i}"], [f"Y{i}", "M"]) for i in range(2, n + 1))
    rhs = H(["M"]) + _input_dependence(n)
    return _named(InequalityId.IC_TIGHT_N, (n,), f"ic{n}", lhs, rhs)


def ic_dense_n(n: int) -> NamedInequality:
    """
    Quantum-message variant: M never coexists with a guess, so the M terms
    leave the left side and the message counts twice on the right.
    """
    _check_n(n)
    lhs = _total(I([f"X{i}"], [f"Y{i}"]) for i in range(1, n + 1))
    lhs = lhs + _total(I(["X1"], [f"X{i}"], [f"Y{i}"]) for i in range(2, n + 1))
    rhs = H(["M"], 2) + _input_dependence(n)
    return _named(InequalityId.IC_DENSE_N, (n,), f"ic{n}_dense", lhs, rhs)


# ----------------------------------------------------------------------
# Networks
# ----------------------------------------------------------------------

def monogamy(n: int, j: int) -> NamedInequality:
    """sum_{i != j} I(V_i:V_j) <= H(V_j) for networks of bipartite sources."""
    _check_n(n)
    if not 1 <= j <= n:
        raise ValidationError(f"Node index {j} outside 1..{n}", field="j")
    lhs = _total(I([f"V{i}"], [f"V{j}"]) for i in range(1, n + 1) if i != j)
    return _named(InequalityId.MONOGAMY, (n, j), f"network{n}_2", lhs, H([f"V{j}"]))


def network_bound(m: int) -> NamedInequality:
    """sum_{k=2}^{m+1} I(V1:V_k) <= sum_k c_k H(V_{k+1}) on m+1 nodes, sources of size m."""
    _check_n(m)
    lhs = _total(I(["V1"], [f"V{k}"]) for k in range(2, m + 2))
    rhs = _total(H([f"V{k + 1}"], c) for k, c in enumerate(network_bound_coefficients(m)))
    return _named(InequalityId.NETWORK_BOUND, (m,), f"network{m + 1}_{m}", lhs, rhs)


# ----------------------------------------------------------------------
# Triangle
# ----------------------------------------------------------------------

def _pairwise() -> LinearExpression:
    return (
        LinearExpression.triple_information(["A"], ["B"], ["C"])
        + I(["A"], ["B"])
        + I(["A"], ["C"])
        + I(["B"], ["C"])
    )


def triangle_1() -> NamedInequality:
    """I(A:B) + I(A:C) <= H(A)."""
    lhs = I(["A"], ["B"]) + I(["A"], ["C"])
    return _named(InequalityId.TRIANGLE_1, (), "triangle", lhs, H(["A"]))


def triangle_2() -> NamedInequality:
    """I(A:B:C) + I(A:B) + I(A:C) + I(B:C) <= H(A,B)."""
    return _named(InequalityId.TRIANGLE_2, (), "triangle", _pairwise(), H(["A", "B"]))


def triangle_3() -> NamedInequality:
    """I(A:B:C) + I(A:B) + I(A:C) + I(B:C) <= (H(A) + H(B) + H(C)) / 2."""
    rhs = _total(H([x], Fraction(1, 2)) for x in ("A", "B", "C"))
    return _named(InequalityId.TRIANGLE_3, (), "triangle", _pairwise(), rhs)


# ----------------------------------------------------------------------
# Registry
# ----------------------------------------------------------------------

_REGISTRY: Dict[InequalityId, Tuple[Sequence[int], Callable[..., NamedInequality]]] = {
    InequalityId.IC_ORIGINAL: ((0, 1), ic_original),
    InequalityId.IC_SAFI: ((0,), ic_safi),
    InequalityId.IC_TIGHT: ((0,), ic_tight),
    InequalityId.IC_TIGHT_N: ((1,), ic_tight_n),
    InequalityId.IC_DENSE_N: ((1,), ic_dense_n),
    InequalityId.MONOGAMY: ((2,), monogamy),
    InequalityId.NETWORK_BOUND: ((1,), network_bound),
    InequalityId.TRIANGLE_1: ((0,), triangle_1),
    InequalityId.TRIANGLE_2: ((0,), triangle_2),
    InequalityId.TRIANGLE_3: ((0,), triangle_3),
}

_NAME_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*?)\s*(?:\(\s*(\d+(?:\s*,\s*\d+)*)\s*\))?\s*$")

INEQUALITY_NAMES: Sequence[str] = (
    "IC_original",
    "IC_safi",
    "IC_tight",
    "IC_tight_n(n)",
    "IC_dense_n(n)",
    "monogamy(n,j)",
    "network_bound(m)",
    "triangle_1",
    "triangle_2",
    "triangle_3",
)


def get_inequality(name: str) -> NamedInequality:
    """
    Built-in inequality by name, e.g. `IC_tight`, `IC_tight_n(3)` or
    `monogamy(4,1)`.
    """
    match = _NAME_RE.match(name)
    if not match:
        raise NotFoundError("Inequality", name)
    try:
        ineq_id = InequalityId(match.group(1))
    except ValueError:
        raise NotFoundError("Inequality", name)
    params = tuple(int(p) for p in match.group(2).split(",")) if match.group(2) else ()
    arities, builder = _REGISTRY[ineq_id]
    if len(params) not in arities:
        expected = " or ".join(str(a) for a in arities)
        raise ValidationError(
            f"Inequality '{ineq_id.value}' takes {expected} parameter(s), got {len(params)}",
            field="name",
        )
    return builder(*params)


def is_named_inequality(text: str) -> bool:
    """True when `text` looks like a registry name rather than an expression."""
    match = _NAME_RE.match(text)
    if not match:
        return False
    return match.group(1) in {i.value for i in InequalityId}


def causal_influence_bound(vector: EntropyVector, candidate: Optional[Candidate] = None) -> float:
    """
    Lower bound on the direct causal influence from the inputs to the guesses:
    the violation of the tight two-bit inequality, clamped at zero.
    """
    if candidate is None:
        candidate = ic_tight().candidate
    return max(0.0, evaluate(candidate, vector))


# ----------------------------------------------------------------------
# Symmetries
# ----------------------------------------------------------------------

def permute(candidate: Candidate, mapping: Mapping[str, str]) -> Candidate:
    """Rename variables of a candidate; unmapped names stay."""
    return candidate.rename(mapping)


def relabelings(groups: Sequence[Sequence[str]]) -> List[Dict[str, str]]:
    """
    Simultaneous permutations of parallel name tuples.

    `[("X1", "X2"), ("Y1", "Y2")]` swaps X1/X2 together with Y1/Y2.
    """
    size = len(groups[0])
    if any(len(g) != size for g in groups):
        raise ValidationError("Relabeling groups must have equal length", field="groups")
    out = []
    for perm in itertools.permutations(range(size)):
        mapping = {}
        for group in groups:
            for k, target in enumerate(perm):
                mapping[group[k]] = group[target]
        out.append(mapping)
    return out


def triangle_symmetries() -> List[Dict[str, str]]:
    return relabelings([("A", "B", "C")])


def ic_symmetries(n: int) -> List[Dict[str, str]]:
    return relabelings([_inputs(n), [f"Y{i}" for i in range(1, n + 1)]])


def network_symmetries(n: int) -> List[Dict[str, str]]:
    return relabelings([[f"V{i}" for i in range(1, n + 1)]])


def candidate_row(candidate: Candidate, index: SubsetIndex) -> ConstraintRow:
    """Canonical constraint row of a candidate over `index`."""
    vector = expand(candidate, index)
    relation = Relation.EQ_ZERO if candidate.is_equality else Relation.GEQ_ZERO
    return canonicalize(ConstraintRow(
        coefficients={k: c for k, c in enumerate(vector) if c},
        relation=relation,
    ))


def candidate_key(candidate: Candidate, index: SubsetIndex) -> Tuple:
    """Row key of a candidate with positive scaling removed."""
    return candidate_row(candidate, index).key


def _image_key(row: ConstraintRow, index: SubsetIndex, mapping: Mapping[str, str]) -> Tuple:
    moved: Dict[int, Fraction] = {}
    for k, c in row.coefficients:
        names = [mapping.get(n, n) for n in index.names_of(index.masks[k])]
        moved[index.position_of(names)] = c
    return canonicalize(row.model_copy(update={"coefficients": tuple(sorted(moved.items()))})).key


def orbit_key(row: ConstraintRow, index: SubsetIndex, symmetries: Sequence[Mapping[str, str]]) -> Tuple:
    """Least canonical key over the images of `row`."""
    return min(_image_key(row, index, mapping) for mapping in symmetries)


def group_orbits(
    rows: Sequence[ConstraintRow],
    index: SubsetIndex,
    symmetries: Sequence[Mapping[str, str]],
) -> List[List[ConstraintRow]]:
    """Rows grouped by orbit, groups in order of first appearance."""
    groups: Dict[Tuple, List[ConstraintRow]] = {}
    for row in rows:
        groups.setdefault(orbit_key(row, index, symmetries), []).append(row)
    return list(groups.values())


def candidate_from_row(row: ConstraintRow, index: SubsetIndex) -> Candidate:
    """The candidate `sum_k c_k H(S_k) >= 0` (or `= 0`) of a constraint row."""
    expression = LinearExpression(terms=[(index.subset(k), c) for k, c in row.coefficients])
    relation = Relation.EQ_ZERO if row.is_equality else Relation.GEQ_ZERO
    return Candidate(expression=expression, relation=relation)

"""
PORTA-like text files for H- and V-representations.

`.ieq`::

    # x1 = H(C)
    DIM = 3

    INEQUALITIES_SECTION
    (  1) +x1 -2x3 >= 0
    (  2) +x1 -x2 == 0

    END

`.poi`::

    DIM = 3

    CONV_SECTION
    0 0 0

    CONE_SECTION
    1 0 1

    END

Lines starting with `#` are comments. Coordinates are numbered from 1 in
SubsetIndex order. A lineality direction is written as the pair v, -v in
CONE_SECTION and read back as lineality.
"""
import re
from fractions import Fraction
from typing import Dict, List, Tuple

from shared.schemas.constraint import ConstraintRow, ConstraintSystem, Provenance, Relation, SubsetIndex
from shared.schemas.polyhedron import ConeVRep, Ray
from shared.utils.exceptions import DimensionMismatchError, ParseError
from shared.utils.helpers import format_rational, parse_rational, primitive_vector

_DIM_RE = re.compile(r"^DIM\s*=\s*(\d+)\s*$")
_IEQ_RE = re.compile(r"^(?:\(\s*\d+\s*\))?\s*(.*?)\s*(>=|==|=<|<=)\s*([+-]?\d+(?:/\d+)?)\s*$")
_TERM_RE = re.compile(r"\s*([+-])\s*(\d+(?:/\d+)?)?\s*x(\d+)")


def _header(index: SubsetIndex) -> List[str]:
    return [f"# x{i + 1} = {index.label(i)}" for i in range(len(index))]


def write_ieq(system: ConstraintSystem) -> str:
    lines = _header(system.index)
    lines += [f"DIM = {system.dimension}", "", "INEQUALITIES_SECTION"]
    for n, row in enumerate(system.rows, start=1):
        terms = []
        for k, coef in row.coefficients:
            magnitude = "" if abs(coef) == 1 else format_rational(abs(coef))
            terms.append(f"{'-' if coef < 0 else '+'}{magnitude}x{k + 1}")
        relation = "==" if row.is_equality else ">="
        lines.append(f"({n:3d}) {' '.join(terms)} {relation} 0")
    lines += ["", "END"]
    return "\n".join(lines) + "\n"


def _sections(text: str) -> Tuple[int, Dict[str, List[Tuple[int, str]]]]:
    dim = None
    sections: Dict[str, List[Tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _DIM_RE.match(line)
        if match:
            dim = int(match.group(1))
            continue
        if line == "END":
            current = None
            continue
        if line.endswith("_SECTION"):
            current = line
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ParseError(f"Unexpected line outside a section: {line!r}", line=lineno, column=1)
        sections[current].append((lineno, line))
    if dim is None:
        raise ParseError("Missing 'DIM = n' line", line=1, column=1)
    return dim, sections


def read_ieq(text: str, index: SubsetIndex) -> ConstraintSystem:
    dim, sections = _sections(text)
    if dim != len(index):
        raise DimensionMismatchError(len(index), dim)
    rows = []
    for lineno, line in sections.get("INEQUALITIES_SECTION", []):
        match = _IEQ_RE.match(line)
        if match is None:
            raise ParseError(f"Malformed inequality: {line!r}", line=lineno, column=1)
        body, relation, rhs = match.groups()
        if parse_rational(rhs) != 0:
            raise ParseError("Only homogeneous rows (right-hand side 0) are supported", line=lineno, column=1)
        coefficients: Dict[int, Fraction] = {}
        pos = 0
        if body and body[0] not in "+-":
            body = "+" + body
        while pos < len(body):
            term = _TERM_RE.match(body, pos)
            if term is None:
                raise ParseError(f"Malformed term in {line!r}", line=lineno, column=pos + 1)
            sign, coef, var = term.groups()
            k = int(var) - 1
            if not 0 <= k < dim:
                raise ParseError(f"Variable x{var} outside DIM = {dim}", line=lineno, column=pos + 1)
            value = parse_rational(coef) if coef else Fraction(1)
            coefficients[k] = coefficients.get(k, Fraction(0)) + (-value if sign == "-" else value)
            pos = term.end()
        if relation == "=<" or relation == "<=":
            coefficients = {k: -v for k, v in coefficients.items()}
        rows.append(ConstraintRow(
            coefficients=coefficients,
            relation=Relation.EQ_ZERO if relation == "==" else Relation.GEQ_ZERO,
            provenance=Provenance.USER,
        ))
    return ConstraintSystem(index=index, rows=tuple(rows))


def write_poi(vrep: ConeVRep) -> str:
    dimension = len(vrep.index)
    lines = _header(vrep.index)
    lines += [f"DIM = {dimension}", "", "CONV_SECTION", " ".join("0" for _ in range(dimension)), "", "CONE_SECTION"]
    for ray in vrep.rays:
        lines.append(" ".join(str(v) for v in ray.coordinates))
    for ray in vrep.lineality:
        lines.append(" ".join(str(v) for v in ray.coordinates))
        lines.append(" ".join(str(-v) for v in ray.coordinates))
    lines += ["", "END"]
    return "\n".join(lines) + "\n"


def read_poi(text: str, index: SubsetIndex) -> ConeVRep:
    dim, sections = _sections(text)
    if dim != len(index):
        raise DimensionMismatchError(len(index), dim)
    for lineno, line in sections.get("CONV_SECTION", []):
        if any(parse_rational(v) != 0 for v in line.split()):
            raise ParseError("Only the origin is allowed in CONV_SECTION", line=lineno, column=1)
    vectors: List[Tuple[int, ...]] = []
    for lineno, line in sections.get("CONE_SECTION", []):
        values = line.split()
        if len(values) != dim:
            raise ParseError(f"Expected {dim} entries, got {len(values)}", line=lineno, column=1)
        vector = primitive_vector([parse_rational(v) for v in values])
        if any(vector):
            vectors.append(vector)
    present = set(vectors)
    rays, lineality = [], []
    for v in vectors:
        negated = tuple(-x for x in v)
        if negated in present:
            if v > negated and v not in lineality:
                lineality.append(v)
        elif v not in rays:
            rays.append(v)
    return ConeVRep(
        index=index,
        rays=tuple(Ray(coordinates=v) for v in rays),
        lineality=tuple(Ray(coordinates=v) for v in lineality),
    )

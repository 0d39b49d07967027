"""Human-readable row text: `H(A) - 2 H(A,B) >= 0`."""
import re
from fractions import Fraction
from typing import Dict, Iterable, List

from shared.schemas.constraint import ConstraintRow, ConstraintSystem, Provenance, Relation, SubsetIndex
from shared.utils.exceptions import ParseError
from shared.utils.helpers import format_rational, join_names, parse_rational

_TERM_RE = re.compile(
    r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*H\(\s*([A-Za-z_][A-Za-z0-9_]*(?:\s*,\s*[A-Za-z_][A-Za-z0-9_]*)*)\s*\)"
)
_TAIL_RE = re.compile(r"\s*(>=|=)\s*0\s*$")


def format_row(row: ConstraintRow, index: SubsetIndex) -> str:
    """Terms in coordinate order, sets as comma-joined names in index order."""
    parts: List[str] = []
    for position, coef in row.coefficients:
        label = f"H({join_names(index.names_of(index.masks[position]))})"
        magnitude = abs(coef)
        body = label if magnitude == 1 else f"{format_rational(magnitude)} {label}"
        if not parts:
            parts.append(f"-{body}" if coef < 0 else body)
        else:
            parts.append(f"{'-' if coef < 0 else '+'} {body}")
    relation = "=" if row.is_equality else ">="
    return f"{' '.join(parts)} {relation} 0"


def parse_row(text: str, index: SubsetIndex, line: int = 1, provenance: Provenance = Provenance.USER) -> ConstraintRow:
    """Inverse of format_row; repeated subsets are summed."""
    tail = _TAIL_RE.search(text)
    if tail is None:
        raise ParseError("Expected '>= 0' or '= 0' at end of row", line=line, column=len(text.rstrip()) + 1)
    body = text[: tail.start()]
    coefficients: Dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(body.rstrip()):
        match = _TERM_RE.match(body, pos)
        if match is None:
            raise ParseError("Expected a term like '2 H(A,B)'", line=line, column=pos + 1)
        sign, coef, names = match.groups()
        if sign is None and not first:
            raise ParseError("Expected '+' or '-' between terms", line=line, column=match.start() + 1)
        value = parse_rational(coef) if coef else Fraction(1)
        if sign == "-":
            value = -value
        subset = [n.strip() for n in names.split(",")]
        position = index.position(index.mask_of(subset))
        coefficients[position] = coefficients.get(position, Fraction(0)) + value
        pos = match.end()
        first = False
    if first:
        raise ParseError("Row has no terms", line=line, column=1)
    relation = Relation.EQ_ZERO if tail.group(1) == "=" else Relation.GEQ_ZERO
    coefficients = {k: v for k, v in coefficients.items() if v}
    if not coefficients:
        raise ParseError("Row has no nonzero coefficient", line=line, column=1)
    return ConstraintRow(coefficients=coefficients, relation=relation, provenance=provenance)


def format_system(system: ConstraintSystem) -> str:
    return "".join(format_row(row, system.index) + "\n" for row in system.rows)


def parse_rows(text: str, index: SubsetIndex) -> List[ConstraintRow]:
    """One row per non-blank line; `#` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            rows.append(parse_row(line, index, line=lineno))
    return rows


def format_rows(rows: Iterable[ConstraintRow], index: SubsetIndex) -> str:
    return "".join(format_row(row, index) + "\n" for row in rows)

"""File loading and JSON rendering for the command line."""
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import orjson
import pydantic

from shared.schemas.certificate import Certificate, Verdict
from shared.schemas.constraint import SubsetIndex
from shared.schemas.distribution import JointDistribution
from shared.schemas.structure import CausalStructure
from shared.utils.exceptions import NotFoundError, ParseError, ValidationError
from shared.utils.helpers import format_rational, parse_rational
from shared.utils.logger import get_logger
from services.model.services.dsl_service import parse_structure

logger = get_logger(__name__)


def read_text(path: str) -> str:
    """Contents of a text file; NotFoundError when it cannot be read."""
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise NotFoundError("File", path, message=f"Cannot read '{path}': {exc.strerror}")


def write_text(path: Optional[str], text: str, stdout) -> None:
    """Write to `path`, or to `stdout` when no path is given."""
    if path is None:
        stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")
    logger.info("Wrote file", path=path, bytes=len(text.encode()))


def load_structure(path: str) -> CausalStructure:
    return parse_structure(read_text(path))


def _loads(text: str, path: str) -> Any:
    try:
        return orjson.loads(text)
    except orjson.JSONDecodeError as exc:
        raise ParseError(f"Invalid JSON in '{path}': {exc.msg}", line=exc.lineno, column=exc.colno)


def distribution_from_json(data: Any) -> JointDistribution:
    """
    Build a distribution from `{"vars": [["A", 2], ...], "p": [...]}`.

    `p` is the flat row-major table (last variable fastest) of rationals
    in `p/q` form; a table wrapped in one extra list is accepted too.
    """
    if not isinstance(data, dict) or "vars" not in data or "p" not in data:
        raise ValidationError("Distribution JSON needs 'vars' and 'p'", field="distribution")
    table = data["p"]
    if len(table) == 1 and isinstance(table[0], list):
        table = table[0]
    try:
        variables = [(str(name), int(card)) for name, card in data["vars"]]
        values = [parse_rational(v) for v in table]
        return JointDistribution.from_table(variables, values)
    except (TypeError, ValueError, pydantic.ValidationError) as exc:
        raise ValidationError(f"Invalid distribution: {exc}", field="distribution")


def distribution_to_json(dist: JointDistribution) -> bytes:
    payload = {
        "vars": [[name, card] for name, card in dist.variables],
        "p": [format_rational(p) for p in dist.dense()],
    }
    return orjson.dumps(payload)


def load_distribution(path: str) -> JointDistribution:
    return distribution_from_json(_loads(read_text(path), path))


def _rationals(values) -> Optional[List[str]]:
    if values is None:
        return None
    return [format_rational(Fraction(v)) for v in values]


def certificate_to_dict(certificate: Certificate, index: SubsetIndex) -> Dict[str, Any]:
    """Plain JSON form: coordinate labels, exact rationals as `p/q` strings."""
    return {
        "verdict": Verdict(certificate.verdict).value,
        "equality": certificate.equality,
        "coordinates": [index.label(k) for k in range(len(index))],
        "candidate": _rationals(certificate.candidate),
        "multipliers": _rationals(certificate.multipliers),
        "reverse_multipliers": _rationals(certificate.reverse_multipliers),
        "witness": list(certificate.witness.coordinates) if certificate.witness else None,
    }


def certificate_to_json(certificate: Certificate, index: SubsetIndex) -> bytes:
    return orjson.dumps(certificate_to_dict(certificate, index), option=orjson.OPT_INDENT_2)

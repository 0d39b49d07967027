"""General utility helpers."""
import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from shared.utils.exceptions import ParseError

RationalLike = Union[int, str, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def parse_rational(text: RationalLike) -> Fraction:
    """
    Parse an exact rational in `p` or `p/q` form.

    Floats are rejected on purpose: decimal input would hide rounding.

    Args:
        text: Rational text, int or Fraction

    Returns:
        Fraction value
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ParseError(f"Not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise ParseError(f"Not a rational in p/q form: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise ParseError(f"Zero denominator: {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """
    Format a rational as `p` or `p/q`.

    Args:
        value: Fraction or int

    Returns:
        Text form
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators of `values`."""
    result = 1
    for v in values:
        d = Fraction(v).denominator
        result = result * d // math.gcd(result, d)
    return result


def gcd_of(values: Iterable[int]) -> int:
    """Non-negative gcd of integers (0 for an all-zero input)."""
    g = 0
    for v in values:
        g = math.gcd(g, v)
        if g == 1:
            return 1
    return g


def primitive_vector(values: Sequence[Fraction]) -> Tuple[int, ...]:
    """
    Scale a rational vector to the primitive integer vector on the same ray.

    Args:
        values: Rational entries, not all zero

    Returns:
        Integer tuple with gcd 1 and the original orientation
    """
    scale = lcm_of_denominators(values)
    ints = [int(Fraction(v) * scale) for v in values]
    g = gcd_of(ints)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def primitive_dict(values: Dict[int, int]) -> Dict[int, int]:
    """Divide an integer sparse vector by the gcd of its entries."""
    g = gcd_of(values.values())
    if g <= 1:
        return dict(values)
    return {k: v // g for k, v in values.items()}


def iter_submasks(mask: int) -> Iterator[int]:
    """
    Iterate over all submasks of `mask`, including 0 and `mask` itself.

    Args:
        mask: Bit mask

    Returns:
        Iterator of submasks in decreasing order
    """
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def mask_bits(mask: int) -> List[int]:
    """Single-bit masks of `mask` in increasing order."""
    bits = []
    while mask:
        low = mask & -mask
        bits.append(low)
        mask ^= low
    return bits


def join_names(names: Iterable[str]) -> str:
    """Comma-joined variable list as used in H(...) terms."""
    return ",".join(names)

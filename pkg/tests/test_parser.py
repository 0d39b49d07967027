"""Inequality text parsing."""
from fractions import Fraction

import pytest

from shared.schemas.certificate import LinearExpression
from shared.schemas.constraint import Relation
from shared.utils.exceptions import CoordinateError, ParseError
from services.cli.services.inequality_parser_service import parse_inequality, resolve_inequality
from services.model.services.structure_service import StructureService
from services.scenarios.services.builders_service import get_scenario
from services.scenarios.services.inequalities_service import get_inequality
from services.verify.services.verify_service import expand

H = LinearExpression.entropy


def test_mutual_information_expands(pair_index):
    """I(A:B) <= H(A) is H(A,B) - H(B) >= 0."""
    candidate = parse_inequality("I(A:B) <= H(A)")
    assert expand(candidate, pair_index) == [-1, 0, 1]
    assert candidate.relation == Relation.GEQ_ZERO


def test_tight_inequality_text():
    text = "I(X1:Y1,M) + I(X2:Y2,M) + I(X1:X2|Y2,M) <= H(M) + I(X1:X2)"
    assert parse_inequality(text).expression == get_inequality("IC_tight").candidate.expression


def test_coefficients():
    candidate = parse_inequality("2 H(A) - 1/2*H(B) >= 0")
    assert candidate.expression == H(["A"], 2) - H(["B"], Fraction(1, 2))


def test_greater_equal_swaps_sides():
    assert parse_inequality("H(A) >= H(B)").expression == parse_inequality("H(B) <= H(A)").expression


def test_equality():
    candidate = parse_inequality("H(A,B) = H(A) + H(B)")
    assert candidate.is_equality
    assert candidate.expression == H(["A", "B"]) - H(["A"]) - H(["B"])


def test_conditional_entropy():
    assert parse_inequality("H(A|B) >= 0").expression == H(["A", "B"]) - H(["B"])


def test_triple_information():
    expected = LinearExpression.triple_information(["A"], ["B"], ["C"])
    assert parse_inequality("I(A:B:C) <= 0").expression == -expected


def test_zero_side_allowed():
    candidate = parse_inequality("0 <= H(M)")
    assert candidate.expression == H(["M"])


@pytest.mark.parametrize(
    "text,column",
    [
        ("I(A:B) <", 8),
        ("H(A) <= 3", 9),
        ("H(A) $ H(B)", 6),
        ("K(A) >= 0", 1),
    ],
)
def test_parse_errors_carry_column(text, column):
    with pytest.raises(ParseError) as err:
        parse_inequality(text)
    assert err.value.column == column


def test_term_outside_scenario():
    """M and a guess are never jointly observed with a quantum message."""
    candidate = parse_inequality("H(M,Y1) >= 0")
    index = StructureService(get_scenario("ic2_dense")).marginal_index()
    with pytest.raises(CoordinateError):
        expand(candidate, index)


def test_resolve_prefers_registry_names():
    assert resolve_inequality("IC_tight").name == "IC_tight"
    assert resolve_inequality("IC_tight_n(3)").name == "IC_tight_n(3)"
    assert resolve_inequality("H(A) >= 0").name is None
